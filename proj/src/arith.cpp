#include "ietlab/arith.hpp"

#include <cctype>
#include <cmath>

namespace ietlab {

Integer floor_q(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_q(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational abs_q(const Rational& q) { return sgn(q) < 0 ? Rational(-q) : q; }

Integer gcd_z(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer lcm_z(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view s) {
  std::string t;
  for (char c : s)
    if (c != ' ' && c != '\t') t.push_back(c);
  if (t.empty()) throw PreconditionError("empty rational literal");
  if (t[0] == '+') t.erase(0, 1);
  for (char c : t)
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '/'))
      throw PreconditionError("bad rational literal: " + t);
  Rational q;
  if (q.set_str(t, 10) != 0) throw PreconditionError("bad rational literal: " + t);
  if (q.get_den() == 0) throw PreconditionError("zero denominator: " + t);
  q.canonicalize();
  return q;
}

bool fits_i64(const Integer& z) {
  static const Integer lo("-9223372036854775808");
  static const Integer hi("9223372036854775807");
  return z >= lo && z <= hi;
}

std::int64_t to_i64(const Integer& z) {
  if (!fits_i64(z)) throw LimitError("integer does not fit in 64 bits");
  if (z.fits_slong_p()) return z.get_si();
  return static_cast<std::int64_t>(std::stoll(z.get_str()));
}

Rational from_double(double x) {
  if (!std::isfinite(x)) throw PreconditionError("non-finite double");
  Rational q(x);
  q.canonicalize();
  return q;
}

}  // namespace ietlab
