#include "ietlab/poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <sstream>

namespace ietlab {

// ---------------------------------------------------------------- IntPoly

IntPoly::IntPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  for (long v : coeffs) c_.emplace_back(v);
  trim();
}

IntPoly IntPoly::monomial(const Integer& c, int deg) {
  std::vector<Integer> v(deg + 1);
  v[deg] = c;
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Integer IntPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[i];
}

const Integer& IntPoly::leading() const {
  require(!c_.empty(), "leading coefficient of zero polynomial");
  return c_.back();
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
  std::vector<Integer> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(int(i)) + o.coeff(int(i));
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-(const IntPoly& o) const { return *this + (-o); }

IntPoly IntPoly::operator-() const {
  std::vector<Integer> r(c_);
  for (auto& v : r) v = -v;
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Integer> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const Integer& s) const {
  std::vector<Integer> r(c_);
  for (auto& v : r) v *= s;
  return IntPoly(std::move(r));
}

bool IntPoly::operator<(const IntPoly& o) const {
  if (degree() != o.degree()) return degree() < o.degree();
  for (int i = degree(); i >= 0; --i)
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  return false;
}

Integer IntPoly::content() const {
  Integer g = 0;
  for (const auto& v : c_) g = gcd_z(g, v);
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (is_zero()) return {};
  Integer g = content();
  if (leading() < 0) g = -g;
  std::vector<Integer> r(c_);
  for (auto& v : r) v /= g;
  return IntPoly(std::move(r));
}

IntPoly IntPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Integer> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
  return IntPoly(std::move(r));
}

IntPoly IntPoly::reciprocal() const {
  std::vector<Integer> r(c_.rbegin(), c_.rend());
  return IntPoly(std::move(r));
}

IntPoly IntPoly::compose_neg() const {
  std::vector<Integer> r(c_);
  for (std::size_t i = 1; i < r.size(); i += 2) r[i] = -r[i];
  return IntPoly(std::move(r));
}

Integer IntPoly::eval(const Integer& x) const {
  Integer acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Rational IntPoly::eval(const Rational& x) const {
  // Horner on numerator/denominator to avoid repeated gcds.
  if (c_.empty()) return 0;
  const Integer& p = x.get_num();
  const Integer& q = x.get_den();
  Integer acc = 0, qpow = 1;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc = acc * p + *it * qpow;
    qpow *= q;
  }
  // acc = q^deg * p(x)
  Integer den = 1;
  mpz_pow_ui(den.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(degree()));
  Rational r(acc, den);
  r.canonicalize();
  return r;
}

int IntPoly::sign_at(const Rational& x) const {
  if (c_.empty()) return 0;
  const Integer& p = x.get_num();
  const Integer& q = x.get_den();
  Integer acc = 0, qpow = 1;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc = acc * p + *it * qpow;
    qpow *= q;
  }
  return sgn(acc);
}

std::complex<long double> IntPoly::eval(std::complex<long double> z) const {
  std::complex<long double> acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it)
    acc = acc * z + std::strtold(it->get_str().c_str(), nullptr);
  return acc;
}

RatPoly IntPoly::to_rat() const {
  std::vector<Rational> r;
  r.reserve(c_.size());
  for (const auto& v : c_) r.emplace_back(v);
  return RatPoly(std::move(r));
}

std::string IntPoly::to_list() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? ", " : "") << c_[i].get_str();
  os << ']';
  return os.str();
}

std::string IntPoly::to_pretty(const char* var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Integer& a = c_[i];
    if (a == 0) continue;
    Integer m = abs(a);
    if (first) {
      if (a < 0) os << '-';
    } else {
      os << (a < 0 ? " - " : " + ");
    }
    if (m != 1 || i == 0) os << m.get_str();
    if (i >= 1) os << var;
    if (i >= 2) os << '^' << i;
    first = false;
  }
  return os.str();
}

IntPoly IntPoly::parse_list(const std::string& s) {
  std::vector<Integer> v;
  std::string tok;
  auto flush = [&] {
    if (!tok.empty()) {
      Integer z;
      if (z.set_str(tok, 10) != 0) throw PreconditionError("bad polynomial coefficient: " + tok);
      v.push_back(z);
      tok.clear();
    }
  };
  for (char ch : s) {
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '-') {
      tok.push_back(ch);
    } else if (ch == ',' || ch == ' ' || ch == '[' || ch == ']' || ch == '\t') {
      flush();
    } else if (ch != '+') {
      throw PreconditionError(std::string("bad character in polynomial list: ") + ch);
    }
  }
  flush();
  return IntPoly(std::move(v));
}

// ---------------------------------------------------------------- RatPoly

RatPoly::RatPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void RatPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational RatPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[i];
}

RatPoly RatPoly::operator+(const RatPoly& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(int(i)) + o.coeff(int(i));
  return RatPoly(std::move(r));
}

RatPoly RatPoly::operator-(const RatPoly& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(int(i)) - o.coeff(int(i));
  return RatPoly(std::move(r));
}

RatPoly RatPoly::operator*(const RatPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rational> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return RatPoly(std::move(r));
}

RatPoly RatPoly::operator*(const Rational& s) const {
  std::vector<Rational> r(c_);
  for (auto& v : r) v *= s;
  return RatPoly(std::move(r));
}

Rational RatPoly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int RatPoly::sign_at(const Rational& x) const { return sgn(eval(x)); }

RatPoly RatPoly::monic() const {
  if (is_zero()) return {};
  return *this * Rational(1 / leading());
}

RatPoly RatPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
  return RatPoly(std::move(r));
}

IntPoly RatPoly::to_primitive_int() const {
  if (is_zero()) return {};
  Integer l = 1;
  for (const auto& v : c_) l = lcm_z(l, v.get_den());
  std::vector<Integer> r;
  r.reserve(c_.size());
  for (const auto& v : c_) r.emplace_back(v.get_num() * (l / v.get_den()));
  return IntPoly(std::move(r)).primitive_part();
}

std::pair<RatPoly, RatPoly> RatPoly::divmod(const RatPoly& a, const RatPoly& b) {
  require(!b.is_zero(), "polynomial division by zero");
  if (a.degree() < b.degree()) return {RatPoly(), a};
  std::vector<Rational> r(a.c_);
  std::vector<Rational> q(a.degree() - b.degree() + 1);
  const Rational lb = b.leading();
  for (int i = a.degree(); i >= b.degree(); --i) {
    if (r[i] == 0) continue;
    Rational f = r[i] / lb;
    q[i - b.degree()] = f;
    for (int j = 0; j <= b.degree(); ++j) r[i - b.degree() + j] -= f * b.c_[j];
  }
  r.resize(b.degree());
  return {RatPoly(std::move(q)), RatPoly(std::move(r))};
}

RatPoly gcd(const RatPoly& a, const RatPoly& b) {
  RatPoly x = a, y = b;
  while (!y.is_zero()) {
    RatPoly r = RatPoly::divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

ExtGcd ext_gcd(const RatPoly& a, const RatPoly& b) {
  RatPoly r0 = a, r1 = b;
  RatPoly s0({Rational(1)}), s1, t0, t1({Rational(1)});
  while (!r1.is_zero()) {
    auto [q, r] = RatPoly::divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    RatPoly s2 = s0 - q * s1;
    RatPoly t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  require(!r0.is_zero(), "gcd of two zero polynomials");
  Rational inv = 1 / r0.leading();
  return {r0 * inv, s0 * inv, t0 * inv};
}

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  return gcd(a.to_rat(), b.to_rat()).to_primitive_int();
}

IntPoly exact_quotient(const IntPoly& a, const IntPoly& b) {
  auto [q, r] = RatPoly::divmod(a.to_rat(), b.to_rat());
  if (!r.is_zero()) throw CheckFailure("polynomial does not divide");
  std::vector<Integer> out;
  for (const auto& v : q.coeffs()) {
    if (v.get_den() != 1) throw CheckFailure("polynomial quotient not integral");
    out.push_back(v.get_num());
  }
  return IntPoly(std::move(out));
}

bool divides(const IntPoly& b, const IntPoly& a) {
  if (b.is_zero()) return a.is_zero();
  return RatPoly::divmod(a.to_rat(), b.to_rat()).second.is_zero();
}

IntPoly squarefree_part(const IntPoly& p) {
  require(!p.is_zero(), "squarefree part of zero polynomial");
  if (p.degree() <= 0) return IntPoly({1});
  IntPoly g = gcd(p, p.derivative());
  return exact_quotient(p.primitive_part(), g);
}

std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& p) {
  require(!p.is_zero(), "squarefree decomposition of zero polynomial");
  std::vector<std::pair<IntPoly, int>> out;
  if (p.degree() <= 0) return out;
  RatPoly f = p.to_rat();
  RatPoly fp = f.derivative();
  RatPoly a0 = gcd(f, fp);
  RatPoly b = RatPoly::divmod(f, a0).first;
  RatPoly c = RatPoly::divmod(fp, a0).first;
  RatPoly d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    RatPoly a = gcd(b, d);
    if (a.degree() > 0) out.emplace_back(a.to_primitive_int(), i);
    b = RatPoly::divmod(b, a).first;
    c = RatPoly::divmod(d, a).first;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

// ---------------------------------------------------------------- Sturm

std::vector<RatPoly> sturm_chain(const IntPoly& p) {
  std::vector<RatPoly> chain;
  RatPoly a = p.to_rat();
  RatPoly b = a.derivative();
  auto normalize = [](const RatPoly& q) {
    Rational l = abs_q(q.leading());
    return q * Rational(1 / l);
  };
  chain.push_back(normalize(a));
  if (b.is_zero()) return chain;
  chain.push_back(normalize(b));
  while (true) {
    RatPoly r = RatPoly::divmod(chain[chain.size() - 2], chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(normalize(r * Rational(-1)));
  }
  return chain;
}

int sign_variations(const std::vector<RatPoly>& chain, const Rational& x) {
  int prev = 0, v = 0;
  for (const auto& q : chain) {
    int s = q.sign_at(x);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

int count_roots(const std::vector<RatPoly>& chain, const Rational& lo, const Rational& hi) {
  return sign_variations(chain, lo) - sign_variations(chain, hi);
}

Rational cauchy_bound(const IntPoly& p) {
  require(p.degree() >= 1, "cauchy bound needs positive degree");
  Rational m = 0;
  Integer lc = abs(p.leading());
  for (int i = 0; i < p.degree(); ++i) {
    Rational r(abs(p.coeff(i)), lc);
    r.canonicalize();
    if (r > m) m = r;
  }
  return m + 1;
}

// ---------------------------------------------------------------- numeric roots

namespace {

using cld = std::complex<long double>;

std::vector<long double> ld_coeffs(const IntPoly& p) {
  std::vector<long double> a;
  for (const auto& v : p.coeffs()) a.push_back(std::strtold(v.get_str().c_str(), nullptr));
  return a;
}

void horner2(const std::vector<long double>& a, cld z, cld& f, cld& df) {
  f = 0;
  df = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) {
    df = df * z + f;
    f = f * z + *it;
  }
}

}  // namespace

std::vector<std::complex<long double>> complex_roots(const IntPoly& p) {
  require(!p.is_zero(), "roots of zero polynomial");
  const int n = p.degree();
  std::vector<cld> z;
  if (n <= 0) return z;
  // Roots at zero are split off exactly.
  int zeros = 0;
  while (p.coeff(zeros) == 0) ++zeros;
  std::vector<Integer> rest(p.coeffs().begin() + zeros, p.coeffs().end());
  IntPoly q(rest);
  const int m = q.degree();
  auto a = ld_coeffs(q);
  if (m >= 1) {
    long double lead = std::fabs(a[m]);
    long double R = 0;
    for (int k = 0; k < m; ++k) R = std::max(R, std::pow(std::fabs(a[k]) / lead, 1.0L / (m - k)));
    R = std::max(R, 1e-3L);
    for (int k = 0; k < m; ++k) {
      long double ang = 2 * std::numbers::pi_v<long double> * k / m + 0.4L;
      z.emplace_back(R * std::cos(ang), R * std::sin(ang));
    }
    for (int iter = 0; iter < 2000; ++iter) {
      long double worst = 0;
      for (int i = 0; i < m; ++i) {
        cld f, df;
        horner2(a, z[i], f, df);
        if (std::abs(f) == 0) continue;
        cld w = f / df;
        cld s = 0;
        for (int j = 0; j < m; ++j)
          if (j != i) s += 1.0L / (z[i] - z[j]);
        cld corr = w / (1.0L - w * s);
        if (!std::isfinite(corr.real()) || !std::isfinite(corr.imag())) corr = w;
        z[i] -= corr;
        worst = std::max(worst, std::abs(corr) / std::max(1.0L, std::abs(z[i])));
      }
      if (worst < 1e-19L) break;
    }
    // Snap tiny imaginary parts of roots that pair with themselves.
    for (auto& r : z)
      if (std::fabs(r.imag()) < 1e-16L * std::max(1.0L, std::abs(r))) r = cld(r.real(), 0);
  }
  for (int i = 0; i < zeros; ++i) z.emplace_back(0, 0);
  std::sort(z.begin(), z.end(), [](const cld& x, const cld& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return z;
}

std::vector<RootDisc> enclose_roots(const IntPoly& p) {
  const int n = p.degree();
  auto z = complex_roots(p);
  auto a = ld_coeffs(p);
  const long double eps = std::numeric_limits<long double>::epsilon();
  std::vector<RootDisc> out;
  for (int i = 0; i < n; ++i) {
    cld f, df;
    horner2(a, z[i], f, df);
    long double absz = std::abs(z[i]);
    long double mag = 0, zp = 1;
    for (int k = 0; k <= n; ++k) {
      mag += std::fabs(a[k]) * zp;
      zp *= absz;
    }
    long double ferr = std::abs(f) + mag * eps * (4 * n + 8);
    long double prod = std::fabs(a[n]);
    for (int j = 0; j < n; ++j)
      if (j != i) prod *= std::abs(z[i] - z[j]);
    long double r;
    if (prod == 0) {
      r = std::numeric_limits<long double>::infinity();
    } else {
      r = n * ferr / prod * (1 + 64 * n * eps) + 4 * eps * absz;
    }
    out.push_back({z[i], r});
  }
  return out;
}

}  // namespace ietlab
