#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "ietlab/arith.hpp"

namespace ietlab {

class RatPoly;

// Integer polynomial, coefficients in ascending degree.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Integer> coeffs);
  IntPoly(std::initializer_list<long> coeffs);

  static IntPoly monomial(const Integer& c, int deg);
  static IntPoly x() { return monomial(1, 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Integer>& coeffs() const { return c_; }
  Integer coeff(int i) const;
  const Integer& leading() const;

  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator-(const IntPoly& o) const;
  IntPoly operator-() const;
  IntPoly operator*(const IntPoly& o) const;
  IntPoly operator*(const Integer& s) const;
  bool operator==(const IntPoly& o) const { return c_ == o.c_; }
  bool operator!=(const IntPoly& o) const { return !(*this == o); }
  bool operator<(const IntPoly& o) const;

  Integer content() const;
  // Primitive part with positive leading coefficient.
  IntPoly primitive_part() const;
  IntPoly derivative() const;
  // x^deg p(1/x).
  IntPoly reciprocal() const;
  IntPoly compose_neg() const;  // p(-x)

  Integer eval(const Integer& x) const;
  Rational eval(const Rational& x) const;
  int sign_at(const Rational& x) const;
  std::complex<long double> eval(std::complex<long double> z) const;

  RatPoly to_rat() const;

  // "[c0, c1, ...]"
  std::string to_list() const;
  // "x^4 - 7x^3 + 13x^2 - 7x + 1"
  std::string to_pretty(const char* var = "x") const;
  static IntPoly parse_list(const std::string& s);

 private:
  void trim();
  std::vector<Integer> c_;
};

// Rational polynomial used for Euclidean algorithms.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rational> coeffs);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const;
  const Rational& leading() const { return c_.back(); }

  RatPoly operator+(const RatPoly& o) const;
  RatPoly operator-(const RatPoly& o) const;
  RatPoly operator*(const RatPoly& o) const;
  RatPoly operator*(const Rational& s) const;
  bool operator==(const RatPoly& o) const { return c_ == o.c_; }

  Rational eval(const Rational& x) const;
  int sign_at(const Rational& x) const;
  RatPoly monic() const;
  RatPoly derivative() const;
  // Integer multiple with coprime coefficients and positive leading coefficient.
  IntPoly to_primitive_int() const;

  static std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);

 private:
  void trim();
  std::vector<Rational> c_;
};

RatPoly gcd(const RatPoly& a, const RatPoly& b);
// Returns (g, s, t) with s a + t b = g monic.
struct ExtGcd {
  RatPoly g, s, t;
};
ExtGcd ext_gcd(const RatPoly& a, const RatPoly& b);

IntPoly gcd(const IntPoly& a, const IntPoly& b);
// a / b when b divides a over Z (throws otherwise).
IntPoly exact_quotient(const IntPoly& a, const IntPoly& b);
bool divides(const IntPoly& b, const IntPoly& a);

IntPoly squarefree_part(const IntPoly& p);
// Yun decomposition: p = c * prod f_i^i with f_i squarefree and coprime.
std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& p);

// Sturm chain of a squarefree polynomial.
std::vector<RatPoly> sturm_chain(const IntPoly& p);
int sign_variations(const std::vector<RatPoly>& chain, const Rational& x);
// Number of distinct roots in (lo, hi].
int count_roots(const std::vector<RatPoly>& chain, const Rational& lo, const Rational& hi);

// Every root has absolute value < the returned bound.
Rational cauchy_bound(const IntPoly& p);

// Complex roots (with multiplicity) by Aberth iteration.
std::vector<std::complex<long double>> complex_roots(const IntPoly& p);

// Disc enclosure of the roots of a squarefree polynomial.
struct RootDisc {
  std::complex<long double> center;
  long double radius;
};
std::vector<RootDisc> enclose_roots(const IntPoly& p);

}  // namespace ietlab
