#pragma once

#include <string>
#include <vector>

#include "ietlab/poly.hpp"

namespace ietlab {

// Exact real algebraic number: irreducible primitive minimal polynomial and
// an isolating interval. For irrational numbers the root lies in the open
// interval (lo, hi); rational numbers carry lo == hi.
class RealAlgebraic {
 public:
  RealAlgebraic() : RealAlgebraic(Rational(0)) {}
  explicit RealAlgebraic(const Rational& q);
  // Checks that (lo, hi) isolates exactly one root of the irreducible minpoly.
  RealAlgebraic(IntPoly minpoly, Rational lo, Rational hi);

  const IntPoly& minpoly() const { return minpoly_; }
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  bool is_rational() const { return minpoly_.degree() == 1; }
  Rational rational_value() const;
  int degree() const { return minpoly_.degree(); }

  // Interval half as wide, same number.
  RealAlgebraic refined() const;
  // Interval no wider than width.
  RealAlgebraic refined_to(const Rational& width) const;
  double approx() const;
  long double approx_ld() const;
  int sign() const;

  std::string to_string() const;

 private:
  struct Unchecked {};
  RealAlgebraic(IntPoly minpoly, Rational lo, Rational hi, Unchecked)
      : minpoly_(std::move(minpoly)), lo_(std::move(lo)), hi_(std::move(hi)) {}
  IntPoly minpoly_;
  Rational lo_, hi_;
};

int compare(const RealAlgebraic& a, const RealAlgebraic& b);
int compare(const RealAlgebraic& a, const Rational& b);
inline bool operator==(const RealAlgebraic& a, const RealAlgebraic& b) { return compare(a, b) == 0; }
inline bool operator<(const RealAlgebraic& a, const RealAlgebraic& b) { return compare(a, b) < 0; }

// Distinct real roots of p in increasing order.
std::vector<RealAlgebraic> isolate_real_roots(const IntPoly& p);

// Root of an irreducible polynomial closest to the given double.
RealAlgebraic root_near(const IntPoly& p, double approx);

// 1 / x for nonzero x.
RealAlgebraic reciprocal(const RealAlgebraic& x);

}  // namespace ietlab
