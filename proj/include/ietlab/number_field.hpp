#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ietlab/matrix.hpp"
#include "ietlab/real_algebraic.hpp"

namespace ietlab {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

// Real number field Q(theta) embedded through a chosen real root theta.
// Elements are stored as rational coordinates in the power basis 1..theta^{n-1}.
class NumberField {
 public:
  static FieldPtr create(const RealAlgebraic& generator, std::string name = "K");

  int degree() const { return n_; }
  const IntPoly& minpoly() const { return gen_.minpoly(); }
  const RealAlgebraic& generator() const { return gen_; }
  const std::string& name() const { return name_; }
  bool same_as(const NumberField& o) const;

  std::vector<Rational> mul(const std::vector<Rational>& a, const std::vector<Rational>& b) const;
  std::vector<Rational> inv(const std::vector<Rational>& a) const;
  int sign(const std::vector<Rational>& a) const;
  double approx(const std::vector<Rational>& a) const;
  // Double approximations of theta^k with absolute error bounds.
  const std::vector<double>& powers() const { return pow_d_; }
  const std::vector<double>& power_errors() const { return pow_err_; }

 private:
  NumberField(const RealAlgebraic& gen, std::string name);
  int exact_sign(const std::vector<Rational>& a) const;

  RealAlgebraic gen_;
  RealAlgebraic fine_;
  std::string name_;
  int n_;
  std::vector<std::vector<Rational>> xpow_;  // x^{n+k} mod f for k = 0..n-2
  std::vector<double> pow_d_, pow_err_;
};

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(FieldPtr field, std::vector<Rational> coords);
  FieldElement(FieldPtr field, const Rational& q);

  static FieldElement generator(FieldPtr field);

  const FieldPtr& field() const { return field_; }
  const std::vector<Rational>& coords() const { return c_; }
  bool is_zero() const;
  bool is_rational() const;
  int sign() const;
  double to_double() const;

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator*(const Rational& q) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement inverse() const;
  FieldElement pow(long e) const;

  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  Integer floor() const;
  // Polynomial in the generator, e.g. "1 - 5r + 2r^2".
  std::string to_string(const char* var = "r") const;
  // "(c0, c1, ...)"
  std::string coords_string() const;

 private:
  void check_same(const FieldElement& o) const;
  FieldPtr field_;
  std::vector<Rational> c_;
};

int compare(const FieldElement& a, const FieldElement& b);
inline bool operator<(const FieldElement& a, const FieldElement& b) { return compare(a, b) < 0; }
inline bool operator<=(const FieldElement& a, const FieldElement& b) { return compare(a, b) <= 0; }
inline bool operator>(const FieldElement& a, const FieldElement& b) { return compare(a, b) > 0; }
inline bool operator>=(const FieldElement& a, const FieldElement& b) { return compare(a, b) >= 0; }
int compare(const FieldElement& a, const RealAlgebraic& b);

// Matrix of multiplication by x on the power basis (column j = coords of x theta^j).
RatMatrix power_basis_mult_matrix(const FieldElement& x);
IntPoly min_poly(const FieldElement& x);
RealAlgebraic to_real_algebraic(const FieldElement& x);

// Basis of {v in K^n : A v = 0}.
std::vector<std::vector<FieldElement>> field_nullspace(std::vector<std::vector<FieldElement>> a);

FieldElement sum(const std::vector<FieldElement>& v);

std::size_t hash_value(const Integer& z);
// Hash of the exact coordinates (ignores the field).
struct FieldElementHash {
  std::size_t operator()(const FieldElement& x) const;
};

}  // namespace ietlab
