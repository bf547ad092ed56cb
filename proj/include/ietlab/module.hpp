#pragma once

#include <optional>
#include <vector>

#include "ietlab/number_field.hpp"

namespace ietlab {

// Z-basis nu_1..nu_n of a full-rank module M inside a number field K.
class ModuleBasis {
 public:
  ModuleBasis() = default;
  explicit ModuleBasis(std::vector<FieldElement> basis);

  // (s, s theta, ..., s theta^{n-1}).
  static ModuleBasis power_basis(const FieldPtr& field, const Rational& scale = 1);
  // Basis of the Z-span of the generators (must have full rank).
  static ModuleBasis from_generators(const std::vector<FieldElement>& gens);

  int rank() const { return static_cast<int>(nu_.size()); }
  const FieldPtr& field() const { return nu_.front().field(); }
  const std::vector<FieldElement>& elements() const { return nu_; }
  const FieldElement& operator[](std::size_t i) const { return nu_[i]; }

  std::vector<Rational> coords(const FieldElement& x) const;
  std::optional<std::vector<Integer>> integer_coords(const FieldElement& x) const;
  bool contains(const FieldElement& x) const { return integer_coords(x).has_value(); }
  FieldElement element(const std::vector<Rational>& c) const;
  FieldElement element(const std::vector<Integer>& c) const;
  std::vector<double> approx() const;

  // Columns are power-basis coordinates of the basis elements.
  const RatMatrix& to_power() const { return to_power_; }

 private:
  std::vector<FieldElement> nu_;
  RatMatrix to_power_, from_power_;
};

// Matrix of multiplication by zeta in basis coordinates (column k = coords of zeta nu_k).
IntMatrix mult_matrix(const FieldElement& zeta, const ModuleBasis& basis);

struct ModuleNormalization {
  IntMatrix order_basis;  // rows: nu-coordinates of a Z-basis of the multiplier ring O
  Integer d, j, b;
  Integer g;              // 1/g generates the rationals in M
  // Unimodular change of coordinates: m = reduce * z, with m_0 the coefficient of 1/g.
  IntMatrix reduce;
  IntMatrix expand;       // inverse of reduce
  std::vector<FieldElement> order_elements;
};

ModuleNormalization module_normalize(const ModuleBasis& basis);

}  // namespace ietlab
