#pragma once

#include <vector>

#include "ietlab/poly.hpp"

namespace ietlab {

struct Factor {
  IntPoly poly;  // irreducible, primitive, positive leading coefficient
  int multiplicity;
};

struct Factorization {
  Integer content;  // signed
  std::vector<Factor> factors;
  IntPoly product() const;
};

inline constexpr int kMaxFactorDegree = 8;

// Factorization over Z of a nonzero polynomial of degree <= 8.
Factorization factor_int_poly(const IntPoly& p);

bool is_irreducible(const IntPoly& p);

}  // namespace ietlab
