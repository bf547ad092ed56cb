#pragma once

#include <vector>

#include "ietlab/factor.hpp"
#include "ietlab/number_field.hpp"

namespace ietlab {

struct PerronPair {
  RealAlgebraic beta;
  FieldPtr field;                    // Q(beta)
  std::vector<FieldElement> vector;  // positive, sums to 1
};

// Perron root and normalized positive eigenvector of a primitive nonnegative matrix.
PerronPair perron_pair(const IntMatrix& m);

// Largest real root of charpoly(m).
RealAlgebraic largest_real_eigenvalue(const IntMatrix& m);

// Eigenvector of m (rational entries) for the eigenvalue lambda, exact in lambda's field.
// The eigenspace must be one-dimensional.
std::vector<FieldElement> eigenvector(const RatMatrix& m, const FieldElement& lambda);

// Count of roots strictly inside the unit disk (Moebius map + Routh-Hurwitz).
// Throws when a root may lie on the unit circle or the Routh array is
// singular.
int roots_inside_unit_disk(const IntPoly& p);

// Real algebraic integer > 1 whose other conjugates lie in the open unit disk.
bool is_pisot(const RealAlgebraic& beta);
bool is_unit(const IntPoly& minpoly);
bool is_self_reciprocal(const IntPoly& p);

// Certified modulus interval of one eigenvalue.
struct ModulusInfo {
  long double lo, hi;      // certified enclosure of |z|
  long double value;       // best estimate
  bool real;
  IntPoly factor;          // irreducible factor owning the root
  int multiplicity;        // multiplicity of that factor
};

// Moduli of all roots of p (each root listed once per distinct root, with the
// multiplicity of its factor), sorted by decreasing modulus.
std::vector<ModulusInfo> root_moduli(const IntPoly& p);

}  // namespace ietlab
