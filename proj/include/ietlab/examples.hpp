#pragma once

#include "ietlab/iet.hpp"

namespace ietlab {

// Published examples built from their closed-form data.
struct ExampleIET {
  std::string name;
  IET iet;
  FieldElement rho;     // scaling constant (lambda_k for E_k)
  FieldElement window;  // left end of the rescaled window, when self-similar
  bool self_similar = false;
};

IntPoly ek_polynomial(int k);  // x^3 - (k+4)x^2 + (3k+4)x - 1

ExampleIET quartic_example();
ExampleIET e2star_example();
// E_k on [0, 2 - lambda_k), not self-similar.
ExampleIET ek_example(int k);

// Element c0 + c1 r + ... of K, all coefficients divided by den.
FieldElement field_element(const FieldPtr& k, const std::vector<long>& c, long den = 1);

}  // namespace ietlab
