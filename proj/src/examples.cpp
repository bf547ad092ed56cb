#include "ietlab/examples.hpp"

namespace ietlab {

FieldElement field_element(const FieldPtr& k, const std::vector<long>& c, long den) {
  std::vector<Rational> v(k->degree(), Rational(0));
  require(static_cast<int>(c.size()) <= k->degree(), "field_element: too many coefficients");
  for (std::size_t i = 0; i < c.size(); ++i) v[i] = Rational(c[i], den);
  return FieldElement(k, std::move(v));
}

IntPoly ek_polynomial(int k) {
  require(k >= 1, "ek_polynomial: k >= 1");
  return IntPoly{-1, 3L * k + 4, -(k + 4L), 1};
}

ExampleIET quartic_example() {
  FieldPtr K = NumberField::create(isolate_real_roots(IntPoly{1, -7, 13, -7, 1})[0], "Q(rho)");
  std::vector<FieldElement> lam{field_element(K, {0, 1}), field_element(K, {1, -4, 1}),
                                field_element(K, {1, -4, 5, -1}), field_element(K, {-1, 7, -6, 1})};
  IET e(Permutation::parse("4213"), lam);
  return {"quartic", e, FieldElement::generator(K), FieldElement(K, Rational(0)), true};
}

ExampleIET e2star_example() {
  FieldPtr K = NumberField::create(isolate_real_roots(IntPoly{-1, 10, -6, 1})[0], "Q(rho)");
  std::vector<FieldElement> lam{field_element(K, {1, -5, 2}),  field_element(K, {-1, 10, -3}),
                                field_element(K, {1, -9, 3}),  field_element(K, {0, 1, -1}),
                                field_element(K, {-1, 11, -4}), field_element(K, {1, -9, 3}),
                                field_element(K, {0, 1})};
  IET e(Permutation::parse("5462731"), lam);
  FieldElement rho = FieldElement::generator(K);
  return {"e2star", e, rho, FieldElement(K, Rational(1)) - rho, true};
}

ExampleIET ek_example(int k) {
  auto roots = isolate_real_roots(ek_polynomial(k));
  FieldPtr K = NumberField::create(roots[0], "Q(lambda_" + std::to_string(k) + ")");
  std::vector<FieldElement> lam{field_element(K, {0, 2, -1}, 2), field_element(K, {0, 2, -1}, 2),
                                field_element(K, {1, -3, 1}, 2), field_element(K, {1, -3, 1}, 2),
                                field_element(K, {1}, 2),        field_element(K, {0, 1}, 2),
                                field_element(K, {1, -1}, 2)};
  std::vector<FieldElement> t{field_element(K, {2, 1, -1}, 2), field_element(K, {2, -3, 1}, 2),
                              field_element(K, {3, -4, 1}, 2), field_element(K, {1, 2, -1}, 2),
                              field_element(K, {-1, 1}, 2),    field_element(K, {1, -1}, 2),
                              field_element(K, {-3, 1}, 2)};
  IET e = iet_from_translations(lam, t);
  FieldElement l = FieldElement::generator(K);
  return {"E" + std::to_string(k), e, l, FieldElement(K, Rational(0)), false};
}

}  // namespace ietlab
