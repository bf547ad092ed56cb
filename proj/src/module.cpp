#include "ietlab/module.hpp"

namespace ietlab {

ModuleBasis::ModuleBasis(std::vector<FieldElement> basis) : nu_(std::move(basis)) {
  require(!nu_.empty(), "ModuleBasis: empty basis");
  const int n = nu_.front().field()->degree();
  require(static_cast<int>(nu_.size()) == n, "ModuleBasis: basis size must equal field degree");
  to_power_ = RatMatrix(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) to_power_(i, j) = nu_[j].coords()[i];
  if (det(to_power_) == 0) throw PreconditionError("ModuleBasis: basis is not linearly independent");
  from_power_ = inverse(to_power_);
}

ModuleBasis ModuleBasis::power_basis(const FieldPtr& field, const Rational& scale) {
  std::vector<FieldElement> b;
  const int n = field->degree();
  for (int k = 0; k < n; ++k) {
    std::vector<Rational> c(n, Rational(0));
    c[k] = scale;
    b.emplace_back(field, c);
  }
  return ModuleBasis(std::move(b));
}

ModuleBasis ModuleBasis::from_generators(const std::vector<FieldElement>& gens) {
  require(!gens.empty(), "ModuleBasis::from_generators: no generators");
  const FieldPtr& K = gens.front().field();
  const int n = K->degree();
  Integer D = 1;
  for (const auto& g : gens)
    for (const auto& c : g.coords()) D = lcm_z(D, c.get_den());
  IntMatrix rows(gens.size(), n);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (int k = 0; k < n; ++k) rows(i, k) = Rational(gens[i].coords()[k] * D).get_num();
  HnfResult h = hnf_rows(rows);
  if (static_cast<int>(h.rank) != n) throw PreconditionError("ModuleBasis::from_generators: module is not of full rank");
  std::vector<FieldElement> b;
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> c(n);
    for (int k = 0; k < n; ++k) c[k] = Rational(h.H(i, k), D);
    for (auto& q : c) q.canonicalize();
    b.emplace_back(K, c);
  }
  return ModuleBasis(std::move(b));
}

std::vector<Rational> ModuleBasis::coords(const FieldElement& x) const {
  return from_power_ * x.coords();
}

std::optional<std::vector<Integer>> ModuleBasis::integer_coords(const FieldElement& x) const {
  auto c = coords(x);
  std::vector<Integer> z;
  z.reserve(c.size());
  for (const auto& q : c) {
    if (q.get_den() != 1) return std::nullopt;
    z.push_back(q.get_num());
  }
  return z;
}

FieldElement ModuleBasis::element(const std::vector<Rational>& c) const {
  require(c.size() == nu_.size(), "ModuleBasis::element: wrong coordinate count");
  return FieldElement(field(), to_power_ * c);
}

FieldElement ModuleBasis::element(const std::vector<Integer>& c) const {
  std::vector<Rational> q(c.begin(), c.end());
  return element(q);
}

std::vector<double> ModuleBasis::approx() const {
  std::vector<double> v;
  for (const auto& x : nu_) v.push_back(x.to_double());
  return v;
}

IntMatrix mult_matrix(const FieldElement& zeta, const ModuleBasis& basis) {
  const int n = basis.rank();
  IntMatrix R(n, n);
  for (int k = 0; k < n; ++k) {
    auto c = basis.integer_coords(zeta * basis[k]);
    if (!c) throw PreconditionError("mult_matrix: element does not stabilize the module");
    for (int i = 0; i < n; ++i) R(i, k) = (*c)[i];
  }
  return R;
}

ModuleNormalization module_normalize(const ModuleBasis& basis) {
  const int n = basis.rank();
  const FieldPtr& K = basis.field();
  auto one = basis.integer_coords(FieldElement(K, Rational(1)));
  if (!one) throw PreconditionError("module_normalize: 1 is not in the module");

  // zeta = sum c_i nu_i lies in O iff coords(zeta nu_k) is integral for every k.
  std::vector<std::vector<Rational>> T;  // n*n rows, n columns
  for (int k = 0; k < n; ++k) {
    std::vector<std::vector<Rational>> cols;
    for (int i = 0; i < n; ++i) cols.push_back(basis.coords(basis[i] * basis[k]));
    for (int r = 0; r < n; ++r) {
      std::vector<Rational> row(n);
      for (int i = 0; i < n; ++i) row[i] = cols[i][r];
      T.push_back(row);
    }
  }
  Integer D = 1;
  for (const auto& row : T)
    for (const auto& q : row) D = lcm_z(D, q.get_den());
  const std::size_t m = T.size();
  // Kernel of [A | -D I] over Z, projected on the first n coordinates.
  IntMatrix big(m, n + m);
  for (std::size_t r = 0; r < m; ++r) {
    for (int i = 0; i < n; ++i) big(r, i) = Rational(T[r][i] * D).get_num();
    big(r, n + r) = -D;
  }
  IntMatrix ker = integer_kernel(big);
  IntMatrix gens(ker.rows(), n);
  for (std::size_t r = 0; r < ker.rows(); ++r)
    for (int i = 0; i < n; ++i) gens(r, i) = ker(r, i);
  HnfResult h = hnf_rows(gens);
  require(static_cast<int>(h.rank) == n, "module_normalize: multiplier ring is not of full rank");

  ModuleNormalization out;
  out.order_basis = IntMatrix(n, n);
  for (int r = 0; r < n; ++r)
    for (int i = 0; i < n; ++i) out.order_basis(r, i) = h.H(r, i);
  for (int r = 0; r < n; ++r) out.order_elements.push_back(basis.element(out.order_basis.row(r)));

  // d = lcm_k min{t : t e_k in O}.
  RatMatrix Ot = inverse(to_rat(out.order_basis.transpose()));
  out.d = 1;
  for (int k = 0; k < n; ++k) {
    Integer t = 1;
    for (int r = 0; r < n; ++r) t = lcm_z(t, Ot(r, k).get_den());
    out.d = lcm_z(out.d, t);
  }
  out.g = 0;
  for (const auto& c : *one) out.g = gcd_z(out.g, c);
  out.j = out.d / gcd_z(out.d, out.g);
  out.b = out.d / gcd_z(out.d, out.j);
  if (out.b != out.g) throw CheckFailure("module_normalize: torsion order b differs from g");

  // Unimodular U with U (one/g) = e_1.
  IntMatrix col(n, 1);
  for (int i = 0; i < n; ++i) col(i, 0) = (*one)[i] / out.g;
  HnfResult hc = hnf_rows(col);
  require(hc.H(0, 0) == 1, "module_normalize: 1/g is not primitive");
  out.reduce = hc.U;
  RatMatrix inv = inverse(to_rat(hc.U));
  out.expand = IntMatrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) out.expand(i, k) = inv(i, k).get_num();
  return out;
}

}  // namespace ietlab
