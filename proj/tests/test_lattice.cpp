#include <random>
#include <unordered_set>

#include "doctest.h"
#include "ietlab/examples.hpp"
#include "ietlab/factor.hpp"
#include "ietlab/lattice.hpp"

using namespace ietlab;

namespace {

LatticeModel quartic_model() {
  ExampleIET q = quartic_example();
  return build_lattice_model(q.iet, ModuleBasis::power_basis(q.iet.field()), q.rho, q.window);
}

LatticeModel e2star_model() {
  ExampleIET s = e2star_example();
  return build_lattice_model(s.iet, ModuleBasis::power_basis(s.iet.field()), s.rho, s.window);
}

LatticeModel ek_model(int k) {
  ExampleIET e = ek_example(k);
  return build_lattice_model(e.iet, ModuleBasis::power_basis(e.iet.field(), Rational(1, 2)));
}

std::vector<Integer> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

LatticePoint origin(int n) { return {std::vector<Rational>(n, Rational(0)), std::vector<Integer>(n, 0)}; }

}  // namespace

TEST_SUITE("lattice-dynamics") {

TEST_CASE("quartic model") {
  LatticeModel m = quartic_model();
  CHECK(m.v(0) == ints({1, -1, 0, 0}));
  CHECK(m.v(1) == ints({1, -5, 5, -1}));
  CHECK(m.v(2) == ints({-1, 3, -1, 0}));
  CHECK(m.v(3) == ints({0, -1, 0, 0}));
  CHECK(abs(det(*m.R)) == 1);
  Drift d = drift_vector(m);
  CHECK_FALSE(d.zero);
  CHECK(d.forced_nonzero);
  const FieldPtr& K = m.iet.field();
  CHECK(d.components[0] == field_element(K, {0, 1, -4, 1}));
  CHECK(d.components[1] == field_element(K, {-1, 0, 16, -4}));
  CHECK(d.components[2] == field_element(K, {4, -16, 0, 1}));
  CHECK(d.components[3] == field_element(K, {-1, 4, -1}));
  // Nonzero drift: R S = beta S.
  FieldElement beta = m.rho->inverse();
  for (int k = 0; k < 4; ++k) {
    FieldElement rs(K, Rational(0));
    for (int j = 0; j < 4; ++j) rs += d.components[j] * Rational((*m.R)(k, j));
    CHECK(rs == beta * d.components[k]);
  }
}

TEST_CASE("E2star model") {
  LatticeModel m = e2star_model();
  const long v[7][3] = {{0, 3, -1}, {0, -2, 0}, {1, -7, 2}, {-1, 5, -2}, {1, -8, 3}, {0, -6, 2}, {-1, 1, 0}};
  for (int i = 0; i < 7; ++i) CHECK(m.v(i) == ints({v[i][0], v[i][1], v[i][2]}));
  CHECK(drift_vector(m).zero);
  // R pi = pi M_sigma is checked inside the build; also ker(pi) is M_sigma-invariant.
  IntMatrix M = m.sigma->incidence();
  IntMatrix ker = integer_kernel(m.projection);
  for (std::size_t r = 0; r < ker.rows(); ++r) {
    auto w = M * ker.row(r);
    auto pw = m.projection * w;
    for (const auto& x : pw) CHECK(x == 0);
  }
  // Zero drift: the factor of beta does not divide charpoly(R).
  IntPoly cr = charpoly(*m.R);
  CHECK(cr == IntPoly{-1, 10, -6, 1});
  CHECK_FALSE(divides(IntPoly{-1, 6, -10, 1}, cr));
  // charpoly(M_sigma) = p p~ q with deg q = N - 2n = 1.
  auto f = factor_int_poly(charpoly(M));
  IntPoly prod = f.factors[0].poly;
  CHECK(f.factors.size() == 3);
  CHECK(charpoly(M) == IntPoly{-1, 10, -6, 1} * IntPoly{-1, 6, -10, 1} * IntPoly{-1, 1});
}

TEST_CASE("E_k models") {
  for (int k = 1; k <= 6; ++k) {
    LatticeModel m = ek_model(k);
    CHECK(drift_vector(m).zero);
    CHECK(m.norm.d == 2);
    CHECK(m.norm.b == 2);
    CHECK(is_irreducible(ek_polynomial(k)));
    CHECK(m.iet.total() == FieldElement(m.iet.field(), Rational(2)) - FieldElement::generator(m.iet.field()));
  }
}

TEST_CASE("rotation model") {
  FieldPtr K = NumberField::create(isolate_real_roots(IntPoly{-1, -1, 1})[1], "Q(phi)");
  FieldElement a = FieldElement::generator(K) - FieldElement(K, Rational(1));
  IET rot(Permutation::parse("21"), {a, FieldElement(K, Rational(1)) - a});
  LatticeModel m = build_lattice_model(rot, ModuleBasis::power_basis(K));
  CHECK(m.n == 2);
  CHECK_FALSE(drift_vector(m).zero);
  CHECK_THROWS_AS(build_lattice_model(rot, ModuleBasis::power_basis(K, Rational(2))), PreconditionError);
}

TEST_CASE("psi") {
  LatticeModel m = quartic_model();
  LatticePoint z0 = origin(4);
  int atom = -1;
  LatticePoint p1 = psi_apply(m, z0, &atom);
  CHECK(atom == 0);
  CHECK(p1.z == m.v(0));
  CHECK(psi_orbit(m, z0, 0).end.z == z0.z);

  // Kernel agrees with exact psi on random module points, forward and backward.
  std::mt19937_64 rng(23);
  for (LatticeModel mm : {quartic_model(), e2star_model(), ek_model(2)}) {
    LatticeKernel fwd(mm), bwd(mm, true);
    std::uniform_int_distribution<int> c(-40, 40);
    int tested = 0;
    while (tested < 300) {
      std::vector<Integer> z(mm.n);
      for (int k = 1; k < mm.n; ++k) z[k] = c(rng);
      // Choose z_0 so that the point lies in [0, total).
      FieldElement y = mm.basis.element(z);
      Integer shift = -(y * mm.basis[0].inverse()).floor();
      z[0] = shift;
      FieldElement x = mm.basis.element(z);
      if (x.sign() < 0 || x >= mm.iet.total()) continue;
      ++tested;
      LatticePoint p{std::vector<Rational>(mm.n, Rational(0)), z};
      LatticePoint q = psi_apply(mm, p);
      std::vector<std::int64_t> X(mm.n);
      for (int k = 0; k < mm.n; ++k) X[k] = to_i64(z[k]);
      fwd.step(X.data());
      for (int k = 0; k < mm.n; ++k) CHECK(X[k] == to_i64(q.z[k]));
      // Conjugacy phi(E x) = psi(phi x).
      CHECK(mm.basis.element(q.z) == mm.iet.apply(x));
      bwd.step(X.data());
      for (int k = 0; k < mm.n; ++k) CHECK(X[k] == to_i64(z[k]));
    }
  }
}

TEST_CASE("E2star fixed-point blocks") {
  LatticeModel m = e2star_model();
  const FieldPtr& K = m.iet.field();
  IntMatrix Rk = IntMatrix::identity(3);
  for (int k = 1; k <= 5; ++k) {
    Rk = Rk * *m.R;
    // Points of h^k(Omega_7) = [1 - rho^{k+1}, 1) read sigma^k(7) first.
    FieldElement x = FieldElement(K, Rational(1)) - m.rho->pow(k + 1);
    LatticePoint p = layer_of(m.basis, x);
    auto word = m.sigma->iterate(6, k);
    std::vector<Integer> disp(3, 0);
    OrbitSummary o = psi_orbit(m, p, static_cast<long>(word.size()));
    for (int j = 0; j < 3; ++j) disp[j] = o.end.z[j] - p.z[j];
    CHECK(disp == Rk * m.v(6));
    Orbit w = orbit(m.iet, x, static_cast<long>(word.size()));
    CHECK(w.word == word);
  }
}

TEST_CASE("drift ledger") {
  for (LatticeModel m : {quartic_model(), e2star_model(), ek_model(2)}) {
    FieldElement x = m.iet.lengths()[0] * Rational(1, 3);
    CHECK(check_drift_ledger(m, x, 2000) == 2000);
  }
}

TEST_CASE("drift dominates the quartic orbit") {
  LatticeModel m = quartic_model();
  Drift d = drift_vector(m);
  double s_norm = 0;
  for (const auto& c : d.components) s_norm = std::max(s_norm, std::fabs(c.to_double()));
  double min_ratio = 1e300, max_alpha = 0;
  std::vector<double> S;
  for (const auto& c : d.components) S.push_back(c.to_double());
  psi_orbit(m, origin(4), 10000, [&](long k, const std::vector<std::int64_t>& dz) {
    double nrm = 0, alpha = 0;
    for (int j = 0; j < 4; ++j) {
      nrm = std::max(nrm, std::fabs(static_cast<double>(dz[j])));
      alpha = std::max(alpha, std::fabs(static_cast<double>(dz[j]) / k - S[j]));
    }
    min_ratio = std::min(min_ratio, nrm / k);
    max_alpha = std::max(max_alpha, alpha);
  });
  CHECK(min_ratio > 0);
  CHECK(min_ratio >= s_norm - max_alpha - 1e-12);
}

TEST_CASE("layers") {
  LatticeModel m = e2star_model();
  const FieldPtr& K = m.iet.field();
  FieldElement x = field_element(K, {1, -5, 2});
  LatticePoint p = layer_of(m.basis, x);
  for (const auto& q : p.xi) CHECK(q == 0);
  CHECK(order_of(*m.R, p.xi) == 1);

  std::vector<Rational> xi{Rational(1, 4), Rational(0), Rational(0)};
  long t = order_of(*m.R, xi);
  CHECK(t >= 1);
  CHECK(t <= 64);
  // Orbit stays in the m^n residues with denominator 4.
  std::vector<Rational> y = xi;
  for (long s = 0; s < t; ++s) {
    y = scale_layer(*m.R, y);
    for (const auto& q : y) {
      CHECK(q >= 0);
      CHECK(q < 1);
      CHECK(Rational(q * 4).get_den() == 1);
    }
  }
  CHECK(y == xi);
  // scale_layer agrees with multiplication by rho in K.
  FieldElement z = m.basis.element(xi);
  LatticePoint l = layer_of(m.basis, *m.rho * z);
  CHECK(l.xi == scale_layer(*m.R, xi));
}

TEST_CASE("density") {
  LatticeModel m = quartic_model();
  const FieldPtr& K = m.iet.field();
  FieldElement zero(K, Rational(0)), one(K, Rational(1)), half(K, Rational(1, 2));
  for (long k : {5L, 10L}) {
    DensityEstimate full = density_estimate(m, {{zero, one}}, k);
    CHECK(full.count == (2 * k + 1) * (2 * k + 1) * (2 * k + 1));
  }
  DensityEstimate h = density_estimate(m, {{zero, half}}, 20);
  CHECK(std::fabs(h.estimate.get_d() - 0.5) < 0.05);
  DensityEstimate h2 = density_estimate(m, [&](const FieldElement& x) { return x < half; }, 6);
  CHECK(h2.count == density_estimate(m, {{zero, half}}, 6).count);

  LatticeModel e = ek_model(2);
  DensityEstimate ef = density_estimate(e, {{FieldElement(e.iet.field(), Rational(0)), FieldElement(e.iet.field(), Rational(1))}}, 8);
  CHECK(ef.count == 2 * 17 * 17);

  // An orbit segment has vanishing density as the box grows.
  std::unordered_set<std::string> pts;
  const IntMatrix& U = m.norm.reduce;
  std::vector<Rational> prev;
  std::vector<double> est;
  std::vector<std::vector<long>> orbit_m;
  psi_orbit(m, origin(4), 20000, [&](long, const std::vector<std::int64_t>& dz) {
    std::vector<long> mm(4, 0);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) mm[r] += to_i64(U(r, c)) * dz[c];
    orbit_m.push_back(mm);
  });
  for (long k : {4L, 8L, 16L}) {
    long cnt = 0;
    for (const auto& mm : orbit_m) {
      bool in = true;
      for (int j = 1; j < 4; ++j) in = in && std::labs(mm[j]) <= k;
      if (in) ++cnt;
    }
    est.push_back(static_cast<double>(cnt) / (8.0 * k * k * k));
  }
  CHECK(est[1] < est[0]);
  CHECK(est[2] < est[1]);
}

TEST_CASE("liouville") {
  ExampleIET q = quartic_example();
  ModuleBasis B = ModuleBasis::power_basis(q.iet.field());
  CHECK(liouville_check(B, FieldElement(q.iet.field(), Rational(1))).pass);
  double prev = 0;
  for (int k = 1; k <= 12; ++k) {
    LiouvilleResult r = liouville_check(B, q.rho.pow(k));
    CHECK(r.pass);
    if (k > 1) CHECK(std::log(static_cast<double>(r.abs_x)) < prev);
    prev = std::log(static_cast<double>(r.abs_x));
  }
  LiouvilleSweep s = liouville_sweep(B, 12);
  CHECK(s.pass);
  CHECK(s.points > 0);
  CHECK_THROWS_AS(liouville_check(ModuleBasis::power_basis(q.iet.field(), Rational(1, 2)), FieldElement(q.iet.field(), Rational(1))),
                  PreconditionError);
}

}  // TEST_SUITE
