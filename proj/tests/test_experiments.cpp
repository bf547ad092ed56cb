#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "ietlab/experiments.hpp"

using namespace ietlab;

namespace {

// Every lattice point of the layer in the box, by exact comparison.
std::vector<std::vector<std::int64_t>> brute_slab(const LatticeModel& m, long box, long first,
                                                  const std::vector<Rational>& xi) {
  std::vector<std::vector<std::int64_t>> out;
  const int n = m.n;
  Integer den = 1;
  for (const auto& q : xi) den = lcm_z(den, q.get_den());
  const long span0 = first >= 0 ? first : 4 * box + 20;
  std::vector<long> z(n, -box);
  z[0] = -span0;
  for (;;) {
    std::vector<Rational> c(n);
    for (int i = 0; i < n; ++i) c[i] = xi[i] + Rational(z[i]);
    FieldElement x = m.basis.element(c);
    if (x.sign() >= 0 && x < m.iet.total()) {
      std::vector<std::int64_t> X(n);
      for (int i = 0; i < n; ++i) X[i] = to_i64(Rational(c[i] * Rational(den)).get_num());
      out.push_back(X);
    }
    int i = 0;
    while (i < n) {
      long lim = i == 0 ? span0 : box;
      if (++z[i] <= lim) break;
      z[i] = i == 0 ? -span0 : -box;
      ++i;
    }
    if (i == n) break;
  }
  return out;
}

std::vector<std::int64_t> kernel_walk(const LatticeKernel& fwd, const LatticeKernel& bwd, std::vector<std::int64_t> X,
                                      long long steps) {
  const LatticeKernel& K = steps < 0 ? bwd : fwd;
  for (long long s = 0; s < std::llabs(steps); ++s) K.step(X.data());
  return X;
}

}  // namespace

TEST_SUITE("experiments-cli") {
  TEST_CASE("builders cross-validate the published data") {
    BuiltExample q = build_quartic();
    CHECK(q.checks.size() == 3);
    CHECK(q.model.n == 4);
    CHECK_FALSE(drift_vector(q.model).zero);
    BuiltExample e = build_e2star();
    CHECK(e.checks.size() == 3);
    CHECK(e.model.n == 3);
    CHECK(drift_vector(e.model).zero);
    for (int k = 1; k <= 6; ++k) {
      BuiltExample b = build_ek(k);
      CHECK(b.model.n == 3);
      CHECK(b.model.basis[0] == FieldElement(b.model.iet.field(), Rational(1, 2)));
    }
    CHECK_THROWS_AS(build_ek(0), PreconditionError);
    CHECK(build_example("ek", 3).example.iet.total() == build_ek(3).example.iet.total());
    CHECK_THROWS_AS(build_example("nope"), PreconditionError);
  }

  TEST_CASE("build_from_cycle reproduces the quartic example") {
    BuiltExample q = build_quartic();
    BuiltExample c = build_example("4213:01001011");
    CHECK(*c.model.sigma == *q.model.sigma);
    CHECK(c.example.rho == q.example.rho);
    CHECK(c.example.iet.lengths().size() == 4);
    CHECK_THROWS_AS(build_from_cycle(Permutation::parse("4213"), "0100101"), PreconditionError);
    CHECK_THROWS_AS(build_from_cycle(Permutation::parse("4213"), "01x01011"), PreconditionError);
  }

  TEST_CASE("slab matches exhaustive enumeration") {
    BuiltExample b = build_ek(2);
    for (const auto& xi : std::vector<std::vector<Rational>>{
             {0, 0, 0}, {Rational(1, 2), 0, Rational(1, 2)}, {Rational(1, 3), Rational(2, 3), 0}}) {
      for (long first : {-1L, 3L}) {
        Slab s(b.model, 4, first, xi);
        auto brute = brute_slab(b.model, 4, first, xi);
        REQUIRE(s.size() == brute.size());
        std::set<std::vector<std::int64_t>> seen;
        std::vector<std::int64_t> X(3);
        for (std::size_t i = 0; i < s.size(); ++i) {
          s.point(i, X.data());
          CHECK(s.index(X.data()) == static_cast<long>(i));
          seen.insert(X);
        }
        CHECK(seen == std::set<std::vector<std::int64_t>>(brute.begin(), brute.end()));
      }
    }
    Slab s(b.model, 4);
    std::int64_t far[3] = {0, 5, 0};
    CHECK(s.index(far) == -1);
  }

  TEST_CASE("orbit labels point back to their seeds") {
    BuiltExample b = build_ek(2);
    Slab slab(b.model, 12, 12);
    std::vector<OrbitSeed> seeds;
    std::vector<std::int64_t> X(3);
    for (std::size_t i = 0; i < slab.size(); ++i) {
      slab.point(i, X.data());
      if (std::abs(X[0]) <= 2 && std::abs(X[1]) <= 2 && std::abs(X[2]) <= 2) seeds.push_back({X, ""});
    }
    OrbitRun r = run_orbits(b.model, slab, seeds, 200000);
    LatticeKernel fwd(b.model), bwd(b.model, true);
    std::size_t labelled = 0;
    for (std::size_t i = 0; i < slab.size(); ++i) {
      if (r.label[i] < 0) continue;
      ++labelled;
      if (i % 7) continue;
      slab.point(i, X.data());
      CHECK(kernel_walk(fwd, bwd, seeds[r.label[i]].z, r.step[i]) == X);
    }
    CHECK(labelled == r.reached);
    long long sum = 0;
    for (auto it : r.orbit_iterations) sum += it;
    CHECK(sum == r.iterations);
    for (auto it : r.orbit_iterations) CHECK(it <= 200000);
    for (std::size_t s = 0; s < seeds.size(); ++s) CHECK(r.same_orbit[r.same_orbit[s]] == r.same_orbit[s]);
  }

  TEST_CASE("periodic orbits close") {
    // Rotation by 1/2 on [0, 1): every orbit has period 2.
    FieldPtr Q = NumberField::create(isolate_real_roots(IntPoly{-1, 1})[0], "Q");
    std::vector<FieldElement> len{FieldElement(Q, Rational(1, 2)), FieldElement(Q, Rational(1, 2))};
    IET rot(Permutation::parse("21"), len);
    LatticeModel m = build_lattice_model(rot, ModuleBasis::from_generators({FieldElement(Q, Rational(1, 2))}));
    Slab slab(m, 0);
    CHECK(slab.size() == 2);
    std::vector<OrbitSeed> seeds{{{0}, "a"}};
    OrbitRun r = run_orbits(m, slab, seeds, 100);
    CHECK(r.complete);
    CHECK(r.reached == 2);
    OrbitRun open = run_orbits(m, slab, seeds, 100, false);
    CHECK(open.closed[0]);
    CHECK(open.iterations < 100);
  }

  TEST_CASE("lattice fill coverage and monotonicity") {
    BuiltExample b = build_ek(2);
    CoverageReport full = lattice_fill(b.model, 12, 1, 10000000);
    CHECK(full.complete());
    CHECK(full.total == Slab(b.model, 24, 24).size());
    CHECK(full.max_orbit_iterations <= 10000000);
    std::size_t prev = 0;
    for (long long T : {1000LL, 4000LL, 16000LL, 64000LL, 256000LL}) {
      CoverageReport r = lattice_fill(b.model, 12, 1, T);
      CHECK(r.reached >= prev);
      CHECK(r.max_orbit_iterations <= T);
      CHECK(r.residual.size() == std::min<std::size_t>(50, r.total - r.reached));
      prev = r.reached;
    }
    for (long long T : {2000LL, 20000LL, 200000LL}) {
      std::size_t last = 0;
      for (long d : {1L, 2L, 3L}) {
        CoverageReport r = lattice_fill(b.model, 12, d, T);
        CHECK(r.reached >= last);
        last = r.reached;
      }
    }
    CoverageReport big = lattice_fill(b.model, 400, 1, 10, 1 << 20);
    CHECK_FALSE(big.error.empty());
    CHECK_FALSE(big.complete());
    CHECK_THROWS_AS(lattice_fill(b.model, 1, 2, 10), PreconditionError);
  }

  TEST_CASE("v_row reproduces the exponent table") {
    for (int k = 1; k <= 3; ++k) {
      VRow r = v_row(k);
      CHECK(r.report.v == doctest::Approx(0.5).epsilon(1e-12));
      CHECK(r.loop_length == static_cast<std::size_t>(21 + 9 * (k - 1)));
      CHECK(r.report.power_identity);
    }
    VRow r4 = v_row(4);
    CHECK(std::fabs(r4.report.v - 0.546715) < 1e-5);
    CHECK_FALSE(r4.report.power_identity);
    CHECK(r4.sigma.size() == 7);
  }

  TEST_CASE("escape fit checkpoints agree with exact orbits") {
    BuiltExample q = build_quartic();
    const FieldElement zero(q.model.iet.field(), Rational(0));
    EscapeFit f = escape_fit(q.model, zero, 5000, 4);
    REQUIRE(f.checkpoints.size() == 13);
    std::vector<double> norm, env;
    double run = 0;
    long long next = 1;
    psi_orbit(q.model, layer_of(q.model.basis, zero), 5000, [&](long k, const std::vector<std::int64_t>& d) {
      double nm = 0;
      for (auto c : d) nm = std::max(nm, static_cast<double>(std::llabs(c)));
      run = std::max(run, nm);
      if (k == next) {
        norm.push_back(nm);
        env.push_back(run);
        next *= 2;
      }
    });
    for (std::size_t i = 0; i < f.checkpoints.size(); ++i) {
      CHECK(f.checkpoints[i].k == (1LL << i));
      CHECK(f.checkpoints[i].norm == norm[i]);
      CHECK(f.checkpoints[i].envelope == env[i]);
    }
    EscapeFit g = escape_fit(q.model, zero, 1 << 16);
    CHECK(g.slope == doctest::Approx(1.0).epsilon(0.05));
    // Half-integer layer of E_2.
    BuiltExample e2 = build_ek(2);
    EscapeFit h = escape_fit(e2.model, field_element(e2.model.iet.field(), {1, 1}, 4), 1 << 12, 2);
    CHECK(h.checkpoints.size() == 13);
    CHECK_THROWS_AS(escape_fit(q.model, q.model.iet.total(), 10), PreconditionError);
  }

  TEST_CASE("fixed point start") {
    BuiltExample e = build_e2star();
    const FieldPtr& K = e.model.iet.field();
    FieldElement r8(K, Rational(1));
    for (int i = 0; i < 8; ++i) r8 = r8 * e.example.rho;
    CHECK(fixed_point_start(e.model) == FieldElement(K, Rational(1)) - r8);
    BuiltExample q = build_quartic();
    CHECK(fixed_point_start(q.model).is_zero());
    CHECK_THROWS_AS(fixed_point_start(build_ek(2).model), PreconditionError);
  }

  TEST_CASE("prop13 evidence at small scale") {
    BuiltExample e = build_e2star();
    Prop13Report r = prop13_evidence(e, 6, 12, 2000000, 512, 7, {{0, Rational(1, 2), 0}});
    CHECK(r.periodic == 12);
    CHECK(r.window_points == 13 * 13);
    CHECK(r.reached == r.window_points);
    CHECK(r.pass());
    CHECK(r.seeds.size() == 6);
    std::size_t sum = 0;
    for (auto c : r.per_label) sum += c;
    CHECK(sum == r.reached);
    REQUIRE(r.layers.size() == 1);
    CHECK(r.layers[0].orbits >= 1);
    CHECK(r.layers[0].orbits <= 6);
  }

  TEST_CASE("config files") {
    Config c = Config::parse("# run\nk = 3\nT_cap=1e7 # cap\n\nexample = e2star\n");
    CHECK(c.get_int("k", 0) == 3);
    CHECK(c.get_int("T_cap", 0) == 10000000);
    CHECK(c.get("example", "") == "e2star");
    CHECK(c.get("missing", "x") == "x");
    CHECK(c.get_int("missing", 9) == 9);
    c.set("k", "5");
    CHECK(c.get_int("k", 0) == 5);
    CHECK_THROWS_AS(c.get_int("example", 0), PreconditionError);
    CHECK_THROWS_AS(Config::parse("novalue\n"), PreconditionError);
    CHECK_THROWS_AS(Config::parse(" = 3\n"), PreconditionError);
    c.set("x", "2.5");
    CHECK_THROWS_AS(c.get_int("x", 0), PreconditionError);
    CHECK_THROWS_AS(Config::load("/nonexistent/file.cfg"), PreconditionError);
  }
}
