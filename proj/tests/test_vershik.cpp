#include <random>

#include "doctest.h"
#include "ietlab/examples.hpp"
#include "ietlab/vershik.hpp"

using namespace ietlab;

namespace {

LatticeModel model_of(const ExampleIET& q) {
  return build_lattice_model(q.iet, ModuleBasis::power_basis(q.iet.field()), q.rho, q.window);
}

const Substitution& quartic_sigma() {
  static const Substitution s = Substitution::parse("1 -> 143\n2 -> 143223\n3 -> 14323\n4 -> 1443\n");
  return s;
}

// Random admissible code with transient t and period T.
std::vector<Prefix> random_code(const Vershik& v, int t, int T, std::mt19937_64& rng) {
  const Substitution& s = v.sigma();
  const auto& P = v.prefixes();
  std::uniform_int_distribution<std::size_t> any(0, P.size() - 1);
  for (;;) {
    std::vector<Prefix> per{P[any(rng)]};
    while (static_cast<int>(per.size()) < T) {
      std::vector<Prefix> next;
      for (const auto& p : P)
        if (next_symbol(s, p) == per.back().rule) next.push_back(p);
      per.push_back(next[std::uniform_int_distribution<std::size_t>(0, next.size() - 1)(rng)]);
    }
    if (next_symbol(s, per.front()) != per.back().rule) continue;
    std::vector<Prefix> tr;
    Prefix head = per.front();
    for (int k = 0; k < t; ++k) {
      int r = next_symbol(s, head);
      int len = std::uniform_int_distribution<int>(0, static_cast<int>(s[r].size()) - 1)(rng);
      head = {r, len};
      tr.insert(tr.begin(), head);
    }
    tr.insert(tr.end(), per.begin(), per.end());
    return tr;
  }
}

std::vector<Prefix> expand(const VershikCode& c, int L) {
  std::vector<Prefix> out;
  for (int i = 0; i < L; ++i)
    out.push_back(i < c.t + c.T ? c.prefixes[i] : c.prefixes[c.t + (i - c.t) % c.T]);
  return out;
}

FieldElement random_point(const FieldPtr& K, int den, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-3 * den, 3 * den);
  std::vector<Rational> co;
  for (int i = 0; i < K->degree(); ++i) {
    Rational q(c(rng), den);
    q.canonicalize();
    co.push_back(q);
  }
  FieldElement x(K, co);
  return x - FieldElement(K, Rational(x.floor()));
}

}  // namespace

TEST_SUITE("substitution-vershik") {

TEST_CASE("analyze_substitution") {
  ExampleIET q = quartic_example();
  SubstitutionInfo a = analyze_substitution(quartic_sigma());
  CHECK(a.primitive);
  CHECK(a.incidence == int_matrix({{1, 1, 1, 1}, {0, 2, 1, 0}, {1, 2, 2, 1}, {1, 1, 1, 2}}));
  CHECK(compare(q.rho.inverse(), a.beta) == 0);
  CHECK(a.fixed_letter == 0);

  LatticeModel e = model_of(e2star_example());
  SubstitutionInfo b = analyze_substitution(*e.sigma);
  CHECK(b.beta.minpoly() == IntPoly{-1, 6, -10, 1});
  CHECK(is_pisot(b.beta));
  CHECK(b.fixed_letter == 6);

  SubstitutionInfo f = analyze_substitution(Substitution::parse("1 -> 12\n2 -> 1"));
  CHECK(f.beta.minpoly() == IntPoly{-1, -1, 1});
  CHECK(std::fabs(f.beta.approx() - (1 + std::sqrt(5.0)) / 2) < 1e-12);
  CHECK_THROWS_AS(analyze_substitution(Substitution::parse("1 -> 1\n2 -> 12")), PreconditionError);
}

TEST_CASE("abelianization and growth") {
  for (const Substitution& s : {quartic_sigma(), *model_of(e2star_example()).sigma}) {
    IntMatrix M = s.incidence();
    for (int j = 0; j < s.size(); ++j)
      for (int k = 0; k <= 3; ++k) {
        auto w = s.iterate(j, k);
        IntMatrix Mk = power(M, k);
        for (int i = 0; i < s.size(); ++i) CHECK(std::count(w.begin(), w.end(), i) == Mk(i, j));
      }
    double beta = analyze_substitution(s).beta.approx();
    double prev_err = 1e300;
    for (int k = 2; k <= 12; ++k) {
      IntMatrix a = power(M, k - 1), b = power(M, k);
      Integer la = 0, lb = 0;
      for (int i = 0; i < s.size(); ++i) {
        la += a(i, 0);
        lb += b(i, 0);
      }
      double err = std::fabs(Rational(lb, la).get_d() - beta);
      CHECK(err <= prev_err * 1.0001);
      prev_err = err;
    }
    CHECK(prev_err < 1e-3 * beta);
  }
}

TEST_CASE("prefix_graph") {
  PrefixGraph f = prefix_graph(Substitution::parse("1 -> 12\n2 -> 1"));
  CHECK(f.states.size() == 3);
  CHECK(f.spectral_radius.minpoly() == IntPoly{-1, -1, 1});

  const Substitution& s = quartic_sigma();
  PrefixGraph g = prefix_graph(s);
  CHECK(g.states.size() == 18);
  CHECK(compare(quartic_example().rho.inverse(), g.spectral_radius) == 0);
  // Brute-force count of admissible sequences.
  std::vector<std::vector<Prefix>> seqs{{}};
  for (int t = 1; t <= 4; ++t) {
    std::vector<std::vector<Prefix>> next;
    for (const auto& q : seqs)
      for (const auto& p : g.states)
        if (q.empty() || q.back().rule == next_symbol(s, p)) {
          auto r = q;
          r.push_back(p);
          next.push_back(r);
        }
    seqs = next;
    CHECK(g.paths(t) == static_cast<long>(seqs.size()));
  }
  IntMatrix M = s.incidence();
  for (int T = 1; T <= 8; ++T) {
    IntMatrix MT = power(M, T);
    Integer tr = 0;
    for (int i = 0; i < 4; ++i) tr += MT(i, i);
    CHECK(g.cycles(T) == tr);
  }
}

TEST_CASE("code serialization") {
  VershikCode c;
  c.t = 1;
  c.T = 2;
  c.prefixes = {{0, 2}, {3, 1}, {1, 0}};
  CHECK(c.to_string() == "(1;2;1:2,4:1,2:0)");
  CHECK(VershikCode::parse(" (1; 2; 1:2, 4:1, 2:0) ") == c);
  CHECK_THROWS_AS(VershikCode::parse("(1;2;1:2)"), PreconditionError);
  CHECK_THROWS_AS(VershikCode::parse("1;2;1:2"), PreconditionError);
}

TEST_CASE("encode zero") {
  ExampleIET q = quartic_example();
  Vershik v(model_of(q));
  VershikCode c = v.encode(FieldElement(q.iet.field(), Rational(0)));
  CHECK(c.to_string() == "(0;1;1:0)");
  CHECK(v.decode(c).is_zero());

  ExampleIET s = e2star_example();
  Vershik w(model_of(s));
  VershikCode d = w.encode(FieldElement(s.iet.field(), Rational(0)));
  CHECK(d.determined());
  CHECK(w.decode(d).is_zero());
}

TEST_CASE("T = 1 periodic points") {
  for (const ExampleIET& ex : {quartic_example(), e2star_example()}) {
    Vershik v(model_of(ex));
    const Integer d1 = d_T(*v.model().R, 1);
    int valid = 0;
    for (const auto& p : v.prefixes()) {
      if (p.rule != next_symbol(v.sigma(), p)) continue;
      VershikCode c;
      c.T = 1;
      c.prefixes = {p};
      FieldElement x;
      try {
        x = v.decode(c);
      } catch (const PreconditionError&) {
        continue;
      }
      ++valid;
      CHECK(x == v.offset(p) / (FieldElement(ex.iet.field(), Rational(1)) - ex.rho));
      for (const auto& co : v.model().basis.coords(x)) CHECK(Rational(co * Rational(d1)).get_den() == 1);
      CHECK(escape_bound_check(v, c).pass);
      CHECK(v.encode(x) == c);
    }
    CHECK(valid > 0);
  }
}

TEST_CASE("round trips") {
  std::mt19937_64 rng(99);
  // Quartic: random admissible eventually periodic codes.
  {
    Vershik v(model_of(quartic_example()));
    int done = 0, tries = 0;
    while (done < 100 && tries < 2000) {
      ++tries;
      int t = std::uniform_int_distribution<int>(0, 4)(rng), T = std::uniform_int_distribution<int>(1, 4)(rng);
      VershikCode c;
      c.t = t;
      c.T = T;
      c.prefixes = random_code(v, t, T, rng);
      REQUIRE(v.consistent(c.prefixes));
      FieldElement x;
      try {
        x = v.decode(c);
      } catch (const PreconditionError&) {
        continue;
      }
      ++done;
      VershikCode e = v.encode(x);
      REQUIRE(e.determined());
      CHECK(expand(e, 60) == expand(c, 60));
      CHECK(e.T <= c.T);
      CHECK(v.decode(e) == x);
    }
    CHECK(done == 100);
  }
  // E2*: points with small denominators.
  {
    ExampleIET s = e2star_example();
    Vershik v(model_of(s));
    for (int i = 0; i < 100; ++i) {
      FieldElement x = random_point(s.iet.field(), 2 + i % 11, rng);
      VershikCode c = v.encode(x);
      REQUIRE(c.determined());
      CHECK(v.consistent(c.prefixes));
      CHECK(v.decode(c) == x);
      CHECK(VershikCode::parse(c.to_string()) == c);
    }
  }
}

TEST_CASE("decode rejects bad codes") {
  Vershik v(model_of(quartic_example()));
  VershikCode c;
  c.T = 2;
  c.prefixes = {{0, 0}, {0, 0}};
  CHECK_NOTHROW(v.decode(c));
  c.prefixes = {{0, 0}, {1, 1}};  // next_symbol(2:1) = 4 != 1
  CHECK_THROWS_AS(v.decode(c), PreconditionError);
  c.prefixes = {{0, 5}, {0, 0}};
  CHECK_THROWS_AS(v.decode(c), PreconditionError);
  VershikCode u;
  CHECK_THROWS_AS(v.decode(u), PreconditionError);
}

TEST_CASE("tile partition") {
  for (const ExampleIET& ex : {quartic_example(), e2star_example()}) {
    Vershik v(model_of(ex));
    for (int d = 1; d <= 6; ++d) {
      PartitionCheck p = v.check_partition(d);
      CHECK(p.ok);
      CHECK(p.tiles == p.expected);
    }
    // Field-element tiles agree with encode.
    auto tiles = v.tiles(2);
    CHECK(tiles.front().left.is_zero());
    for (std::size_t i = 0; i + 1 < tiles.size(); ++i) CHECK(tiles[i].left + tiles[i].length == tiles[i + 1].left);
    CHECK(tiles.back().left + tiles.back().length == ex.iet.total());
    std::mt19937_64 rng(5);
    for (int i = 0; i < 50; ++i) {
      FieldElement x = random_point(ex.iet.field(), 7, rng) * ex.iet.total();
      VershikCode c = v.encode(x, 2);
      bool found = false;
      for (const auto& t : tiles)
        if (t.left <= x && x < t.left + t.length) {
          found = true;
          CHECK(t.code[0] == c.prefixes[0]);
          if (c.prefixes.size() > 1) CHECK(t.code[1] == c.prefixes[1]);
        }
      CHECK(found);
    }
  }
}

TEST_CASE("coding compatibility") {
  std::mt19937_64 rng(8);
  for (const ExampleIET& ex : {quartic_example(), e2star_example()}) {
    Vershik v(model_of(ex));
    const Substitution& s = v.sigma();
    for (int i = 0; i < 30; ++i) {
      FieldElement x = random_point(ex.iet.field(), 5, rng) * ex.iet.total();
      VershikCode c = v.encode(x, 2);
      REQUIRE(c.prefixes.size() >= 2);
      const Prefix &m1 = c.prefixes[0], &m2 = c.prefixes[1];
      std::vector<int> w1(s[m1.rule].begin() + m1.len, s[m1.rule].end());
      CHECK(orbit(ex.iet, x, static_cast<long>(w1.size())).word == w1);
      std::vector<int> inner(s[m2.rule].begin() + m2.len, s[m2.rule].end());
      std::vector<int> w2 = s.apply(inner);
      w2.erase(w2.begin(), w2.begin() + m1.len);
      CHECK(orbit(ex.iet, x, static_cast<long>(w2.size())).word == w2);
    }
  }
}

TEST_CASE("d_T") {
  LatticeModel q = model_of(quartic_example()), e = model_of(e2star_example());
  CHECK(d_T(*q.R, 1) == 1);
  CHECK(d_T(*e.R, 1) == 4);
  // Charpoly at 1.
  CHECK(abs(charpoly(*q.R).eval(Integer(1))) == 1);
  CHECK(abs(charpoly(*e.R).eval(Integer(1))) == 4);
  for (const LatticeModel* m : {&q, &e}) {
    Integer prev = 0;
    for (int T = 1; T <= 30; ++T) {
      Integer d = d_T(*m->R, T);
      CHECK(d > prev);
      prev = d;
      if (T <= 12) {
        DTCrossCheck c = d_T_numeric(*m->R, T);
        CHECK(std::fabs(c.direct / d.get_d() - 1) < 1e-9);
        if (m == &q) {
          CHECK(c.reciprocal);
          CHECK(std::fabs(c.reciprocal_form / d.get_d() - 1) < 1e-9);
        } else {
          CHECK_FALSE(c.reciprocal);
        }
      }
    }
  }
  CHECK_THROWS_AS(d_T(IntMatrix::identity(2), 1), PreconditionError);
}

TEST_CASE("exponent_report") {
  LatticeModel e = model_of(e2star_example());
  ExponentReport r = exponent_report(*e.R, e.sigma->incidence());
  CHECK(r.v_lo <= 0.5L);
  CHECK(r.v_hi >= 0.5L);
  CHECK(r.v_hi - r.v_lo < 1e-12L);
  CHECK(r.power_identity);
  CHECK(std::fabs(static_cast<double>(r.discrepancy_exponent) - 0.5) < 1e-12);
  CHECK(r.beta2_multiplicity == 1);

  LatticeModel q = model_of(quartic_example());
  ExponentReport s = exponent_report(*q.R, q.sigma->incidence());
  CHECK(s.v_lo <= 1.0L);
  CHECK(s.v_hi >= 1.0L);
  CHECK_FALSE(s.power_identity);
  // sr(R) = beta for nonzero drift: power 1 holds, power 3 does not.
  CHECK(spectral_power_equals(*q.R, 1, s.beta));
  CHECK_FALSE(spectral_power_equals(*q.R, 3, s.beta));
}

TEST_CASE("escape bound") {
  std::mt19937_64 rng(31);
  ExampleIET s = e2star_example();
  Vershik v(model_of(s));
  int done = 0, tries = 0;
  while (done < 40 && tries < 1000) {
    ++tries;
    int t = std::uniform_int_distribution<int>(0, 10)(rng), T = std::uniform_int_distribution<int>(1, 6)(rng);
    VershikCode c;
    c.t = t;
    c.T = T;
    c.prefixes = random_code(v, t, T, rng);
    EscapeBound b;
    try {
      b = escape_bound_check(v, c);
    } catch (const PreconditionError&) {
      continue;
    } catch (const CheckFailure&) {
      FAIL("period not a multiple of the layer order");
    }
    ++done;
    CHECK(b.pass);
    CHECK(b.ratio <= 1.0);
  }
  CHECK(done == 40);
  VershikCode zero = v.encode(FieldElement(s.iet.field(), Rational(0)));
  CHECK(escape_bound_check(v, zero).pass);
}

TEST_CASE("arithmetic-geometric closed form") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> c(-3, 3);
  int tested = 0;
  while (tested < 10) {
    RatMatrix a(3, 3);
    std::vector<Rational> b(3), u(3);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) a(i, j) = c(rng);
      b[i] = c(rng);
      u[i] = c(rng);
    }
    if (det(RatMatrix::identity(3) - a) == 0) continue;
    ++tested;
    std::vector<Rational> it = u, total = u;
    for (unsigned k = 0; k <= 20; ++k) {
      CHECK(arith_geom_closed(a, b, u, k) == it);
      CHECK(arith_geom_sum(a, b, u, k) == total);
      it = a * it;
      for (int i = 0; i < 3; ++i) it[i] += b[i];
      for (int i = 0; i < 3; ++i) total[i] += it[i];
    }
  }
}

}  // TEST_SUITE
