#include <random>

#include "doctest.h"
#include "ietlab/examples.hpp"
#include "ietlab/factor.hpp"
#include "ietlab/rauzy.hpp"
#include "ietlab/spectral.hpp"

using namespace ietlab;

namespace {

const IntPoly kQuartic{1, -7, 13, -7, 1};

int fig3_class() {
  auto classes = rauzy_graph(4);
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (classes[i].index_of(Permutation::parse("4213")) >= 0) return static_cast<int>(i);
  return -1;
}

// Random IET over the quartic field with lengths from random positive combinations.
IET random_iet(const Permutation& pi, const FieldPtr& K, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(1, 40);
  FieldElement r = FieldElement::generator(K);
  std::vector<FieldElement> lam;
  for (int i = 0; i < pi.size(); ++i)
    lam.push_back(FieldElement(K, Rational(c(rng))) + r * Rational(c(rng), 7) + r * r * Rational(c(rng), 11));
  return IET(pi, lam);
}

}  // namespace

TEST_SUITE("rauzy-induction") {

TEST_CASE("rauzy_step basics") {
  FieldPtr Q = NumberField::create(RealAlgebraic(Rational(1)), "Q");
  std::vector<FieldElement> lam{FieldElement(Q, Rational(1, 3)), FieldElement(Q, Rational(2, 3))};
  RauzyStep s = rauzy_step(Permutation::parse("21"), lam);
  CHECK(s.type == 0);
  CHECK(s.next == Permutation::parse("21"));
  CHECK(s.lengths[0] == lam[0]);
  CHECK(s.lengths[1] == FieldElement(Q, Rational(1, 3)));
  std::vector<FieldElement> eq{FieldElement(Q, Rational(1, 2)), FieldElement(Q, Rational(1, 2))};
  CHECK_THROWS_AS(rauzy_step(Permutation::parse("21"), eq), PreconditionError);
}

TEST_CASE("quartic cycle") {
  ExampleIET q = quartic_example();
  const char* path[8] = {"4213", "4213", "4321", "2431", "3241", "3241", "4321", "4132"};
  Permutation pi = q.iet.permutation();
  std::vector<FieldElement> lam = q.iet.lengths();
  IntMatrix prod = IntMatrix::identity(4);
  std::string types;
  for (int k = 0; k < 8; ++k) {
    CHECK(pi == Permutation::parse(path[k]));
    RauzyStep s = rauzy_step(pi, lam);
    types.push_back(static_cast<char>('0' + s.type));
    prod = prod * s.A;
    pi = s.next;
    lam = s.lengths;
  }
  CHECK(types == "01001011");
  CHECK(pi == q.iet.permutation());
  for (int i = 0; i < 4; ++i) CHECK(lam[i] == q.rho * q.iet.lengths()[i]);
  CHECK(prod == int_matrix({{1, 1, 1, 1}, {0, 2, 1, 0}, {1, 2, 2, 1}, {1, 1, 1, 2}}));
}

TEST_CASE("rauzy_step matches the first-return map") {
  std::mt19937_64 rng(17);
  FieldPtr K = NumberField::create(isolate_real_roots(kQuartic)[0], "Q(rho)");
  for (int n : {3, 4, 5}) {
    for (const auto& cls : rauzy_graph(n))
      for (const auto& pi : cls.vertices) {
        IET e = random_iet(pi, K, rng);
        const int m = pi.inverse()[n - 1];
        if (e.lengths()[n - 1] == e.lengths()[m]) continue;
        RauzyStep s = rauzy_step(pi, e.lengths());
        CHECK(s.next.is_irreducible());
        // A * new = old
        for (int i = 0; i < n; ++i) {
          FieldElement v(K, Rational(0));
          for (int j = 0; j < n; ++j) v += s.lengths[j] * Rational(s.A(i, j));
          CHECK(v == e.lengths()[i]);
        }
        FieldElement len = e.total() - (s.type == 0 ? e.lengths()[m] : e.lengths()[n - 1]);
        InducedMap im = induce(e, FieldElement(K, Rational(0)), len);
        CHECK(im.induced.permutation() == s.next);
        CHECK(im.induced.lengths() == s.lengths);
      }
  }
}

TEST_CASE("rauzy_graph") {
  auto g3 = rauzy_graph(3);
  REQUIRE(g3.size() == 1);
  CHECK(g3[0].vertices.size() == 3);
  auto g4 = rauzy_graph(4);
  CHECK(g4.size() == 2);
  CHECK(fig3_class() == 1);
  CHECK(g4[1].vertices.size() == 7);
  auto g7 = rauzy_graph(7);
  bool has294 = false;
  for (const auto& c : g7)
    if (c.vertices.size() == 294) {
      has294 = true;
      CHECK(c.index_of(Permutation::parse("5462731")) >= 0);
    }
  CHECK(has294);
  CHECK_THROWS_AS(rauzy_graph(8), PreconditionError);
}

TEST_CASE("census") {
  const auto cls = rauzy_graph(4)[fig3_class()];
  auto rows = survey(cls, 12);
  const long expect[5][2] = {{1, 1}, {6, 3}, {7, 4}, {30, 10}, {80, 27}};
  for (int l = 8; l <= 12; ++l) {
    CHECK(rows[l - 1].cycles == expect[l - 8][0]);
    CHECK(rows[l - 1].polys == expect[l - 8][1]);
  }
  for (int l = 1; l < 8; ++l) CHECK(rows[l - 1].cycles == 0);
  REQUIRE(rows[7].polynomials.size() == 1);
  CHECK(rows[7].polynomials[0] == kQuartic);
  // Nonzero drift and even degree: every hit is self-reciprocal.
  for (const auto& r : rows)
    for (const auto& p : r.polynomials) CHECK(is_self_reciprocal(p));
  // Schedule independence.
  auto rows3 = survey(cls, 10, 3);
  for (int l = 1; l <= 10; ++l) {
    CHECK(rows3[l - 1].cycles == rows[l - 1].cycles);
    CHECK(rows3[l - 1].polynomials == rows[l - 1].polynomials);
  }
}

TEST_CASE("census: no odd full degree") {
  for (const auto& cls : rauzy_graph(3)) {
    auto rows = survey(cls, 12);
    for (const auto& r : rows) CHECK(r.cycles == 0);
  }
  for (const auto& cls : rauzy_graph(5)) {
    auto rows = survey(cls, 9);
    for (const auto& r : rows) CHECK(r.cycles == 0);
  }
}

TEST_CASE("enumerate_cycles and self_similar_from_cycle") {
  const auto cls = rauzy_graph(4)[fig3_class()];
  std::vector<RauzyCycle> hits;
  long total = 0;
  enumerate_cycles(cls, 8, [&](const RauzyCycle& c) {
    ++total;
    if (c.labels.size() == 8 && is_primitive(c.product) && is_irreducible(c.charpoly)) hits.push_back(c);
  });
  CHECK(total > 0);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].charpoly == kQuartic);
  // Re-base the cycle at 4213 (first visit) to recover the published map.
  const RauzyCycle& c = hits[0];
  std::size_t at = 0;
  while (c.path[at] != Permutation::parse("4213") || c.path[(at + 1) % 8] != Permutation::parse("4213")) ++at;
  RauzyCycle r = c;
  r.base = c.path[at];
  r.labels = c.labels.substr(at) + c.labels.substr(0, at);
  r.product = IntMatrix::identity(4);
  for (int k = 0; k < 8; ++k) r.product = r.product * rauzy_matrix(c.path[(at + k) % 8], r.labels[k] - '0');
  SelfSimilarIET s = self_similar_from_cycle(r);
  CHECK(std::fabs(s.rho.to_double() - 0.227777) < 1e-6);
  ExampleIET q = quartic_example();
  for (int i = 0; i < 4; ++i) CHECK(s.iet.lengths()[i].coords() == q.iet.lengths()[i].coords());
  CHECK(check_self_similar(s.iet, s.rho, FieldElement(s.rho.field(), Rational(0))).ok);

  // Golden rotation from the 2-interval loop 01.
  RauzyCycle g;
  g.base = Permutation::parse("21");
  g.labels = "01";
  g.product = rauzy_matrix(g.base, 0) * rauzy_matrix(g.base, 1);
  g.charpoly = charpoly(g.product);
  SelfSimilarIET gs = self_similar_from_cycle(g);
  CHECK(std::fabs(gs.rho.to_double() - (3 - std::sqrt(5.0)) / 2) < 1e-12);
  CHECK(min_poly(gs.rho) == IntPoly{1, -3, 1});

  RauzyCycle bad = g;
  bad.labels = "00";
  bad.product = rauzy_matrix(g.base, 0) * rauzy_matrix(g.base, 0);
  CHECK_THROWS_AS(self_similar_from_cycle(bad), PreconditionError);
}

TEST_CASE("E2star loop") {
  ExampleIET s = e2star_example();
  RauzyLoop loop = rauzy_loop(s.iet);
  CHECK(loop.preperiod == 0);
  CHECK(loop.cycle.labels.size() == 29);
  CHECK(loop.rho == s.rho);
  auto f = factor_int_poly(loop.cycle.charpoly);
  std::vector<IntPoly> fs;
  for (const auto& x : f.factors) fs.push_back(x.poly);
  CHECK(std::count(fs.begin(), fs.end(), IntPoly{-1, 10, -6, 1}) == 1);
  CHECK(std::count(fs.begin(), fs.end(), IntPoly{-1, 6, -10, 1}) == 1);
  CHECK(std::count(fs.begin(), fs.end(), IntPoly{-1, 1}) == 1);
  IntMatrix printed = int_matrix({{4, 9, 6, 6, 4, 8, 2},
                                  {0, 2, 1, 1, 0, 1, 0},
                                  {0, 2, 3, 0, 2, 2, 0},
                                  {1, 2, 1, 2, 0, 1, 0},
                                  {1, 1, 1, 1, 2, 2, 1},
                                  {0, 2, 2, 0, 2, 3, 0},
                                  {1, 1, 1, 1, 1, 1, 1}});
  CHECK(loop.cycle.product == printed);
  SelfSimilarIET r = self_similar_from_cycle(loop.cycle);
  for (int i = 0; i < 7; ++i) CHECK(r.iet.lengths()[i].coords() == s.iet.lengths()[i].coords());
  CHECK(r.rho.coords() == s.rho.coords());
}

}  // TEST_SUITE
