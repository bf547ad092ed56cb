// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: acceptance [criterion...]

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "ietlab/experiments.hpp"
#include "ietlab/factor.hpp"
#include "ietlab/spectral.hpp"

using namespace ietlab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string fmt(double x, int p = 6) {
  std::ostringstream os;
  os << std::setprecision(p) << x;
  return os.str();
}

bool same(const std::vector<FieldElement>& a, const std::vector<FieldElement>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

// 1. Census at length 8.
Outcome census8() {
  Outcome o;
  auto classes = rauzy_graph(4);
  auto rows = survey(classes[1], 8);
  const CensusRow& r = rows.at(7);
  o.check(r.length == 8 && r.cycles == 1 && r.polys == 1, "length-8 row (cycles, polys) = (1, 1)");
  o.check(r.polynomials.size() == 1 && r.polynomials[0] == IntPoly{1, -7, 13, -7, 1}, "polynomial x^4-7x^3+13x^2-7x+1");
  for (int l = 1; l < 8; ++l) o.check(rows[l - 1].cycles == 0, "no qualifying cycle below length 8");
  o.note("class 2 of N=4 (7 permutations): 8, " + std::to_string(r.cycles) + ", " + std::to_string(r.polys));
  return o;
}

// 2. Census at lengths 9..12.
Outcome census12() {
  Outcome o;
  auto classes = rauzy_graph(4);
  auto rows = survey(classes[1], 12);
  const long want[5][2] = {{1, 1}, {6, 3}, {7, 4}, {30, 10}, {80, 27}};
  std::string got;
  for (int l = 8; l <= 12; ++l) {
    const CensusRow& r = rows.at(l - 1);
    o.check(r.cycles == want[l - 8][0] && r.polys == want[l - 8][1], "length " + std::to_string(l));
    got += (l > 8 ? " " : "") + std::string("(") + std::to_string(r.cycles) + "," + std::to_string(r.polys) + ")";
    for (const auto& p : r.polynomials) o.check(is_self_reciprocal(p), "self-reciprocal charpoly");
  }
  o.note("lengths 8..12: " + got + ", cycles up to rotation");
  return o;
}

// 3. Quartic closed forms.
Outcome quartic_forms() {
  Outcome o;
  BuiltExample q = build_quartic();
  const FieldPtr& K = q.model.iet.field();
  const FieldElement& r = q.example.rho;
  o.check(std::fabs(r.to_double() - 0.227777) < 1e-6, "rho ~ 0.227777");
  // rho = (7 + sqrt5 - sqrt(38 + 14 sqrt5)) / 4 is the root of x^4 - 7x^3 + 13x^2 - 7x + 1 near 0.2278.
  o.check(K->minpoly() == IntPoly{1, -7, 13, -7, 1}, "field of rho");
  std::vector<FieldElement> lam{field_element(K, {0, 1}), field_element(K, {1, -4, 1}), field_element(K, {1, -4, 5, -1}),
                                field_element(K, {-1, 7, -6, 1})};
  o.check(same(q.model.iet.lengths(), lam), "Lambda");
  const long delta[4][4] = {{0, 1, 1, 1}, {-1, 0, 1, 0}, {-1, -1, 0, 0}, {-1, 0, 0, 0}};
  std::vector<FieldElement> tau;
  for (int i = 0; i < 4; ++i) {
    FieldElement t(K, Rational(0));
    for (int j = 0; j < 4; ++j) t = t + lam[j] * Rational(delta[i][j]);
    tau.push_back(t);
  }
  o.check(same(q.model.iet.translations(), tau), "Delta Lambda = tau");
  const long v[4][4] = {{1, -1, 0, 0}, {1, -5, 5, -1}, {-1, 3, -1, 0}, {0, -1, 0, 0}};
  bool vok = true;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) vok = vok && q.model.projection(k, i) == v[i][k];
  o.check(vok, "v_i");
  Drift d = drift_vector(q.model);
  o.check(!d.zero, "S != 0");
  std::vector<FieldElement> printed{field_element(K, {0, 1, -4, -1}), field_element(K, {-1, 0, 16, -4}),
                                    field_element(K, {4, -16, 0, 1}), field_element(K, {-1, 4, -1})};
  for (int c = 0; c < 4; ++c)
    o.check(d.components[c] == printed[c], "S_" + std::to_string(c + 1) + " printed " + printed[c].to_string() +
                                              ", computed " + d.components[c].to_string());
  // The printed Lambda and v_i force S_1 = rho - 4rho^2 + rho^3; the printed S_1 has -rho^3.
  FieldElement s1 = lam[0] * Rational(1) + lam[1] * Rational(1) + lam[2] * Rational(-1);
  if (!(s1 == printed[0])) o.note("sum Lambda_i v_i from the printed Lambda and v_i gives S_1 = " + s1.to_string());
  return o;
}

// 4. Quartic substitution.
Outcome quartic_sigma() {
  Outcome o;
  ExampleIET q = quartic_example();
  SelfSimilarity s = check_self_similar(q.iet, q.rho, FieldElement(q.iet.field(), Rational(0)));
  o.check(s.ok, "induced map on Omega_1 is E scaled by rho");
  o.check(s.sigma == Substitution::parse("1 -> 143\n2 -> 143223\n3 -> 14323\n4 -> 1443\n"), "sigma");
  IntMatrix Binv = int_matrix({{1, 1, 1, 1}, {0, 2, 1, 0}, {1, 2, 2, 1}, {1, 1, 1, 2}});
  // Row i of the transpose of B^-1 is the abelianization of sigma(i).
  IntMatrix rows(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int letter : s.sigma[i]) rows(i, letter) += 1;
  o.check(rows == Binv.transpose(), "abelianization rows = transpose(B^-1)");
  o.check(s.sigma.incidence() == Binv, "incidence (count of i in sigma(j)) = B^-1");
  o.check(rauzy_loop(q.iet).cycle.product == Binv, "cycle product = B^-1");
  std::string rules = s.sigma.to_string();
  for (auto& ch : rules)
    if (ch == '\n') ch = ';';
  if (!rules.empty() && rules.back() == ';') rules.pop_back();
  o.note("sigma: " + rules);
  return o;
}

// 5. E2* suite.
Outcome e2star_suite() {
  Outcome o;
  BuiltExample e = build_e2star();
  o.check(e.model.iet.permutation() == Permutation::parse("(5462731)"), "permutation (5462731)");
  RauzyLoop loop = rauzy_loop(e.model.iet);
  Factorization f = factor_int_poly(loop.cycle.charpoly);
  std::set<std::vector<long>> got, want{{-1, 10, -6, 1}, {-1, 6, -10, 1}, {-1, 1}};
  for (const auto& fa : f.factors) {
    std::vector<long> c;
    for (const auto& x : fa.poly.coeffs()) c.push_back(x.get_si());
    if (fa.multiplicity == 1) got.insert(c);
  }
  o.check(got == want && f.factors.size() == 3, "charpoly = (x^3-6x^2+10x-1)(x^3-10x^2+6x-1)(1-x) up to sign");
  o.check(std::fabs(e.example.rho.to_double() - 0.106711) < 1e-6, "rho ~ 0.106711");
  RealAlgebraic beta = reciprocal(to_real_algebraic(e.example.rho));
  o.check(is_pisot(beta), "beta Pisot");
  o.check(drift_vector(e.model).zero, "drift = 0");
  o.check(*e.model.sigma == Substitution::parse("1 -> 7114115\n2 -> 7114121361361214115\n3 -> 711412136136135\n"
                                                "4 -> 71141214115\n5 -> 71156136135\n6 -> 711561361361214115\n"
                                                "7 -> 7115\n"),
          "sigma");
  o.check(*e.model.R * e.model.projection == e.model.projection * e.model.sigma->incidence(), "R pi = pi M_sigma");
  o.note("rho = " + fmt(e.example.rho.to_double(), 9) + ", beta = " + fmt(beta.approx(), 9));
  return o;
}

// 6. E_k family and both v tables.
Outcome ek_family() {
  Outcome o;
  for (int k = 1; k <= 6; ++k) {
    BuiltExample b = build_ek(k);
    const FieldPtr& K = b.model.iet.field();
    FieldElement sum(K, Rational(0));
    for (const auto& l : b.model.iet.lengths()) sum = sum + l;
    o.check(sum == FieldElement(K, Rational(2)) - FieldElement::generator(K), "lengths sum to 2 - lambda_k");
    o.check(is_irreducible(ek_polynomial(k)), "f_k irreducible");
    o.check(drift_vector(b.model).zero, "drift = 0");
  }
  const std::vector<std::pair<int, double>> table{{1, 0.5},       {2, 0.5},       {3, 0.5},       {4, 0.546715},
                                                  {5, 0.595958},  {6, 0.623202},  {7, 0.642502},  {17, 0.721655},
                                                  {30, 0.756235}, {50, 0.780871}, {100, 0.8074},  {150, 0.820165},
                                                  {200, 0.828247}, {500, 0.849766}};
  double worst = 0;
  for (auto [k, v] : table) {
    VRow r = v_row(k);
    double err = std::fabs(static_cast<double>(r.report.v) - v);
    worst = std::max(worst, err);
    o.check(err <= 1e-5, "v(" + std::to_string(k) + ") = " + fmt(static_cast<double>(r.report.v), 8));
  }
  o.note("14 v values, max deviation " + fmt(worst, 3));
  return o;
}

// 7. Lattice filling at desk scale.
Outcome lattice_filling() {
  Outcome o;
  for (auto [k, d] : std::vector<std::pair<int, long>>{{2, 1}, {3, 3}}) {
    CoverageReport r = lattice_fill(build_ek(k).model, 40, d, 10000000);
    o.check(r.complete(), "k=" + std::to_string(k) + " full coverage");
    o.note("k=" + std::to_string(k) + " D=40 d=" + std::to_string(d) + ": " + std::to_string(r.reached) + "/" +
           std::to_string(r.total) + ", max " + std::to_string(r.max_orbit_iterations) + " iterations per seed (cap 1e7), " +
           std::to_string(r.iterations) + " in total");
  }
  return o;
}

// 8. Escape rate fits.
Outcome escape_rates() {
  Outcome o;
  BuiltExample e = build_e2star(), q = build_quartic();
  EscapeFit fe = escape_fit(e.model, fixed_point_start(e.model), 1000000);
  EscapeFit fq = escape_fit(q.model, fixed_point_start(q.model), 1000000);
  o.check(std::fabs(fe.slope - 0.5) <= 0.1, "E2* slope within 0.5 +- 0.1");
  o.check(std::fabs(fq.slope - 1.0) <= 0.05, "quartic slope within 1 +- 0.05");
  o.note("E2* " + fmt(fe.slope, 4) + ", quartic " + fmt(fq.slope, 4) + " (10^6 steps, envelope, k >= 2^10)");
  return o;
}

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
      head = {r, std::uniform_int_distribution<int>(0, static_cast<int>(s[r].size()) - 1)(rng)};
      tr.insert(tr.begin(), head);
    }
    tr.insert(tr.end(), per.begin(), per.end());
    return tr;
  }
}

std::vector<Prefix> expand(const VershikCode& c, int L) {
  std::vector<Prefix> out;
  for (int i = 0; i < L; ++i) out.push_back(i < c.t + c.T ? c.prefixes[i] : c.prefixes[c.t + (i - c.t) % c.T]);
  return out;
}

// 9. Exact identities.
Outcome exact_identities() {
  Outcome o;
  BuiltExample q = build_quartic(), e = build_e2star(), e2 = build_ek(2);
  for (const BuiltExample* b : {&q, &e, &e2}) {
    const FieldPtr& K = b->model.iet.field();
    for (const FieldElement& x : {FieldElement(K, Rational(0)), b->model.iet.total() * Rational(1, 3)})
      o.check(check_drift_ledger(b->model, x, 10000) == 10000, b->example.name + " drift ledger");
  }
  Vershik vq(q.model), ve(e.model);
  PartitionCheck pq = vq.check_partition(6), pe = ve.check_partition(6);
  o.check(pq.ok && pe.ok, "tile partition to depth 6");
  std::mt19937_64 rng(2024);
  int rq = 0, re = 0;
  for (int tries = 0; rq < 100 && tries < 2000; ++tries) {
    VershikCode c;
    c.t = std::uniform_int_distribution<int>(0, 4)(rng);
    c.T = std::uniform_int_distribution<int>(1, 4)(rng);
    c.prefixes = random_code(vq, c.t, c.T, rng);
    FieldElement x;
    try {
      x = vq.decode(c);
    } catch (const PreconditionError&) {
      continue;  // not the code of a point of this layer
    }
    VershikCode back = vq.encode(x);
    if (back.determined() && expand(back, 60) == expand(c, 60) && vq.decode(back) == x) ++rq;
    else break;
  }
  const FieldPtr& KE = e.model.iet.field();
  for (int i = 0; i < 100; ++i) {
    int den = 2 + i % 11;
    std::uniform_int_distribution<int> cd(-3 * den, 3 * den);
    std::vector<Rational> co;
    for (int j = 0; j < 3; ++j) co.push_back(Rational(cd(rng), den));
    for (auto& c : co) c.canonicalize();
    FieldElement x(KE, co);
    x = x - FieldElement(KE, Rational(x.floor()));
    VershikCode c = ve.encode(x);
    if (c.determined() && ve.decode(c) == x) ++re;
  }
  o.check(rq == 100 && re == 100, "100 round trips per example");
  o.check(d_T(*q.model.R, 1) == 1 && d_T(*e.model.R, 1) == 4, "d_1 = 1 (quartic), 4 (E2*)");
  bool mono = true;
  for (const BuiltExample* b : {&q, &e}) {
    Integer prev = 0;
    for (int T = 1; T <= 30; ++T) {
      Integer d = d_T(*b->model.R, T);
      mono = mono && d > prev;
      prev = d;
    }
  }
  o.check(mono, "d_T increasing for T <= 30");
  std::string dens;
  for (const BuiltExample* b : {&q, &e}) {
    const FieldPtr& K = b->model.iet.field();
    DensityEstimate d = density_estimate(b->model, {{FieldElement(K, Rational(0)), FieldElement(K, Rational(1, 2))}}, 50);
    o.check(std::fabs(d.estimate.get_d() - 0.5) <= 0.02, b->example.name + " density of [0, 1/2)");
    dens += (dens.empty() ? "" : ", ") + fmt(d.estimate.get_d(), 5);
  }
  LiouvilleSweep ls = liouville_sweep(q.model.basis, 100);
  o.check(ls.pass, "Liouville sweep");
  o.note("tiles " + std::to_string(pq.tiles) + " / " + std::to_string(pe.tiles) + ", round trips " +
         std::to_string(rq) + " / " + std::to_string(re) + ", density " + dens + ", Liouville " +
         std::to_string(ls.points) + " points, min ratio " + fmt(static_cast<double>(ls.min_ratio), 4));
  return o;
}

// 10. Finite decomposition evidence for E2*.
Outcome prop13() {
  Outcome o;
  Prop13Report r = prop13_evidence(build_e2star(), 20, 100, 10000000);
  o.check(r.periodic == 100, "100/100 eventually periodic codes");
  o.check(r.reached == r.window_points, "window covered");
  o.check(r.labels == 6, "6 orbit labels");
  o.note(std::to_string(r.periodic) + "/100 periodic (depth <= " + std::to_string(r.max_depth_used) + "), " +
         std::to_string(r.reached) + "/" + std::to_string(r.window_points) + " points, " + std::to_string(r.labels) +
         " labels");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Census gate (length 8)", census8},
      {"Extended census (lengths 9-12)", census12},
      {"Quartic closed forms", quartic_forms},
      {"Quartic substitution", quartic_sigma},
      {"E2* suite", e2star_suite},
      {"E_k family and v tables", ek_family},
      {"Lattice filling (desk scale)", lattice_filling},
      {"Escape rate fits", escape_rates},
      {"Exact identity suite", exact_identities},
      {"E2* finite decomposition evidence", prop13},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(id)) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS " : "FAIL ") << std::setw(2) << id << ". " << criteria[i].first << " [" << fmt(s, 3)
              << " s]: " << o.detail << std::endl;
  }
  return failed ? 1 : 0;
}
