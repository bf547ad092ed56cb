#include "ietlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "ietlab/factor.hpp"

namespace ietlab {

namespace {

[[noreturn]] void fail(const std::string& who, const std::string& what) { throw CheckFailure(who + ": " + what); }

bool same_coords(const std::vector<FieldElement>& a, const std::vector<FieldElement>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].coords() != b[i].coords()) return false;
  return true;
}

ModuleBasis module_of(const IET& e) {
  std::vector<FieldElement> gens = e.lengths();
  for (const auto& t : e.translations()) gens.push_back(t);
  return ModuleBasis::from_generators(gens);
}

}  // namespace

BuiltExample build_quartic() {
  const std::string who = "build_quartic";
  BuiltExample b;
  b.example = quartic_example();
  const IET& e = b.example.iet;
  const FieldPtr& K = e.field();
  if (std::fabs(b.example.rho.to_double() - 0.227777) > 1e-6) fail(who, "rho");
  RauzyLoop loop = rauzy_loop(e);
  if (loop.preperiod != 0 || loop.cycle.labels != "01001011") fail(who, "Rauzy loop");
  if (loop.rho != b.example.rho) fail(who, "loop scaling");
  if (loop.cycle.charpoly != IntPoly{1, -7, 13, -7, 1}) fail(who, "cycle charpoly");
  SelfSimilarIET s = self_similar_from_cycle(loop.cycle);
  if (!same_coords(s.iet.lengths(), e.lengths())) fail(who, "lengths from the cycle");
  b.checks.push_back("Rauzy cycle 01001011 reproduces lengths and rho");
  b.model = build_lattice_model(e, ModuleBasis::power_basis(K), b.example.rho, b.example.window);
  Substitution printed = Substitution::parse("1 -> 143\n2 -> 143223\n3 -> 14323\n4 -> 1443\n");
  if (!(*b.model.sigma == printed)) fail(who, "substitution");
  if (printed.incidence() != loop.cycle.product) fail(who, "incidence matrix");
  b.checks.push_back("sigma = (143, 143223, 14323, 1443), M_sigma = B^-1");
  const long v[4][4] = {{1, -1, 0, 0}, {1, -5, 5, -1}, {-1, 3, -1, 0}, {0, -1, 0, 0}};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      if (b.model.projection(k, i) != v[i][k]) fail(who, "translation vectors");
  Drift d = drift_vector(b.model);
  if (d.zero) fail(who, "drift");
  b.checks.push_back("v_i and nonzero drift");
  return b;
}

BuiltExample build_e2star() {
  const std::string who = "build_e2star";
  BuiltExample b;
  b.example = e2star_example();
  const IET& e = b.example.iet;
  const FieldPtr& K = e.field();
  if (e.permutation() != Permutation::parse("(5462731)")) fail(who, "permutation");
  if (std::fabs(b.example.rho.to_double() - 0.106711) > 1e-6) fail(who, "rho");
  RauzyLoop loop = rauzy_loop(e);
  if (loop.preperiod != 0 || loop.cycle.labels.size() != 29 || loop.rho != b.example.rho) fail(who, "Rauzy loop");
  if (loop.cycle.charpoly != IntPoly{-1, 10, -6, 1} * IntPoly{-1, 6, -10, 1} * IntPoly{1, -1} * IntPoly{-1})
    fail(who, "cycle charpoly");
  SelfSimilarIET s = self_similar_from_cycle(loop.cycle);
  if (!same_coords(s.iet.lengths(), e.lengths())) fail(who, "lengths from the cycle");
  if (!is_pisot(reciprocal(to_real_algebraic(b.example.rho)))) fail(who, "Pisot");
  b.checks.push_back("29-step Rauzy cycle reproduces lengths and rho; 1/rho is Pisot");
  b.model = build_lattice_model(e, ModuleBasis::power_basis(K), b.example.rho, b.example.window);
  Substitution printed = Substitution::parse(
      "1 -> 7114115\n2 -> 7114121361361214115\n3 -> 711412136136135\n4 -> 71141214115\n"
      "5 -> 71156136135\n6 -> 711561361361214115\n7 -> 7115\n");
  if (!(*b.model.sigma == printed)) fail(who, "substitution");
  b.checks.push_back("sigma matches the 7 printed rules; R pi = pi M_sigma");
  if (!drift_vector(b.model).zero) fail(who, "drift");
  b.checks.push_back("drift = 0");
  return b;
}

BuiltExample build_ek(int k) {
  const std::string who = "build_ek";
  require(k >= 1, "build_ek: k >= 1 required");
  BuiltExample b;
  b.example = ek_example(k);
  const IET& e = b.example.iet;
  const FieldPtr& K = e.field();
  const IntPoly f = ek_polynomial(k);
  if (f.eval(Integer(1)) == 0 || f.eval(Integer(-1)) == 0 || !is_irreducible(f)) fail(who, "f_k reducible");
  if (K->minpoly() != f) fail(who, "field");
  FieldElement l = FieldElement::generator(K);
  FieldElement one(K, Rational(1));
  if (e.total() != one * Rational(2) - l) fail(who, "total length");
  std::vector<FieldElement> lam{field_element(K, {0, 2, -1}, 2), field_element(K, {0, 2, -1}, 2),
                                field_element(K, {1, -3, 1}, 2), field_element(K, {1, -3, 1}, 2),
                                field_element(K, {1}, 2),        field_element(K, {0, 1}, 2),
                                field_element(K, {1, -1}, 2)};
  std::vector<FieldElement> tau{field_element(K, {2, 1, -1}, 2), field_element(K, {2, -3, 1}, 2),
                                field_element(K, {3, -4, 1}, 2), field_element(K, {1, 2, -1}, 2),
                                field_element(K, {-1, 1}, 2),    field_element(K, {1, -1}, 2),
                                field_element(K, {-3, 1}, 2)};
  if (!same_coords(e.lengths(), lam) || !same_coords(e.translations(), tau)) fail(who, "lengths/translations");
  b.checks.push_back("lengths and translations match, total = 2 - lambda_k, f_k irreducible");
  b.model = build_lattice_model(e, ModuleBasis::power_basis(K, Rational(1, 2)));
  if (!drift_vector(b.model).zero) fail(who, "drift");
  b.checks.push_back("drift = 0");
  return b;
}

BuiltExample build_from_cycle(const Permutation& base, const std::string& labels) {
  RauzyCycle c;
  c.base = base;
  c.labels = labels;
  c.product = IntMatrix::identity(base.size());
  Permutation p = base;
  for (char ch : labels) {
    if (ch != '0' && ch != '1') throw PreconditionError("build_from_cycle: labels must be 0/1");
    c.path.push_back(p);
    c.product = c.product * rauzy_matrix(p, ch - '0');
    p = rauzy_successor(p, ch - '0');
  }
  if (p != base) throw PreconditionError("build_from_cycle: labels do not close a loop at the base");
  c.charpoly = charpoly(c.product);
  SelfSimilarIET s = self_similar_from_cycle(c);
  BuiltExample b;
  b.example.name = "cycle " + base.to_string() + ":" + labels;
  b.example.iet = s.iet;
  b.example.rho = s.rho;
  b.example.window = FieldElement(s.rho.field(), Rational(0));
  b.example.self_similar = true;
  b.model = build_lattice_model(s.iet, module_of(s.iet), s.rho, b.example.window);
  b.checks.push_back("self-similar on [0, rho total)");
  return b;
}

BuiltExample build_example(const std::string& id, int k) {
  if (id == "quartic") return build_quartic();
  if (id == "e2star" || id == "E2star") return build_e2star();
  if (id == "ek" || id == "E_k") return build_ek(k);
  auto colon = id.find(':');
  if (colon != std::string::npos) return build_from_cycle(Permutation::parse(id.substr(0, colon)), id.substr(colon + 1));
  throw PreconditionError("unknown example '" + id + "'");
}

// ---------------------------------------------------------------------------

Slab::Slab(const LatticeModel& m, long box, long first_bound, const std::vector<Rational>& xi)
    : n_(m.n), box_(box), side_(2 * box + 1) {
  require(box >= 0, "Slab: box >= 0");
  const FieldElement& nu0 = m.basis[0];
  require(nu0.is_rational() && nu0.sign() > 0, "Slab: first basis element must be a positive rational");
  std::vector<Rational> layer = xi.empty() ? std::vector<Rational>(n_, Rational(0)) : xi;
  require(static_cast<int>(layer.size()) == n_, "Slab: layer dimension");
  Integer den = 1;
  for (const auto& q : layer) den = lcm_z(den, q.get_den());
  den_ = to_i64(den);
  for (const auto& q : layer) off_.push_back(to_i64(Rational(q * Rational(den)).get_num()));
  const FieldElement xiF = m.basis.element(layer);
  const Rational q0 = nu0.coords()[0];
  const double q0d = q0.get_d();
  std::vector<double> nud;
  for (int i = 0; i < n_; ++i) nud.push_back(m.basis[i].to_double());
  const FieldElement& total = m.iet.total();
  const double totald = total.to_double(), xid = xiF.to_double();
  std::size_t rows = 1;
  for (int i = 1; i < n_; ++i) rows *= static_cast<std::size_t>(side_);
  start_.assign(rows + 1, 0);
  zmin_.assign(rows, 0);
  std::vector<std::int64_t> z(n_, 0);
  for (std::size_t r = 0; r < rows; ++r) {
    std::size_t rr = r;
    double y = xid, mag = std::fabs(xid);
    for (int i = 1; i < n_; ++i) {
      z[i] = static_cast<std::int64_t>(rr % side_) - box;
      rr /= side_;
      y += static_cast<double>(z[i]) * nud[i];
      mag += std::fabs(static_cast<double>(z[i]) * nud[i]);
    }
    const double err = 1e-12 * (1 + mag + totald) / q0d;
    // z0 in [ceil(-y / nu0), ceil((total - y) / nu0) - 1]
    auto ceil_exact = [&](bool upper) {
      double a = ((upper ? totald : 0.0) - y) / q0d;
      if (std::fabs(a - std::round(a)) > err) return static_cast<std::int64_t>(std::ceil(a));
      std::vector<Integer> zi(n_, 0);
      for (int i = 1; i < n_; ++i) zi[i] = Integer(static_cast<long>(z[i]));
      FieldElement yy = m.basis.element(zi) + xiF;
      FieldElement t = upper ? total - yy : -yy;
      FieldElement v = t * (Rational(1) / q0);
      return to_i64(-((-v).floor()));
    };
    std::int64_t lo = ceil_exact(false), hi = ceil_exact(true) - 1;
    if (first_bound >= 0) {
      lo = std::max<std::int64_t>(lo, -first_bound);
      hi = std::min<std::int64_t>(hi, first_bound);
    }
    zmin_[r] = lo;
    start_[r + 1] = start_[r] + std::max<std::int64_t>(0, hi - lo + 1);
  }
}

std::size_t Slab::memory_estimate(int n, long box) {
  std::size_t rows = 1;
  for (int i = 1; i < n; ++i) rows *= static_cast<std::size_t>(2 * box + 1);
  // row tables + label (4 bytes) and step (8 bytes) per point, ~4 points per row
  return rows * 16 + rows * 4 * 12;
}

long Slab::index(const std::int64_t* X) const {
  std::size_t r = 0, mul = 1;
  for (int i = 1; i < n_; ++i) {
    std::int64_t z = (X[i] - off_[i]) / den_;
    if (z < -box_ || z > box_) return -1;
    r += static_cast<std::size_t>(z + box_) * mul;
    mul *= static_cast<std::size_t>(side_);
  }
  std::int64_t off = (X[0] - off_[0]) / den_ - zmin_[r];
  if (off < 0 || off >= start_[r + 1] - start_[r]) return -1;
  return static_cast<long>(start_[r] + off);
}

void Slab::point(std::size_t idx, std::int64_t* X) const {
  auto it = std::upper_bound(start_.begin(), start_.end(), static_cast<std::int64_t>(idx));
  std::size_t r = static_cast<std::size_t>(it - start_.begin()) - 1;
  X[0] = (zmin_[r] + static_cast<std::int64_t>(idx) - start_[r]) * den_ + off_[0];
  for (int i = 1; i < n_; ++i) {
    X[i] = (static_cast<std::int64_t>(r % side_) - box_) * den_ + off_[i];
    r /= side_;
  }
}

OrbitRun run_orbits(const LatticeModel& m, const Slab& slab, const std::vector<OrbitSeed>& seeds, long long cap,
                    bool until_covered, long chunk) {
  require(cap >= 0 && chunk >= 1, "run_orbits: bad cap or chunk");
  const int n = m.n;
  LatticeKernel fwd(m, false, slab.den()), bwd(m, true, slab.den());
  OrbitRun run;
  const std::size_t S = seeds.size();
  run.label.assign(slab.size(), -1);
  run.step.assign(slab.size(), 0);
  run.orbit_iterations.assign(S, 0);
  run.closed.assign(S, false);
  run.extent.assign(n, 0);
  std::vector<int> parent(S);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };

  struct Walker {
    int orbit;
    bool backward;
    std::vector<std::int64_t> X;
    long long budget, done = 0;
    bool active = true;
  };
  std::vector<Walker> walkers;
  for (std::size_t s = 0; s < S; ++s) {
    require(static_cast<int>(seeds[s].z.size()) == n, "run_orbits: seed dimension");
    long idx = slab.index(seeds[s].z.data());
    bool fresh = true;
    if (idx >= 0) {
      if (run.label[idx] < 0) {
        run.label[idx] = static_cast<std::int32_t>(s);
        ++run.reached;
      } else {
        unite(static_cast<int>(s), run.label[idx]);
        fresh = false;
      }
    }
    for (int i = 0; i < n; ++i) run.extent[i] = std::max(run.extent[i], std::abs(seeds[s].z[i]));
    walkers.push_back({static_cast<int>(s), false, seeds[s].z, cap - cap / 2, 0, fresh});
    walkers.push_back({static_cast<int>(s), true, seeds[s].z, cap / 2, 0, fresh});
  }
  run.complete = run.reached == slab.size();
  auto done = [&] { return until_covered && run.complete; };
  bool any = true;
  while (any && !done()) {
    any = false;
    for (auto& w : walkers) {
      if (!w.active || done()) continue;
      if (run.closed[w.orbit] || w.done >= w.budget) {
        w.active = false;
        continue;
      }
      any = true;
      const LatticeKernel& K = w.backward ? bwd : fwd;
      const long long todo = std::min<long long>(chunk, w.budget - w.done);
      std::int64_t* X = w.X.data();
      long long s = 0;
      while (s < todo) {
        K.step(X);
        ++s;
        ++w.done;
        for (int i = 0; i < n; ++i) {
          std::int64_t a = X[i] < 0 ? -X[i] : X[i];
          if (a > run.extent[i]) run.extent[i] = a;
        }
        long idx = slab.index(X);
        if (idx < 0) continue;
        std::int32_t& lab = run.label[idx];
        if (lab < 0) {
          lab = w.orbit;
          run.step[idx] = w.backward ? -w.done : w.done;
          if (++run.reached == slab.size()) {
            run.complete = true;
            if (until_covered) break;
          }
        } else if (lab == w.orbit) {
          run.closed[w.orbit] = true;
          break;
        } else {
          // The other walker has covered (or will cover) everything beyond.
          unite(w.orbit, lab);
          w.active = false;
          break;
        }
      }
      run.iterations += s;
      run.orbit_iterations[w.orbit] += s;
    }
  }
  for (auto& e : run.extent) e = (e + slab.den() - 1) / slab.den();
  for (std::size_t s = 0; s < S; ++s) {
    run.max_orbit_iterations = std::max(run.max_orbit_iterations, run.orbit_iterations[s]);
    run.same_orbit.push_back(find(static_cast<int>(s)));
  }
  run.exact_fallbacks = fwd.exact_fallbacks() + bwd.exact_fallbacks();
  return run;
}

CoverageReport lattice_fill(const LatticeModel& m, long D, long d, long long T_cap, std::size_t memory_budget,
                            std::size_t residual_limit) {
  require(D >= d && d >= 1 && T_cap >= 1, "lattice_fill: need D >= d >= 1 and T >= 1");
  CoverageReport rep;
  rep.D = D;
  rep.d = d;
  rep.T_cap = T_cap;
  const FieldElement& nu0 = m.basis[0];
  require(nu0.is_rational() && nu0.sign() > 0, "lattice_fill: first basis element must be a positive rational");
  Rational inv = Rational(1) / nu0.coords()[0];
  require(inv.get_den() == 1, "lattice_fill: 1 / nu_0 must be an integer");
  const long s = inv.get_num().get_si();
  rep.memory = Slab::memory_estimate(m.n, D * s);
  if (rep.memory > memory_budget) {
    rep.error = "memory budget exceeded: need about " + std::to_string(rep.memory) + " bytes";
    return rep;
  }
  Slab slab(m, D * s, D * s);
  rep.total = slab.size();
  std::vector<OrbitSeed> seeds;
  std::vector<std::int64_t> X(m.n);
  for (std::size_t i = 0; i < slab.size(); ++i) {
    slab.point(i, X.data());
    bool in = true;
    for (auto c : X) in = in && std::abs(c) <= d * s;
    if (in) seeds.push_back({X, ""});
  }
  rep.seeds = seeds.size();
  OrbitRun run = run_orbits(m, slab, seeds, T_cap);
  rep.reached = run.reached;
  rep.iterations = run.iterations;
  rep.max_orbit_iterations = run.max_orbit_iterations;
  rep.extent = run.extent;
  rep.mask.resize(slab.size());
  for (std::size_t i = 0; i < slab.size(); ++i) rep.mask[i] = run.label[i] >= 0;
  for (std::size_t i = 0; i < slab.size() && rep.residual.size() < residual_limit; ++i)
    if (run.label[i] < 0) {
      slab.point(i, X.data());
      rep.residual.push_back(X);
    }
  return rep;
}

VRow v_row(int k) {
  VRow row;
  row.k = k;
  ExampleIET e = ek_example(k);
  const FieldPtr& K = e.iet.field();
  InducedMap im = induce(e.iet, FieldElement(K, Rational(0)), e.iet.lengths()[0]);
  RauzyLoop loop = rauzy_loop(im.induced);
  row.loop_length = loop.cycle.labels.size();
  IET base = im.induced;
  if (loop.preperiod != 0) base = IET(loop.cycle.base, loop.lengths);
  SelfSimilarity ss = check_self_similar(base, loop.rho, FieldElement(K, Rational(0)));
  if (!ss.ok) throw CheckFailure("v_row: induced map is not self-similar: " + ss.reason);
  row.sigma = ss.sigma;
  ModuleBasis B = module_of(base);
  IntMatrix R = mult_matrix(loop.rho, B);
  row.report = exponent_report(R, ss.sigma.incidence());
  return row;
}

EscapeFit escape_fit(const LatticeModel& m, const FieldElement& x, long long steps, int jmin) {
  require(steps >= 1, "escape_fit: steps >= 1");
  require(x.sign() >= 0 && x < m.iet.total(), "escape_fit: point outside the interval");
  LatticePoint p = layer_of(m.basis, x);
  Integer den = 1;
  for (const auto& q : p.xi) den = lcm_z(den, q.get_den());
  LatticeKernel K(m, false, to_i64(den));
  const int n = m.n;
  std::vector<std::int64_t> X(n), X0(n);
  for (int i = 0; i < n; ++i) {
    Rational c = (p.xi[i] + Rational(p.z[i])) * Rational(den);
    X[i] = X0[i] = to_i64(c.get_num());
  }
  EscapeFit fit;
  const double scale = den.get_d();
  std::int64_t env = 0;
  long long next = 1;
  for (long long k = 1; k <= steps; ++k) {
    K.step(X.data());
    std::int64_t nm = 0;
    for (int i = 0; i < n; ++i) nm = std::max(nm, std::abs(X[i] - X0[i]));
    env = std::max(env, nm);
    if (k == next) {
      fit.checkpoints.push_back({k, nm / scale, env / scale});
      next *= 2;
    }
  }
  fit.exact_fallbacks = K.exact_fallbacks();
  std::vector<double> lx, ly;
  for (const auto& c : fit.checkpoints)
    if (c.k >= (1LL << jmin) && c.envelope > 0) {
      lx.push_back(std::log(static_cast<double>(c.k)));
      ly.push_back(std::log(c.envelope));
    }
  const std::size_t c = lx.size();
  if (c < 2) return fit;
  double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / c, my = std::accumulate(ly.begin(), ly.end(), 0.0) / c;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < c; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < c; ++i) {
    double r = ly[i] - fit.intercept - fit.slope * lx[i];
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / c);
  return fit;
}

FieldElement fixed_point_start(const LatticeModel& m, int depth) {
  require(m.rho && m.window && m.sigma, "fixed_point_start: self-similar model required");
  require(depth >= 1, "fixed_point_start: depth >= 1");
  const FieldPtr& K = m.iet.field();
  const FieldElement one(K, Rational(1));
  const FieldElement& rho = *m.rho;
  SubstitutionInfo info = analyze_substitution(*m.sigma);
  FieldElement x = *m.window * (one - rho).inverse();
  if (!(x < m.iet.total())) {
    FieldElement r = one;
    for (int i = 0; i < depth; ++i) r = r * rho;
    x = x - r * m.iet.total();
  }
  Word w{info.fixed_letter};
  for (int i = 0; i < 3; ++i) w = m.sigma->apply(w);
  Word o = orbit(m.iet, x, static_cast<long>(w.size())).word;
  if (!std::equal(w.begin(), w.end(), o.begin())) throw CheckFailure("fixed_point_start: orbit word is not sigma^3(j)");
  return x;
}

Prop13Report prop13_evidence(const BuiltExample& e2, long W, int samples, long long cap, int depth, unsigned seed,
                             const std::vector<std::vector<Rational>>& layers, long long layer_cap) {
  const LatticeModel& m = e2.model;
  Prop13Report rep;
  rep.window = W;
  // (i) Vershik codes of small-denominator points.
  Vershik v(m);
  const FieldPtr& K = m.iet.field();
  std::mt19937_64 rng(seed);
  rep.samples = samples;
  for (int i = 0; i < samples; ++i) {
    int den = 2 + i % 11;
    std::uniform_int_distribution<int> c(-3 * den, 3 * den);
    std::vector<Rational> co;
    for (int j = 0; j < K->degree(); ++j) {
      Rational q(c(rng), den);
      q.canonicalize();
      co.push_back(q);
    }
    FieldElement x(K, co);
    x = x - FieldElement(K, Rational(x.floor()));
    x = x * m.iet.total();
    VershikCode code = v.encode(x, depth);
    if (code.determined() && v.decode(code) == x) {
      ++rep.periodic;
      rep.max_depth_used = std::max(rep.max_depth_used, code.t + code.T);
    }
  }
  // (ii) discontinuity orbits on the layer xi = 0.
  Slab slab(m, W);
  rep.window_points = slab.size();
  for (int a = 1; a < m.iet.size(); ++a) {
    OrbitSeed s;
    for (const auto& c : m.left[a]) s.z.push_back(to_i64(c));
    s.name = "l" + std::to_string(a + 1);
    rep.seeds.push_back(s);
  }
  rep.run = run_orbits(m, slab, rep.seeds, cap);
  rep.reached = rep.run.reached;
  rep.iterations = rep.run.iterations;
  std::vector<int> roots;
  for (int r : rep.run.same_orbit)
    if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
  rep.labels = static_cast<int>(roots.size());
  rep.per_label.assign(rep.seeds.size(), 0);
  for (auto l : rep.run.label)
    if (l >= 0) ++rep.per_label[l];
  // (iii) orbits through whole windows of other layers.
  for (const auto& xi : layers) {
    LayerCount lc;
    lc.xi = xi;
    Slab ls(m, W, -1, xi);
    lc.points = ls.size();
    std::vector<OrbitSeed> all(ls.size());
    for (std::size_t i = 0; i < ls.size(); ++i) {
      all[i].z.resize(m.n);
      ls.point(i, all[i].z.data());
    }
    OrbitRun r = run_orbits(m, ls, all, layer_cap, false);
    lc.reached = r.reached;
    std::vector<int> rs;
    for (std::size_t i = 0; i < all.size(); ++i)
      if (r.same_orbit[i] == static_cast<int>(i)) rs.push_back(static_cast<int>(i));
    lc.orbits = static_cast<int>(rs.size());
    rep.layers.push_back(lc);
  }
  return rep;
}

Config Config::parse(const std::string& text) {
  Config c;
  std::istringstream is(text);
  std::string line;
  int no = 0;
  while (std::getline(is, line)) {
    ++no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw PreconditionError("config line " + std::to_string(no) + ": expected key = value");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.empty()) throw PreconditionError("config line " + std::to_string(no) + ": empty key");
    c.kv_[key] = value;
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string Config::get(const std::string& key, const std::string& fallback) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

long long Config::get_int(const std::string& key, long long fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  try {
    std::size_t pos = 0;
    // accept 1e7 style
    double d = std::stod(it->second, &pos);
    if (pos != it->second.size() || d != std::floor(d)) throw std::invalid_argument("x");
    return static_cast<long long>(d);
  } catch (const std::logic_error&) {
    throw PreconditionError("config key " + key + ": expected an integer, got '" + it->second + "'");
  }
}

}  // namespace ietlab
