// ietlab command line: census, example construction and the lattice experiments.
//
// Machine-readable rows go to stdout after a "# ietlab <command> v1" line and a
// column header; the human summary goes to stderr. Exit codes: 0 when every
// internal check passes, 1 on a check failure, 2 on a usage error.

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "ietlab/experiments.hpp"
#include "ietlab/rauzy.hpp"
#include "ietlab/spectral.hpp"

using namespace ietlab;

namespace {

constexpr int kUsage = 2;
constexpr int kCheck = 1;

std::string join(const std::vector<std::string>& v, const char* sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

std::string coords(const FieldElement& x) {
  std::vector<std::string> c;
  for (const auto& q : x.coords()) c.push_back(to_string(q));
  return "[" + join(c, " ") + "]";
}

std::string poly(const IntPoly& p) {
  std::vector<std::string> c;
  for (int i = 0; i <= p.degree(); ++i) c.push_back(to_string(p.coeff(i)));
  return "[" + join(c, " ") + "]";
}

std::string approx(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

std::string ints(const std::vector<std::int64_t>& v) {
  std::vector<std::string> c;
  for (auto x : v) c.push_back(std::to_string(x));
  return "[" + join(c, " ") + "]";
}

void header(const std::string& cmd, const std::string& columns) {
  std::cout << "# ietlab " << cmd << " v1\n" << columns << "\n";
}

// "1/3, 0, 2" -> coordinates in the power basis of the field generator.
FieldElement parse_point(const FieldPtr& K, const std::string& s) {
  std::vector<Rational> c;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) c.push_back(parse_rational(tok));
  if (c.empty() || static_cast<int>(c.size()) > K->degree())
    throw PreconditionError("point '" + s + "' needs 1.." + std::to_string(K->degree()) + " rational coordinates");
  c.resize(K->degree(), Rational(0));
  return FieldElement(K, c);
}

std::vector<long> parse_list(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stol(tok));
    } catch (const std::logic_error&) {
      throw PreconditionError("expected a comma separated integer list, got '" + s + "'");
    }
  }
  return out;
}

// Layers "a/b c d; ..." for prop13.
std::vector<std::vector<Rational>> parse_layers(const std::string& s, int n) {
  std::vector<std::vector<Rational>> out;
  std::stringstream ss(s);
  std::string layer;
  while (std::getline(ss, layer, ';')) {
    std::stringstream ls(layer);
    std::vector<Rational> xi;
    std::string tok;
    while (ls >> tok) xi.push_back(parse_rational(tok));
    if (xi.empty()) continue;
    if (static_cast<int>(xi.size()) != n) throw PreconditionError("layer '" + layer + "' has the wrong dimension");
    out.push_back(xi);
  }
  return out;
}

// Options can come from --config; flags given on the command line win.
struct Bindings {
  std::string config;
  std::set<std::string> known;
  std::vector<std::pair<CLI::Option*, std::function<void(const Config&)>>> items;

  // The value is looked up under key, then under the flag name without dashes.
  template <class T>
  CLI::Option* add(CLI::App* app, const std::string& flag, const std::string& key, T& var, const std::string& help) {
    CLI::Option* o = app->add_option(flag, var, help)->capture_default_str();
    std::string alias = flag.substr(flag.find_first_not_of('-'));
    std::replace(alias.begin(), alias.end(), '-', '_');
    known.insert(key);
    known.insert(alias);
    items.push_back({o, [key, alias, &var](const Config& c) {
                       const std::string& name = c.has(key) ? key : alias;
                       if (!c.has(name)) return;
                       if constexpr (std::is_same_v<T, std::string>)
                         var = c.get(name, var);
                       else
                         var = static_cast<T>(c.get_int(name, var));
                     }});
    return o;
  }
  void apply() {
    if (config.empty()) return;
    Config c = Config::load(config);
    for (const auto& [key, value] : c.values())
      if (!known.count(key)) throw PreconditionError("config file " + config + ": unknown key '" + key + "'");
    for (auto& [opt, set] : items)
      if (opt->count() == 0) set(c);
  }
};

// MODEL: an example id ("quartic", "e2star", "ek", "PERM:LABELS") or a file
// written by `build --out`.
BuiltExample load_model(const std::string& model, int k) {
  std::ifstream probe(model);
  if (probe) {
    Config c = Config::load(model);
    return build_example(c.get("example", ""), static_cast<int>(c.get_int("k", k)));
  }
  return build_example(model, k);
}

void summary_checks(const BuiltExample& b) {
  std::cerr << b.example.name << "\n";
  for (const auto& c : b.checks) std::cerr << "  ok: " << c << "\n";
}

int cmd_survey(int n, const std::string& cls, int lmax, int threads) {
  auto classes = rauzy_graph(n);
  std::vector<int> which;
  if (cls == "all") {
    for (std::size_t i = 0; i < classes.size(); ++i) which.push_back(static_cast<int>(i));
  } else {
    int c = std::stoi(cls);
    if (c < 1 || c > static_cast<int>(classes.size()))
      throw PreconditionError("class must be 1.." + std::to_string(classes.size()) + " or all");
    which.push_back(c - 1);
  }
  header("survey", "length, cycles, polys, polynomials");
  std::cout << "# cycles counted up to rotation; classes ordered by size, then smallest permutation\n";
  bool ok = true;
  std::vector<std::map<std::string, int>> combined(lmax + 1);
  std::vector<long> combined_cycles(lmax + 1, 0);
  for (int c : which) {
    std::cout << "# class " << c + 1 << " (" << classes[c].vertices.size() << " permutations, contains "
              << classes[c].vertices.front().to_string() << ")\n";
    for (const auto& row : survey(classes[c], lmax, threads)) {
      std::vector<std::string> polys;
      for (const auto& p : row.polynomials) {
        polys.push_back(poly(p));
        ++combined[row.length][poly(p)];
        if (n % 2 == 0 && !is_self_reciprocal(p) && p.degree() == n) ok = false;
      }
      combined_cycles[row.length] += row.cycles;
      std::cout << row.length << ", " << row.cycles << ", " << row.polys << ", " << join(polys, "; ") << "\n";
      std::cerr << "class " << c + 1 << " length " << row.length << ": " << row.cycles << " cycles, " << row.polys
                << " polynomials\n";
    }
  }
  if (which.size() > 1) {
    std::cout << "# combined\n";
    for (int l = 1; l <= lmax; ++l) {
      std::vector<std::string> polys;
      for (const auto& [p, _] : combined[l]) polys.push_back(p);
      std::cout << l << ", " << combined_cycles[l] << ", " << polys.size() << ", " << join(polys, "; ") << "\n";
    }
  }
  if (!ok) std::cerr << "FAIL: a characteristic polynomial is not self-reciprocal\n";
  return ok ? 0 : kCheck;
}

int cmd_build(const std::string& what, int k, const std::string& file, const std::string& out) {
  BuiltExample b;
  std::string id = what;
  if (what == "cycle") {
    if (file.empty()) throw PreconditionError("build cycle needs PERM:LABELS or a FILE with base = ... and labels = ...");
    if (std::ifstream(file)) {
      Config c = Config::load(file);
      id = c.get("base", "") + ":" + c.get("labels", "");
    } else {
      id = file;
    }
  }
  b = build_example(id, k);
  header("build", "atom, length, translation, length_approx");
  const IET& e = b.example.iet;
  for (int i = 0; i < e.size(); ++i)
    std::cout << i + 1 << ", " << coords(e.lengths()[i]) << ", " << coords(e.translations()[i]) << ", "
              << approx(e.lengths()[i].to_double()) << "\n";
  std::cout << "# permutation " << e.permutation().to_string() << "\n";
  std::cout << "# field minpoly " << poly(e.field()->minpoly()) << "\n";
  if (b.model.rho) std::cout << "# rho " << coords(*b.model.rho) << " ~ " << approx(b.model.rho->to_double()) << "\n";
  if (b.model.sigma) {
    std::istringstream rules(b.model.sigma->to_string());
    for (std::string line; std::getline(rules, line);) std::cout << "# sigma " << line << "\n";
  }
  summary_checks(b);
  if (!out.empty()) {
    std::ofstream os(out);
    if (!os) throw PreconditionError("cannot write " + out);
    os << "# ietlab model v1\nexample = " << id << "\nk = " << k << "\n";
    std::cerr << "model written to " << out << "\n";
  }
  return 0;
}

int cmd_drift(const std::string& model, int k) {
  BuiltExample b = load_model(model, k);
  Drift d = drift_vector(b.model);
  header("drift", "component, coords, approx");
  for (std::size_t i = 0; i < d.components.size(); ++i)
    std::cout << i << ", " << coords(d.components[i]) << ", " << approx(d.components[i].to_double()) << "\n";
  std::cerr << b.example.name << ": drift " << (d.zero ? "= 0 (exact)" : "!= 0 (exact)") << "\n";
  std::cout << "# drift " << (d.zero ? "= 0 (exact)" : "!= 0 (exact)") << "\n";
  return 0;
}

int cmd_vershik(const std::string& mode, const std::string& model, int k, const std::string& x, const std::string& code,
                int depth) {
  BuiltExample b = load_model(model, k);
  Vershik v(b.model);
  header("vershik", "code, x_coords, x_approx");
  if (mode == "encode") {
    if (x.empty()) throw PreconditionError("vershik encode needs --x");
    FieldElement p = parse_point(b.model.iet.field(), x);
    VershikCode c = v.encode(p, depth);
    std::cout << c.to_string() << ", " << coords(p) << ", " << approx(p.to_double()) << "\n";
    if (!c.determined()) {
      std::cerr << "no period found within depth " << depth << "\n";
      return 0;
    }
    bool ok = v.decode(c) == p;
    std::cerr << "code " << c.to_string() << (ok ? ", decodes back exactly" : ", DECODE MISMATCH") << "\n";
    return ok ? 0 : kCheck;
  }
  if (mode == "decode") {
    if (code.empty()) throw PreconditionError("vershik decode needs --code");
    VershikCode c = VershikCode::parse(code);
    FieldElement p = v.decode(c);
    std::cout << c.to_string() << ", " << coords(p) << ", " << approx(p.to_double()) << "\n";
    bool ok = v.encode(p, std::max(depth, c.t + c.T + 1)).determined();
    std::cerr << "x = " << p.to_string() << " ~ " << approx(p.to_double()) << "\n";
    return ok ? 0 : kCheck;
  }
  throw PreconditionError("vershik mode must be encode or decode");
}

void write_mask(const std::string& path, const CoverageReport& r, int k) {
  std::ofstream os(path);
  if (!os) throw PreconditionError("cannot write " + path);
  os << "# ietlab coverage-mask v1\n# k = " << k << ", D = " << r.D << ", d = " << r.d << ", T_cap = " << r.T_cap
     << ", points = " << r.total << "\n# run lengths, alternating unreached/reached, slab order\n";
  bool cur = false;
  std::size_t len = 0;
  for (bool b : r.mask) {
    if (b != cur) {
      os << len << "\n";
      len = 0;
      cur = b;
    }
    ++len;
  }
  os << len << "\n";
}

int cmd_lattice_fill(int k, long D, long d, long long T, const std::string& mask, long long memory) {
  BuiltExample b = build_ek(k);
  CoverageReport r = lattice_fill(b.model, D, d, T, static_cast<std::size_t>(memory));
  if (!mask.empty() && r.error.empty()) write_mask(mask, r, k);
  header("lattice-fill",
         "k, D, d, T_cap, points, reached, seeds, iterations, max_seed_iterations, extent, complete");
  std::cout << k << ", " << D << ", " << d << ", " << T << ", " << r.total << ", " << r.reached << ", " << r.seeds
            << ", " << r.iterations << ", " << r.max_orbit_iterations << ", " << ints(r.extent) << ", "
            << (r.complete() ? 1 : 0) << "\n";
  for (const auto& p : r.residual) std::cout << "# unreached " << ints(p) << "\n";
  if (!r.error.empty()) {
    std::cerr << "E_" << k << ": " << r.error << "\n";
    return kCheck;
  }
  std::cerr << "E_" << k << " C_" << D << " from C_" << d << ": " << r.reached << "/" << r.total << " points ("
            << approx(100.0 * r.reached / r.total) << "%), " << r.iterations << " iterations in total, at most "
            << r.max_orbit_iterations << " per seed\n";
  return 0;
}

int cmd_escape(const std::string& model, int k, const std::string& x, long long steps, int jmin) {
  BuiltExample b = load_model(model, k);
  FieldElement p = x.empty() ? fixed_point_start(b.model) : parse_point(b.model.iet.field(), x);
  EscapeFit f = escape_fit(b.model, p, steps, jmin);
  header("escape-rate", "k, norm, envelope");
  for (const auto& c : f.checkpoints) std::cout << c.k << ", " << approx(c.norm) << ", " << approx(c.envelope) << "\n";
  std::cout << "# slope " << approx(f.slope) << ", intercept " << approx(f.intercept) << ", residual "
            << approx(f.residual) << "\n";
  std::cerr << b.example.name << ", x = " << coords(p) << ": escape exponent " << approx(f.slope) << " (residual "
            << approx(f.residual) << ", " << steps << " steps)\n";
  return 0;
}

int cmd_vtable(const std::string& ks, const std::string& rules) {
  std::ofstream ro;
  if (!rules.empty()) {
    ro.open(rules);
    if (!ro) throw PreconditionError("cannot write " + rules);
    ro << "# ietlab sigma-k v1\n";
  }
  header("v-table", "k, loop_length, v, v_lo, v_hi, beta, beta2, beta2_multiplicity, discrepancy_exponent, power_identity");
  for (long k : parse_list(ks)) {
    VRow r = v_row(static_cast<int>(k));
    const ExponentReport& e = r.report;
    std::cout << k << ", " << r.loop_length << ", " << std::fixed << std::setprecision(6) << e.v << ", " << e.v_lo
              << ", " << e.v_hi << ", " << e.beta.approx_ld() << ", " << e.beta2 << std::defaultfloat << ", "
              << e.beta2_multiplicity << ", " << approx(e.discrepancy_exponent) << ", " << (e.power_identity ? 1 : 0) << "\n";
    std::cerr << "k = " << k << ": v = " << std::fixed << std::setprecision(6) << e.v << std::defaultfloat
              << (e.power_identity ? " (v = 1/(n-1) holds exactly)" : "") << "\n";
    if (ro) ro << "# k = " << k << "\n" << r.sigma.to_string() << "\n";
  }
  return 0;
}

int cmd_prop13(long W, int samples, long long cap, int depth, unsigned seed, const std::string& layers,
               long long layer_cap, const std::string& dump) {
  BuiltExample b = build_e2star();
  Prop13Report r =
      prop13_evidence(b, W, samples, cap, depth, seed, parse_layers(layers, b.model.n), layer_cap);
  header("prop13", "item, value");
  std::cout << "samples, " << r.samples << "\nperiodic, " << r.periodic << "\nmax_depth, " << r.max_depth_used
            << "\nwindow, " << r.window << "\nwindow_points, " << r.window_points << "\nreached, " << r.reached
            << "\norbit_labels, " << r.labels << "\niterations, " << r.iterations << "\n";
  for (std::size_t i = 0; i < r.seeds.size(); ++i)
    std::cout << "seed " << r.seeds[i].name << " " << ints(r.seeds[i].z) << ", label " << r.run.same_orbit[i] + 1
              << " points " << r.per_label[i] << "\n";
  for (const auto& l : r.layers) {
    std::vector<std::string> xi;
    for (const auto& q : l.xi) xi.push_back(to_string(q));
    std::cout << "layer [" << join(xi, " ") << "], " << l.orbits << " orbits, " << l.reached << "/" << l.points
              << "\n";
  }
  if (!dump.empty()) {
    std::ofstream os(dump);
    if (!os) throw PreconditionError("cannot write " + dump);
    os << "# ietlab orbit-dump v1\nlabel, step, z0, z1, z2\n";
    Slab slab(b.model, W);
    std::vector<std::int64_t> X(b.model.n);
    for (std::size_t i = 0; i < slab.size(); ++i) {
      if (r.run.label[i] < 0) continue;
      slab.point(i, X.data());
      os << r.run.same_orbit[r.run.label[i]] + 1 << ", " << r.run.step[i];
      for (auto c : X) os << ", " << c;
      os << "\n";
    }
  }
  std::cerr << "E2*: " << r.periodic << "/" << r.samples << " sampled points have eventually periodic codes (depth <= "
            << r.max_depth_used << "); " << r.reached << "/" << r.window_points << " window points reached by "
            << r.labels << " discontinuity orbits\n";
  return r.pass() ? 0 : kCheck;
}

int cmd_density(const std::string& model, int k, long radius, const std::string& a, const std::string& bnd) {
  BuiltExample b = load_model(model, k);
  const FieldPtr& K = b.model.iet.field();
  FieldElement lo = parse_point(K, a), hi = parse_point(K, bnd);
  DensityEstimate d = density_estimate(b.model, {{lo, hi}}, radius);
  header("density", "radius, count, estimate, estimate_approx, interval_length");
  std::cout << d.k << ", " << d.count << ", " << to_string(d.estimate) << ", " << approx(d.estimate.get_d()) << ", "
            << approx((hi - lo).to_double()) << "\n";
  std::cerr << b.example.name << ": density of [" << approx(lo.to_double()) << ", " << approx(hi.to_double())
            << ") at radius " << radius << " is " << approx(d.estimate.get_d()) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interval exchange transformations over number fields"};
  app.require_subcommand(1);
  Bindings bind;
  app.add_option("--config", bind.config, "key = value file; command line flags take precedence")
      ->check(CLI::ExistingFile);

  int n = 4, lmax = 8, threads = 1, k = 2, depth = 512, jmin = 10, samples = 100;
  std::string cls = "2", what, file, out, model = "e2star", mode, x, code, mask, ks = "1,2,3,4,5,6,7", rules,
              layers, dump, a = "0", bnd = "1/2";
  long D = 40, d = 1, W = 20, radius = 50;
  long long T = 10000000, steps = 1000000, memory = 1LL << 31, cap = 10000000, layer_cap = 100000;
  unsigned seed = 1;

  auto* survey = app.add_subcommand("survey", "Rauzy class census of primitive cycles");
  survey->add_option("N", n, "number of intervals")->required()->check(CLI::Range(2, 7));
  survey->add_option("CLASS", cls, "class index (1-based) or all")->required();
  survey->add_option("LMAX", lmax, "maximal cycle length")->required()->check(CLI::PositiveNumber);
  bind.add(survey, "--threads", "threads", threads, "worker threads");

  auto* build = app.add_subcommand("build", "Build a published example and cross-check it");
  build->add_option("WHAT", what, "quartic | e2star | ek | cycle")
      ->required()
      ->check(CLI::IsMember({"quartic", "e2star", "ek", "cycle"}));
  build->add_option("ARG", file, "K for ek, PERM:LABELS or FILE for cycle");
  bind.add(build, "--out", "out", out, "write a model file usable as MODEL");

  auto* drift = app.add_subcommand("drift", "Drift vector of a model");
  drift->add_option("MODEL", model, "example id or model file")->required();
  bind.add(drift, "--k", "k", k, "k for E_k");

  auto* vershik = app.add_subcommand("vershik", "Vershik coding of a self-similar model");
  vershik->add_option("MODE", mode, "encode | decode")->required()->check(CLI::IsMember({"encode", "decode"}));
  bind.add(vershik, "--model", "model", model, "example id or model file");
  bind.add(vershik, "--x", "x", x, "point as power-basis coordinates, e.g. 1/3,0,1");
  bind.add(vershik, "--code", "code", code, "code (t;T;r:l,...)");
  bind.add(vershik, "--depth", "depth", depth, "depth cap");

  auto* fill = app.add_subcommand("lattice-fill", "Fill C_D with orbits of C_d for E_k");
  bind.add(fill, "--k", "k", k, "k");
  bind.add(fill, "--D", "D", D, "size of the cube to fill");
  bind.add(fill, "--d", "d", d, "size of the seed cube");
  bind.add(fill, "--T", "T_cap", T, "iteration cap per seed");
  bind.add(fill, "--memory", "memory", memory, "memory budget in bytes");
  bind.add(fill, "--mask", "mask", mask, "write the run-length encoded coverage mask");

  auto* escape = app.add_subcommand("escape-rate", "Escape exponent of an orbit");
  bind.add(escape, "--model", "model", model, "example id or model file");
  bind.add(escape, "--k", "k", k, "k for E_k");
  bind.add(escape, "--x", "x", x, "start point (default: fixed point of the substitution)");
  bind.add(escape, "--steps", "steps", steps, "number of steps");
  bind.add(escape, "--jmin", "jmin", jmin, "first checkpoint 2^jmin used in the fit");

  auto* vtable = app.add_subcommand("v-table", "Escape exponents v for E_k");
  bind.add(vtable, "--k", "k_list", ks, "comma separated k values");
  bind.add(vtable, "--rules", "rules", rules, "write the derived substitutions");

  auto* prop13 = app.add_subcommand("prop13", "Finite decomposition evidence for E2*");
  bind.add(prop13, "--W", "W", W, "window size");
  bind.add(prop13, "--samples", "samples", samples, "number of sampled field points");
  bind.add(prop13, "--cap", "cap", cap, "iteration cap per discontinuity orbit");
  bind.add(prop13, "--depth", "depth", depth, "Vershik depth cap");
  bind.add(prop13, "--seed", "seed", seed, "sampling seed");
  bind.add(prop13, "--layers", "layers", layers, "extra layers, e.g. \"0 1/2 0; 1/3 1/3 0\"");
  bind.add(prop13, "--layer-cap", "layer_cap", layer_cap, "iteration cap per point on extra layers");
  bind.add(prop13, "--dump", "dump", dump, "write the labelled window points");

  auto* density = app.add_subcommand("density", "Density of an interval among lattice points");
  bind.add(density, "--model", "model", model, "example id or model file");
  bind.add(density, "--k", "k", k, "k for E_k");
  bind.add(density, "--radius", "radius", radius, "max |m_i|");
  bind.add(density, "--a", "a", a, "left end, power-basis coordinates");
  bind.add(density, "--b", "b", bnd, "right end, power-basis coordinates");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    bind.apply();
    if (*survey) return cmd_survey(n, cls, lmax, threads);
    if (*build) {
      if (what == "ek") k = file.empty() ? k : std::stoi(file);
      return cmd_build(what, k, what == "cycle" ? file : "", out);
    }
    if (*drift) return cmd_drift(model, k);
    if (*vershik) return cmd_vershik(mode, model, k, x, code, depth);
    if (*fill) return cmd_lattice_fill(static_cast<int>(k), D, d, T, mask, memory);
    if (*escape) return cmd_escape(model, k, x, steps, jmin);
    if (*vtable) return cmd_vtable(ks, rules);
    if (*prop13) return cmd_prop13(W, samples, cap, depth, seed, layers, layer_cap, dump);
    if (*density) return cmd_density(model, k, radius, a, bnd);
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return kCheck;
  }
  return kUsage;
}
