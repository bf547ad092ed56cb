#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ietlab/examples.hpp"
#include "ietlab/lattice.hpp"
#include "ietlab/rauzy.hpp"
#include "ietlab/vershik.hpp"

namespace ietlab {

struct BuiltExample {
  ExampleIET example;
  LatticeModel model;
  std::vector<std::string> checks;  // cross-validations that passed
};

// Each builder throws CheckFailure when the published data and the
// construction disagree.
BuiltExample build_quartic();
BuiltExample build_e2star();
BuiltExample build_ek(int k);
// Self-similar IET of a primitive Rauzy loop, e.g. "4213" with "01001011".
BuiltExample build_from_cycle(const Permutation& base, const std::string& labels);
// "quartic", "e2star", "ek" (with k), or a cycle "PERM:LABELS".
BuiltExample build_example(const std::string& id, int k = 2);

// Points xi + z of one layer whose value lies in [0, total): rows indexed by
// (z_1..z_{n-1}) in [-box, box]^{n-1}; z_0 is the free coordinate, optionally
// restricted to [-first_bound, first_bound]. Points are handled as
// X = den * (xi + z), as in LatticeKernel.
class Slab {
 public:
  Slab(const LatticeModel& m, long box, long first_bound = -1, const std::vector<Rational>& xi = {});
  std::int64_t den() const { return den_; }
  int dim() const { return n_; }
  long box() const { return box_; }
  std::size_t size() const { return static_cast<std::size_t>(start_.back()); }
  // -1 when X is outside the slab (X must lie in [0, total)).
  long index(const std::int64_t* X) const;
  void point(std::size_t idx, std::int64_t* X) const;
  static std::size_t memory_estimate(int n, long box);

 private:
  int n_;
  long box_, side_;
  std::int64_t den_ = 1;
  std::vector<std::int64_t> off_;  // den * xi
  std::vector<std::int64_t> start_, zmin_;
};

struct OrbitSeed {
  std::vector<std::int64_t> z;
  std::string name;
};

struct OrbitRun {
  std::vector<std::int32_t> label;  // per slab point, -1 if not reached
  std::vector<std::int64_t> step;   // signed step from the seed at first visit
  std::size_t reached = 0;
  long long iterations = 0;          // all seeds, both directions
  long long max_orbit_iterations = 0;  // per seed, both directions
  std::vector<long long> orbit_iterations;
  std::vector<bool> closed;          // orbit found periodic
  std::vector<int> same_orbit;       // smallest seed index found on the same orbit
  std::vector<std::int64_t> extent;  // max |z_i| over all iterates
  long exact_fallbacks = 0;
  bool complete = false;
};

// Iterates every seed forward (cap - cap/2 steps) and backward (cap/2 steps)
// in round-robin chunks; with until_covered, stops once the slab is covered.
// A walker also stops when it lands on a point labelled by another seed.
// Seeds are labelled before any step, so such a meeting is always a forward
// walker entering the backward track of a seed further along the orbit, whose
// own forward walker reaches further: the covered set is the same as without
// stopping, and it grows with cap and with the seed set.
OrbitRun run_orbits(const LatticeModel& m, const Slab& slab, const std::vector<OrbitSeed>& seeds, long long cap,
                    bool until_covered = true, long chunk = 1 << 12);

struct CoverageReport {
  long D = 0, d = 0;
  long long T_cap = 0;
  std::size_t total = 0, reached = 0, seeds = 0;
  long long iterations = 0, max_orbit_iterations = 0;
  std::vector<std::int64_t> extent;
  std::vector<std::vector<std::int64_t>> residual;  // first unreached points
  std::vector<bool> mask;                            // reached, in slab order
  std::size_t memory = 0;
  std::string error;
  bool complete() const { return error.empty() && reached == total; }
};

// C_D: points with max |coordinate| <= D * s, s = 1 / nu_0 (nu_0 rational),
// i.e. the cube on the coordinates used in the published tables. Seeds are
// the points of C_d, each followed for at most T_cap iterations.
CoverageReport lattice_fill(const LatticeModel& m, long D, long d, long long T_cap,
                            std::size_t memory_budget = std::size_t(1) << 31, std::size_t residual_limit = 50);

struct VRow {
  int k = 0;
  std::size_t loop_length = 0;
  ExponentReport report;
  Substitution sigma;
};
// sigma_k from the self-similar 7-interval induced map of E_k on its first interval.
VRow v_row(int k);

struct EscapeCheckpoint {
  long long k = 0;
  double norm = 0;      // ||psi^k(z) - z||
  double envelope = 0;  // max over j <= k
};
struct EscapeFit {
  std::vector<EscapeCheckpoint> checkpoints;  // k = 2^j
  double slope = 0, intercept = 0, residual = 0;
  long exact_fallbacks = 0;
};
// Least squares of log envelope against log k at k = 2^j, j >= jmin. The
// pointwise norm of a recurrent orbit keeps falling back towards zero, so the
// running maximum is the quantity with a clean power law.
EscapeFit escape_fit(const LatticeModel& m, const FieldElement& x, long long steps, int jmin = 10);

// Start of the orbit coded by the fixed point of sigma: a / (1 - rho) for the
// window start a, or, when that is the right end, the point depth levels
// inside it. Throws CheckFailure if the orbit word does not begin with
// sigma^3(j).
FieldElement fixed_point_start(const LatticeModel& m, int depth = 8);

struct LayerCount {
  std::vector<Rational> xi;
  std::size_t points = 0, reached = 0;
  int orbits = 0;  // distinct orbits through the window, seeded from every point
};
struct Prop13Report {
  int samples = 0, periodic = 0, max_depth_used = 0;
  long window = 0;
  std::size_t window_points = 0, reached = 0;
  int labels = 0;  // distinct orbits among the discontinuity points
  std::vector<std::size_t> per_label;
  long long iterations = 0;
  OrbitRun run;
  std::vector<OrbitSeed> seeds;
  std::vector<LayerCount> layers;
  bool pass() const { return periodic == samples && reached == window_points; }
};
// Seeds on the layer xi = 0 are the interior left endpoints of the atoms.
Prop13Report prop13_evidence(const BuiltExample& e2, long W, int samples, long long cap, int depth = 512,
                             unsigned seed = 1, const std::vector<std::vector<Rational>>& layers = {},
                             long long layer_cap = 100000);

// key = value lines, '#' comments.
class Config {
 public:
  static Config parse(const std::string& text);
  static Config load(const std::string& path);
  void set(const std::string& key, const std::string& value) { kv_[key] = value; }
  bool has(const std::string& key) const { return kv_.count(key) > 0; }
  std::string get(const std::string& key, const std::string& fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  const std::map<std::string, std::string>& values() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace ietlab
