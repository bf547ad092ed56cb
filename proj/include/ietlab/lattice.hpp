#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ietlab/iet.hpp"
#include "ietlab/module.hpp"

namespace ietlab {

struct LatticeModel {
  IET iet;
  ModuleBasis basis;
  int n = 0;
  IntMatrix projection;                    // n x N, column i = coordinates of tau_i
  std::vector<std::vector<Integer>> left;  // coordinates of the atoms' left endpoints
  std::vector<Integer> total;              // coordinates of the total length
  ModuleNormalization norm;
  // Self-similar data (empty otherwise).
  std::optional<FieldElement> rho;
  std::optional<FieldElement> window;
  std::optional<IntMatrix> R;
  std::optional<Substitution> sigma;

  std::vector<Integer> v(int i) const { return projection.col(i); }
};

// Throws PreconditionError when a length or translation is not in the module.
// With rho, also checks self-similarity on [window, window + rho total) and
// R * projection == projection * M_sigma (CheckFailure otherwise).
LatticeModel build_lattice_model(const IET& e, const ModuleBasis& basis,
                                 const std::optional<FieldElement>& rho = std::nullopt,
                                 const std::optional<FieldElement>& window = std::nullopt);

struct Drift {
  std::vector<FieldElement> components;
  bool zero = false;
  bool forced_nonzero = false;  // n >= N - 1
};
Drift drift_vector(const LatticeModel& m);

// Point xi + z of the layer xi (coordinates of xi in [0, 1)).
struct LatticePoint {
  std::vector<Rational> xi;
  std::vector<Integer> z;
};

FieldElement to_field(const LatticeModel& m, const LatticePoint& p);
LatticePoint layer_of(const ModuleBasis& basis, const FieldElement& x);
// Fractional parts of R xi.
std::vector<Rational> scale_layer(const IntMatrix& R, const std::vector<Rational>& xi);
// Least t >= 1 with R^t xi = xi mod 1.
long order_of(const IntMatrix& R, const std::vector<Rational>& xi);

LatticePoint psi_apply(const LatticeModel& m, const LatticePoint& p, int* atom = nullptr);

// Integer orbit kernel. A point of the layer with denominator `den` is stored as
// X = den * (xi + z). Atoms are chosen from a double evaluation with a certified
// error bound; ambiguous cases fall back to exact arithmetic.
class LatticeKernel {
 public:
  LatticeKernel(const LatticeModel& m, bool backward = false, std::int64_t den = 1);
  int dim() const { return n_; }
  std::int64_t den() const { return den_; }
  // Applies psi (or its inverse) in place; returns the atom index.
  int step(std::int64_t* X) const;
  double value(const std::int64_t* X) const;
  // Exact sign of (X/den - c) where c has integer coordinates C.
  int sign_minus(const std::int64_t* X, const std::vector<Integer>& C) const;
  long exact_fallbacks() const { return fallbacks_; }
  const IET& map() const { return map_; }

 private:
  int atom_exact(const std::int64_t* X) const;
  const LatticeModel* model_;
  IET map_;
  int n_, N_;
  std::int64_t den_;
  std::vector<double> nu_, nu_err_;
  std::vector<std::int64_t> shift_;  // N x n, already scaled by den
  mutable long fallbacks_ = 0;
};

struct OrbitSummary {
  LatticePoint end;
  std::vector<long> counts;   // symbol counts
  Integer max_norm = 0;       // max over the orbit of |z_k - z_0|
  long exact_fallbacks = 0;
};
// k steps of psi from p; visitor(step, z - z0) is called after every step if given.
OrbitSummary psi_orbit(const LatticeModel& m, const LatticePoint& p, long k,
                       const std::function<void(long, const std::vector<std::int64_t>&)>& visitor = nullptr);

// Checks z_k - z_0 - k S = pi D_k exactly at every step; returns the number of steps checked.
long check_drift_ledger(const LatticeModel& m, const FieldElement& x, long k);

struct DensityEstimate {
  long k = 0;
  long count = 0;
  Rational estimate;
};
// Points of L' with |m_i| <= k whose representative in [0, 1) lies in the
// union of the half-open intervals [a_j, b_j).
DensityEstimate density_estimate(const LatticeModel& m,
                                 const std::vector<std::pair<FieldElement, FieldElement>>& intervals, long k);
// Same with an arbitrary exact predicate on the representative.
DensityEstimate density_estimate(const LatticeModel& m, const std::function<bool(const FieldElement&)>& pred,
                                 long k);

struct LiouvilleResult {
  long double abs_x = 0;
  Integer norm_z = 0;
  long double bound = 0;    // e^{-c(n-1)}
  long double value = 0;    // |x| ||z||^c
  long double c = 0;
  bool pass = false;
};
// Requires the power basis 1, lambda, ..., lambda^{n-1}.
LiouvilleResult liouville_check(const ModuleBasis& basis, const FieldElement& x);

struct LiouvilleSweep {
  long points = 0;          // nonzero points examined
  long double min_ratio = 0;  // min of |x| ||z||^c / bound
  std::vector<long> argmin;
  bool pass = false;
};
// All nonzero z with ||z|| <= radius whose value is within 2 of zero on the first
// coordinate (others satisfy the bound trivially); power basis only.
LiouvilleSweep liouville_sweep(const ModuleBasis& basis, long radius);

}  // namespace ietlab
