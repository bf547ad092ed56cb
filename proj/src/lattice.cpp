#include "ietlab/lattice.hpp"

#include <cmath>
#include <limits>
#include <map>

namespace ietlab {

namespace {

std::vector<Integer> coords_in(const ModuleBasis& b, const FieldElement& x, const char* what) {
  auto c = b.integer_coords(x);
  if (!c) throw PreconditionError(std::string("build_lattice_model: ") + what + " not in the module");
  return *c;
}

Rational frac_q(const Rational& q) { return q - Rational(floor_q(q)); }

constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

LatticeModel build_lattice_model(const IET& e, const ModuleBasis& basis, const std::optional<FieldElement>& rho,
                                 const std::optional<FieldElement>& window) {
  LatticeModel m;
  m.iet = e;
  m.basis = basis;
  m.n = basis.rank();
  m.projection = IntMatrix(m.n, e.size());
  for (int i = 0; i < e.size(); ++i) {
    coords_in(basis, e.lengths()[i], "length");
    auto v = coords_in(basis, e.translations()[i], "translation");
    for (int k = 0; k < m.n; ++k) m.projection(k, i) = v[k];
    m.left.push_back(coords_in(basis, e.left_endpoints()[i], "left endpoint"));
  }
  m.total = coords_in(basis, e.total(), "total length");
  m.norm = module_normalize(basis);
  if (rho) {
    FieldElement a = window ? *window : FieldElement(e.field(), Rational(0));
    SelfSimilarity s = check_self_similar(e, *rho, a);
    if (!s.ok) throw CheckFailure("build_lattice_model: not self-similar (" + s.reason + ")");
    m.rho = rho;
    m.window = a;
    m.sigma = s.sigma;
    m.R = mult_matrix(*rho, basis);
    if (*m.R * m.projection != m.projection * s.sigma.incidence())
      throw CheckFailure("build_lattice_model: R pi != pi M_sigma");
  }
  return m;
}

Drift drift_vector(const LatticeModel& m) {
  Drift d;
  const IET& e = m.iet;
  d.zero = true;
  for (int k = 0; k < m.n; ++k) {
    FieldElement s(e.field(), Rational(0));
    for (int i = 0; i < e.size(); ++i) s += e.lengths()[i] * Rational(m.projection(k, i));
    if (!s.is_zero()) d.zero = false;
    d.components.push_back(std::move(s));
  }
  d.forced_nonzero = m.n >= e.size() - 1;
  if (d.forced_nonzero && d.zero) throw CheckFailure("drift_vector: zero drift with n >= N - 1");
  return d;
}

FieldElement to_field(const LatticeModel& m, const LatticePoint& p) {
  std::vector<Rational> c(m.n);
  for (int k = 0; k < m.n; ++k) c[k] = (p.xi.empty() ? Rational(0) : p.xi[k]) + Rational(p.z[k]);
  return m.basis.element(c);
}

LatticePoint layer_of(const ModuleBasis& basis, const FieldElement& x) {
  auto r = basis.coords(x);
  LatticePoint p;
  for (const auto& q : r) {
    Integer f = floor_q(q);
    p.z.push_back(f);
    p.xi.push_back(q - Rational(f));
  }
  return p;
}

std::vector<Rational> scale_layer(const IntMatrix& R, const std::vector<Rational>& xi) {
  std::vector<Rational> out = to_rat(R) * xi;
  for (auto& q : out) q = frac_q(q);
  return out;
}

long order_of(const IntMatrix& R, const std::vector<Rational>& xi) {
  Integer den = 1;
  for (const auto& q : xi) den = lcm_z(den, q.get_den());
  // At most den^n distinct residues.
  Integer bound = 1;
  for (std::size_t i = 0; i < xi.size(); ++i) bound *= den;
  std::vector<Rational> y = scale_layer(R, xi);
  for (long t = 1;; ++t) {
    if (y == xi) return t;
    if (Integer(t) > bound) throw CheckFailure("order_of: layer orbit not periodic");
    y = scale_layer(R, y);
  }
}

LatticePoint psi_apply(const LatticeModel& m, const LatticePoint& p, int* atom) {
  FieldElement x = to_field(m, p);
  int i = m.iet.atom_of(x);
  LatticePoint q = p;
  for (int k = 0; k < m.n; ++k) q.z[k] += m.projection(k, i);
  if (atom) *atom = i;
  return q;
}

// ---- kernel ----

LatticeKernel::LatticeKernel(const LatticeModel& m, bool backward, std::int64_t den)
    : model_(&m), map_(backward ? m.iet.inverse() : m.iet), n_(m.n), N_(m.iet.size()), den_(den) {
  require(den >= 1, "LatticeKernel: den >= 1");
  for (const auto& nu : m.basis.elements()) {
    double d = nu.to_double();
    nu_.push_back(d);
    nu_err_.push_back(std::fabs(d) * kEps + std::numeric_limits<double>::denorm_min());
  }
  Permutation inv = m.iet.permutation().inverse();
  for (int a = 0; a < N_; ++a) {
    int src = backward ? inv[a] : a;
    for (int k = 0; k < n_; ++k) {
      Integer v = m.projection(k, src) * den;
      if (backward) v = -v;
      shift_.push_back(to_i64(v));
    }
  }
}

double LatticeKernel::value(const std::int64_t* X) const {
  double s = 0;
  for (int k = 0; k < n_; ++k) s += static_cast<double>(X[k]) * nu_[k];
  return s / static_cast<double>(den_);
}

int LatticeKernel::atom_exact(const std::int64_t* X) const {
  ++fallbacks_;
  std::vector<Rational> c(n_);
  for (int k = 0; k < n_; ++k) c[k] = Rational(Integer(std::to_string(X[k])), Integer(std::to_string(den_)));
  for (auto& q : c) q.canonicalize();
  return map_.atom_of(model_->basis.element(c));
}

int LatticeKernel::step(std::int64_t* X) const {
  double s = 0, mag = 0;
  for (int k = 0; k < n_; ++k) {
    double t = static_cast<double>(X[k]) * nu_[k];
    s += t;
    mag += std::fabs(t) + std::fabs(static_cast<double>(X[k])) * nu_err_[k];
  }
  const double d = static_cast<double>(den_);
  const double x = s / d;
  const double err = mag * (n_ + 2) * 2 * kEps / d;
  int a = map_.atom_of_approx(x, err);
  if (a < 0) a = atom_exact(X);
  const std::int64_t* v = &shift_[static_cast<std::size_t>(a) * n_];
  for (int k = 0; k < n_; ++k)
    if (__builtin_add_overflow(X[k], v[k], &X[k])) throw LimitError("LatticeKernel: coordinate overflow");
  return a;
}

int LatticeKernel::sign_minus(const std::int64_t* X, const std::vector<Integer>& C) const {
  double s = 0, mag = 0;
  std::vector<Integer> D(n_);
  bool small = true;
  for (int k = 0; k < n_; ++k) {
    D[k] = Integer(std::to_string(X[k])) - C[k] * den_;
    if (!D[k].fits_slong_p()) small = false;
  }
  if (small) {
    for (int k = 0; k < n_; ++k) {
      double t = static_cast<double>(D[k].get_si()) * nu_[k];
      s += t;
      mag += std::fabs(t) + std::fabs(static_cast<double>(D[k].get_si())) * nu_err_[k];
    }
    if (std::fabs(s) > mag * (n_ + 2) * 2 * kEps + 1e-300) return s > 0 ? 1 : -1;
  }
  std::vector<Rational> c(n_);
  for (int k = 0; k < n_; ++k) c[k] = Rational(D[k]);
  return model_->basis.element(c).sign();
}

OrbitSummary psi_orbit(const LatticeModel& m, const LatticePoint& p, long k,
                       const std::function<void(long, const std::vector<std::int64_t>&)>& visitor) {
  Integer den = 1;
  for (const auto& q : p.xi) den = lcm_z(den, q.get_den());
  FieldElement x0 = to_field(m, p);
  require(x0.sign() >= 0 && x0 < m.iet.total(), "psi_orbit: point outside the slab");
  const std::int64_t d = to_i64(den);
  LatticeKernel ker(m, false, d);
  std::vector<std::int64_t> X(m.n), X0(m.n), disp(m.n);
  for (int j = 0; j < m.n; ++j) {
    Rational xi = p.xi.empty() ? Rational(0) : p.xi[j];
    Rational v = (xi + Rational(p.z[j])) * Rational(den);
    X[j] = to_i64(v.get_num());
  }
  X0 = X;
  OrbitSummary out;
  out.counts.assign(m.iet.size(), 0);
  std::int64_t mx = 0;
  for (long s = 1; s <= k; ++s) {
    out.counts[ker.step(X.data())]++;
    for (int j = 0; j < m.n; ++j) {
      disp[j] = (X[j] - X0[j]) / d;
      mx = std::max<std::int64_t>(mx, std::llabs(disp[j]));
    }
    if (visitor) visitor(s, disp);
  }
  out.max_norm = Integer(std::to_string(mx));
  out.end = p;
  for (int j = 0; j < m.n; ++j) out.end.z[j] = p.z[j] + Integer(std::to_string((X[j] - X0[j]) / d));
  out.exact_fallbacks = ker.exact_fallbacks();
  return out;
}

long check_drift_ledger(const LatticeModel& m, const FieldElement& x, long k) {
  const IET& e = m.iet;
  Drift S = drift_vector(m);
  std::vector<long> s(e.size(), 0);
  std::vector<Integer> dz(m.n, 0);
  FieldElement y = x;
  for (long step = 1; step <= k; ++step) {
    int i = e.atom_of(y);
    y += e.translations()[i];
    s[i]++;
    for (int c = 0; c < m.n; ++c) dz[c] += m.projection(c, i);
    for (int c = 0; c < m.n; ++c) {
      FieldElement rhs = S.components[c] * Rational(step);
      for (int a = 0; a < e.size(); ++a) {
        if (m.projection(c, a) == 0) continue;
        FieldElement D = FieldElement(e.field(), Rational(s[a])) - e.lengths()[a] * Rational(step);
        rhs += D * Rational(m.projection(c, a));
      }
      if (rhs != FieldElement(e.field(), Rational(dz[c])))
        throw CheckFailure("check_drift_ledger: identity fails at step " + std::to_string(step));
    }
  }
  return k;
}

// ---- density ----

namespace {

// Generators of L': w_0 = 1/g, then the remaining reduced basis vectors.
std::vector<FieldElement> lprime_generators(const LatticeModel& m) {
  std::vector<FieldElement> w;
  const IntMatrix& E = m.norm.expand;
  for (int c = 0; c < m.n; ++c) {
    std::vector<Integer> z(m.n);
    for (int r = 0; r < m.n; ++r) z[r] = E(r, c);
    w.push_back(m.basis.element(z));
  }
  return w;
}

template <class Visit>
void for_each_lprime(const LatticeModel& m, long k, Visit&& visit) {
  const long b = to_i64(m.norm.b);
  std::vector<long> mm(m.n, -k);
  for (long m0 = 0; m0 < b; ++m0) {
    std::fill(mm.begin(), mm.end(), -k);
    mm[0] = m0;
    while (true) {
      visit(mm);
      int j = 1;
      while (j < m.n && mm[j] == k) mm[j++] = -k;
      if (j >= m.n) break;
      ++mm[j];
    }
  }
}

Rational normalizer(const LatticeModel& m, long k) {
  Integer den = m.norm.b;
  for (int i = 1; i < m.n; ++i) den *= 2 * k;
  return Rational(1) / Rational(den);
}

}  // namespace

DensityEstimate density_estimate(const LatticeModel& m,
                                 const std::vector<std::pair<FieldElement, FieldElement>>& intervals, long k) {
  require(k >= 1, "density_estimate: k >= 1");
  auto w = lprime_generators(m);
  std::vector<double> wd, we;
  for (const auto& x : w) {
    wd.push_back(x.to_double());
    we.push_back(std::fabs(wd.back()) * kEps);
  }
  std::vector<std::pair<double, double>> iv;
  for (const auto& [a, b] : intervals) iv.push_back({a.to_double(), b.to_double()});
  auto exact_in = [&](const FieldElement& r) {
    for (const auto& [a, b] : intervals)
      if (compare(r, a) >= 0 && compare(r, b) < 0) return true;
    return false;
  };
  DensityEstimate out;
  out.k = k;
  for_each_lprime(m, k, [&](const std::vector<long>& mm) {
    double s = 0, mag = 0;
    for (int j = 0; j < m.n; ++j) {
      double t = static_cast<double>(mm[j]) * wd[j];
      s += t;
      mag += std::fabs(t) + std::fabs(static_cast<double>(mm[j])) * we[j];
    }
    const double err = mag * (m.n + 2) * 2 * kEps + 1e-12;
    double fl = std::floor(s);
    double r = s - fl;
    bool sure = r > err && 1 - r > err;
    bool inside = false;
    if (sure)
      for (const auto& [a, b] : iv) {
        if (std::fabs(r - a) <= err + 1e-12 || std::fabs(r - b) <= err + 1e-12) {
          sure = false;
          break;
        }
        if (r > a && r < b) inside = true;
      }
    if (!sure) {
      FieldElement x(m.iet.field(), Rational(0));
      for (int j = 0; j < m.n; ++j) x += w[j] * Rational(mm[j]);
      x -= FieldElement(m.iet.field(), Rational(x.floor()));
      inside = exact_in(x);
    }
    if (inside) ++out.count;
  });
  out.estimate = Rational(out.count) * normalizer(m, k);
  return out;
}

DensityEstimate density_estimate(const LatticeModel& m, const std::function<bool(const FieldElement&)>& pred,
                                 long k) {
  require(k >= 1, "density_estimate: k >= 1");
  auto w = lprime_generators(m);
  DensityEstimate out;
  out.k = k;
  for_each_lprime(m, k, [&](const std::vector<long>& mm) {
    FieldElement x(m.iet.field(), Rational(0));
    for (int j = 0; j < m.n; ++j) x += w[j] * Rational(mm[j]);
    x -= FieldElement(m.iet.field(), Rational(x.floor()));
    if (pred(x)) ++out.count;
  });
  out.estimate = Rational(out.count) * normalizer(m, k);
  return out;
}

// ---- Liouville ----

namespace {

struct PowerBasisInfo {
  int n;
  long double c, log_bound;
  std::vector<long double> pw;
};

PowerBasisInfo power_basis_info(const ModuleBasis& basis) {
  const FieldPtr& K = basis.field();
  ModuleBasis pb = ModuleBasis::power_basis(K);
  for (int k = 0; k < basis.rank(); ++k)
    require(basis[k] == pb[k], "liouville_check: module must be Z[lambda] with its power basis");
  PowerBasisInfo info;
  info.n = K->degree();
  Integer H = 0;
  for (const auto& a : K->minpoly().coeffs()) H = std::max(H, Integer(abs(a)));
  info.c = info.n + std::log(static_cast<long double>(H.get_d()));
  info.log_bound = -info.c * (info.n - 1);
  long double g = K->generator().approx_ld();
  long double p = 1;
  for (int k = 0; k < info.n; ++k) {
    info.pw.push_back(p);
    p *= g;
  }
  return info;
}

}  // namespace

LiouvilleResult liouville_check(const ModuleBasis& basis, const FieldElement& x) {
  PowerBasisInfo info = power_basis_info(basis);
  auto z = basis.integer_coords(x);
  require(z.has_value(), "liouville_check: x not in the module");
  require(!x.is_zero(), "liouville_check: x = 0");
  LiouvilleResult r;
  r.c = info.c;
  r.norm_z = max_norm(*z);
  r.abs_x = std::fabs(static_cast<long double>(x.to_double()));
  r.bound = std::exp(info.log_bound);
  long double lv = std::log(r.abs_x) + info.c * std::log(static_cast<long double>(r.norm_z.get_d()));
  r.value = std::exp(lv);
  r.pass = lv >= info.log_bound;
  return r;
}

LiouvilleSweep liouville_sweep(const ModuleBasis& basis, long radius) {
  PowerBasisInfo info = power_basis_info(basis);
  const int n = info.n;
  require(n >= 2, "liouville_sweep: degree >= 2");
  LiouvilleSweep out;
  out.min_ratio = std::numeric_limits<long double>::infinity();
  std::vector<long> z(n, -radius);
  z[0] = 0;
  while (true) {
    long double y = 0;
    long zmax = 0;
    for (int k = 1; k < n; ++k) {
      y += z[k] * info.pw[k];
      zmax = std::max(zmax, std::labs(z[k]));
    }
    long base = -std::lround(static_cast<double>(y));
    for (long z0 = base - 2; z0 <= base + 2; ++z0) {
      if (std::labs(z0) > radius) continue;
      long nz = std::max(zmax, std::labs(z0));
      if (nz == 0) continue;
      long double ax = std::fabs(z0 + y);
      if (ax < 1e-12L) {
        std::vector<Integer> zz(n);
        zz[0] = z0;
        for (int k = 1; k < n; ++k) zz[k] = z[k];
        FieldElement x = basis.element(zz);
        if (x.is_zero()) continue;
        ax = std::fabs(static_cast<long double>(x.to_double()));
      }
      ++out.points;
      long double lr = std::log(ax) + info.c * std::log(static_cast<long double>(nz)) - info.log_bound;
      long double ratio = std::exp(std::min(lr, 11000.0L));
      if (ratio < out.min_ratio) {
        out.min_ratio = ratio;
        out.argmin = z;
        out.argmin[0] = z0;
      }
    }
    int j = 1;
    while (j < n && z[j] == radius) z[j++] = -radius;
    if (j >= n) break;
    ++z[j];
  }
  out.pass = out.min_ratio >= 1;
  return out;
}

}  // namespace ietlab
