#include "ietlab/number_field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ietlab/factor.hpp"

namespace ietlab {

namespace {

struct Interval {
  Rational lo, hi;
};

Interval imul(const Interval& a, const Interval& b) {
  Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

// Enclosure of sum_k c_k t^k for t in [lo, hi].
Interval horner(const std::vector<Rational>& c, const Rational& lo, const Rational& hi) {
  Interval acc{c.back(), c.back()};
  Interval t{lo, hi};
  for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k) {
    acc = imul(acc, t);
    acc.lo += c[k];
    acc.hi += c[k];
  }
  return acc;
}

}  // namespace

// ---------------------------------------------------------------- NumberField

NumberField::NumberField(const RealAlgebraic& gen, std::string name)
    : gen_(gen), name_(std::move(name)), n_(gen.degree()) {
  const IntPoly& f = gen_.minpoly();
  require(is_irreducible(f) || f.degree() > kMaxFactorDegree, "NumberField: minpoly must be irreducible");
  // Reductions of x^n, ..., x^{2n-2}.
  std::vector<Rational> cur(n_);
  Rational a = f.leading();
  for (int i = 0; i < n_; ++i) cur[i] = Rational(-f.coeff(i)) / a;
  for (int k = 0; k <= n_ - 2; ++k) {
    xpow_.push_back(cur);
    std::vector<Rational> nxt(n_);
    for (int i = n_ - 1; i >= 1; --i) nxt[i] = cur[i - 1];
    for (int i = 0; i < n_; ++i) nxt[i] += cur[n_ - 1] * xpow_[0][i];
    cur = std::move(nxt);
  }
  fine_ = gen_.refined_to(Rational(1) / Rational(Integer(1) << 128));
  long double t = gen_.approx_ld();
  long double p = 1;
  for (int k = 0; k < n_; ++k) {
    pow_d_.push_back(static_cast<double>(p));
    pow_err_.push_back(std::fabs(static_cast<double>(p)) * 0x1p-50 + 1e-300);
    p *= t;
  }
}

FieldPtr NumberField::create(const RealAlgebraic& generator, std::string name) {
  return FieldPtr(new NumberField(generator, std::move(name)));
}

bool NumberField::same_as(const NumberField& o) const {
  if (this == &o) return true;
  return minpoly() == o.minpoly() && compare(gen_, o.gen_) == 0;
}

std::vector<Rational> NumberField::mul(const std::vector<Rational>& a, const std::vector<Rational>& b) const {
  std::vector<Rational> prod(2 * n_ - 1);
  for (int i = 0; i < n_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < n_; ++j)
      if (b[j] != 0) prod[i + j] += a[i] * b[j];
  }
  std::vector<Rational> r(prod.begin(), prod.begin() + n_);
  for (int k = 0; k + n_ < 2 * n_ - 1; ++k) {
    const Rational& c = prod[n_ + k];
    if (c == 0) continue;
    for (int i = 0; i < n_; ++i) r[i] += c * xpow_[k][i];
  }
  return r;
}

std::vector<Rational> NumberField::inv(const std::vector<Rational>& a) const {
  RatPoly pa(a);
  require(!pa.is_zero(), "division by zero field element");
  ExtGcd e = ext_gcd(pa, minpoly().to_rat());
  require(e.g.degree() == 0, "field element not invertible");
  RatPoly s = RatPoly::divmod(e.s, minpoly().to_rat()).second;
  std::vector<Rational> r(n_);
  for (int i = 0; i < n_; ++i) r[i] = s.coeff(i);
  return r;
}

double NumberField::approx(const std::vector<Rational>& a) const {
  double v = 0, mag = 0, err = 0;
  bool ok = true;
  for (int k = 0; k < n_; ++k) {
    if (a[k] == 0) continue;
    double c = a[k].get_d();
    if (!std::isfinite(c) || std::fabs(c) > 1e250) {
      ok = false;
      break;
    }
    v += c * pow_d_[k];
    mag += std::fabs(c * pow_d_[k]);
    err += std::fabs(c) * pow_err_[k];
  }
  err += mag * (4 * n_ + 8) * 0x1p-53;
  if (ok && (err <= 1e-15 * std::fabs(v) || mag < 1e-300)) return v;
  // Cancellation: evaluate on a shrinking rational enclosure of the generator.
  RealAlgebraic g = fine_;
  Rational width = g.hi() - g.lo();
  while (true) {
    Interval e = horner(a, g.lo(), g.hi());
    Rational w = e.hi - e.lo;
    Rational m = std::max(abs_q(e.lo), abs_q(e.hi));
    if (w * (Integer(1) << 60) <= m || w == 0) return Rational((e.lo + e.hi) / 2).get_d();
    if (n_ == 1) return a[0].get_d();
    width /= Rational(Integer(1) << 64);
    g = g.refined_to(width);
  }
}

int NumberField::sign(const std::vector<Rational>& a) const {
  bool zero = true;
  for (const auto& x : a)
    if (x != 0) zero = false;
  if (zero) return 0;
  double v = 0, mag = 0, err = 0;
  bool ok = true;
  for (int k = 0; k < n_; ++k) {
    if (a[k] == 0) continue;
    double c = a[k].get_d();
    if (!std::isfinite(c) || std::fabs(c) > 1e250 || std::fabs(c) < 1e-250) {
      ok = false;
      break;
    }
    v += c * pow_d_[k];
    mag += std::fabs(c * pow_d_[k]);
    err += std::fabs(c) * pow_err_[k];
  }
  if (ok) {
    err += mag * (4 * n_ + 8) * 0x1p-53;
    if (v > 2 * err) return 1;
    if (v < -2 * err) return -1;
  }
  return exact_sign(a);
}

int NumberField::exact_sign(const std::vector<Rational>& a) const {
  if (n_ == 1) return sgn(a[0]);
  RealAlgebraic g = fine_;
  Rational width = g.hi() - g.lo();
  while (true) {
    Interval e = horner(a, g.lo(), g.hi());
    if (e.lo > 0) return 1;
    if (e.hi < 0) return -1;
    width /= Rational(Integer(1) << 64);
    g = g.refined_to(width);
  }
}

// ---------------------------------------------------------------- FieldElement

FieldElement::FieldElement(FieldPtr field, std::vector<Rational> coords)
    : field_(std::move(field)), c_(std::move(coords)) {
  require(field_ != nullptr, "FieldElement: null field");
  require(static_cast<int>(c_.size()) == field_->degree(), "FieldElement: coordinate count != degree");
  for (auto& q : c_) q.canonicalize();
}

FieldElement::FieldElement(FieldPtr field, const Rational& q) : field_(std::move(field)) {
  require(field_ != nullptr, "FieldElement: null field");
  c_.assign(field_->degree(), Rational(0));
  c_[0] = q;
  c_[0].canonicalize();
}

FieldElement FieldElement::generator(FieldPtr field) {
  std::vector<Rational> c(field->degree(), Rational(0));
  if (field->degree() == 1) {
    c[0] = field->generator().rational_value();
  } else {
    c[1] = 1;
  }
  return FieldElement(field, std::move(c));
}

void FieldElement::check_same(const FieldElement& o) const {
  require(field_ && o.field_, "FieldElement: uninitialized operand");
  if (field_ != o.field_ && !field_->same_as(*o.field_))
    throw PreconditionError("FieldElement: incompatible fields");
}

bool FieldElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q == 0; });
}

bool FieldElement::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

int FieldElement::sign() const { return field_->sign(c_); }

double FieldElement::to_double() const { return field_->approx(c_); }

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same(o);
  FieldElement r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
  return r;
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same(o);
  FieldElement r = *this;
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
  return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  check_same(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  check_same(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  for (auto& q : r.c_) q = -q;
  return r;
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same(o);
  return FieldElement(field_, field_->mul(c_, o.c_));
}

FieldElement FieldElement::operator*(const Rational& q) const {
  Rational c = q;
  c.canonicalize();
  FieldElement r = *this;
  for (auto& x : r.c_) x *= c;
  return r;
}

FieldElement FieldElement::inverse() const { return FieldElement(field_, field_->inv(c_)); }

FieldElement FieldElement::operator/(const FieldElement& o) const {
  check_same(o);
  if (o.is_rational()) {
    require(o.c_[0] != 0, "division by zero field element");
    return *this * Rational(1 / o.c_[0]);
  }
  return *this * o.inverse();
}

FieldElement FieldElement::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElement r(field_, Rational(1)), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

bool FieldElement::operator==(const FieldElement& o) const {
  check_same(o);
  return c_ == o.c_;
}

Integer FieldElement::floor() const {
  double d = to_double();
  Integer k = std::isfinite(d) ? floor_q(from_double(std::floor(d))) : Integer(0);
  while (compare(*this, FieldElement(field_, Rational(k))) < 0) k -= 1;
  while (compare(*this, FieldElement(field_, Rational(k + 1))) >= 0) k += 1;
  return k;
}

std::string FieldElement::to_string(const char* var) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const Rational& q = c_[i];
    if (q == 0) continue;
    Rational m = abs_q(q);
    if (first) {
      if (q < 0) os << '-';
    } else {
      os << (q < 0 ? " - " : " + ");
    }
    if (m != 1 || i == 0) os << m.get_str();
    if (i >= 1) os << var;
    if (i >= 2) os << '^' << i;
    first = false;
  }
  if (first) os << '0';
  return os.str();
}

std::string FieldElement::coords_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? ", " : "") << c_[i].get_str();
  os << ')';
  return os.str();
}

int compare(const FieldElement& a, const FieldElement& b) { return (a - b).sign(); }

int compare(const FieldElement& a, const RealAlgebraic& b) { return compare(to_real_algebraic(a), b); }

RatMatrix power_basis_mult_matrix(const FieldElement& x) {
  const int n = x.field()->degree();
  RatMatrix m(n, n);
  std::vector<Rational> e(n, Rational(0));
  for (int j = 0; j < n; ++j) {
    std::fill(e.begin(), e.end(), Rational(0));
    e[j] = 1;
    auto col = x.field()->mul(x.coords(), e);
    for (int i = 0; i < n; ++i) m(i, j) = col[i];
  }
  return m;
}

IntPoly min_poly(const FieldElement& x) {
  if (x.is_rational()) {
    const Rational& q = x.coords()[0];
    return IntPoly(std::vector<Integer>{-q.get_num(), q.get_den()});
  }
  RatMatrix m = power_basis_mult_matrix(x);
  const std::size_t n = m.rows();
  Integer D = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) D = lcm_z(D, m(i, j).get_den());
  IntMatrix dm(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) dm(i, j) = Rational(m(i, j) * D).get_num();
  IntPoly cp = charpoly(dm);  // in y = D t
  std::vector<Rational> c(n + 1);
  Rational Dp = 1;
  for (std::size_t k = 0; k <= n; ++k) {
    c[k] = Rational(cp.coeff(static_cast<int>(k))) * Dp;
    Dp *= D;
  }
  IntPoly full = RatPoly(c).to_primitive_int();
  return squarefree_part(full);
}

RealAlgebraic to_real_algebraic(const FieldElement& x) {
  IntPoly m = min_poly(x);
  if (m.degree() == 1) return RealAlgebraic(x.coords()[0]);
  auto chain = sturm_chain(m);
  RealAlgebraic g = x.field()->generator();
  Rational width = Rational(1) / Rational(Integer(1) << 32);
  while (true) {
    g = g.refined_to(width);
    Interval e = horner(x.coords(), g.lo(), g.hi());
    if (e.lo < e.hi && m.sign_at(e.lo) != 0 && m.sign_at(e.hi) != 0 && count_roots(chain, e.lo, e.hi) == 1)
      return RealAlgebraic(m, e.lo, e.hi);
    width /= Rational(Integer(1) << 32);
  }
}

std::vector<std::vector<FieldElement>> field_nullspace(std::vector<std::vector<FieldElement>> a) {
  if (a.empty()) return {};
  const std::size_t r = a.size(), c = a[0].size();
  const FieldPtr& K = a[0][0].field();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < c && row < r; ++col) {
    std::size_t p = row;
    while (p < r && a[p][col].is_zero()) ++p;
    if (p == r) continue;
    std::swap(a[row], a[p]);
    FieldElement inv = a[row][col].inverse();
    for (std::size_t j = 0; j < c; ++j) a[row][j] = a[row][j] * inv;
    for (std::size_t i = 0; i < r; ++i) {
      if (i == row || a[i][col].is_zero()) continue;
      FieldElement f = a[i][col];
      for (std::size_t j = 0; j < c; ++j) a[i][j] -= f * a[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  std::vector<std::vector<FieldElement>> basis;
  for (std::size_t f = 0; f < c; ++f) {
    if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
    std::vector<FieldElement> v(c, FieldElement(K, Rational(0)));
    v[f] = FieldElement(K, Rational(1));
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

FieldElement sum(const std::vector<FieldElement>& v) {
  require(!v.empty(), "sum of empty vector");
  FieldElement s = v[0];
  for (std::size_t i = 1; i < v.size(); ++i) s += v[i];
  return s;
}

}  // namespace ietlab

namespace ietlab {

std::size_t hash_value(const Integer& z) {
  const mpz_srcptr p = z.get_mpz_t();
  std::size_t h = static_cast<std::size_t>(p->_mp_size) * 0x9e3779b97f4a7c15ULL;
  const int n = std::abs(p->_mp_size);
  for (int i = 0; i < n; ++i) h = (h ^ static_cast<std::size_t>(p->_mp_d[i])) * 0x100000001b3ULL;
  return h;
}

std::size_t FieldElementHash::operator()(const FieldElement& x) const {
  std::size_t h = 1469598103934665603ULL;
  for (const auto& c : x.coords()) {
    h = (h ^ hash_value(c.get_num())) * 0x100000001b3ULL;
    h = (h ^ hash_value(c.get_den())) * 0x100000001b3ULL;
  }
  return h;
}

}  // namespace ietlab
