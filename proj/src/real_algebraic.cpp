#include "ietlab/real_algebraic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ietlab/factor.hpp"

namespace ietlab {

namespace {

IntPoly linear_minpoly(const Rational& q) {
  // den * x - num
  return IntPoly(std::vector<Integer>{-q.get_num(), q.get_den()});
}

// Half of the interval containing the root.
void bisect(const IntPoly& p, Rational& lo, Rational& hi) {
  Rational mid = (lo + hi) / 2;
  int sm = p.sign_at(mid);
  int sl = p.sign_at(lo);
  if (sm == 0) {
    lo = hi = mid;
  } else if (sl * sm < 0) {
    hi = mid;
  } else {
    lo = mid;
  }
}

std::vector<std::pair<Rational, Rational>> isolate_irreducible(const IntPoly& f) {
  std::vector<std::pair<Rational, Rational>> out;
  auto chain = sturm_chain(f);
  Rational B = cauchy_bound(f);
  struct Item {
    Rational lo, hi;
    int count;
  };
  std::vector<Item> stack;
  int total = count_roots(chain, -B, B);
  if (total > 0) stack.push_back({-B, B, total});
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    if (it.count == 1) {
      out.emplace_back(it.lo, it.hi);
      continue;
    }
    Rational mid = (it.lo + it.hi) / 2;
    int left = count_roots(chain, it.lo, mid);
    if (left > 0) stack.push_back({it.lo, mid, left});
    if (it.count - left > 0) stack.push_back({mid, it.hi, it.count - left});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

RealAlgebraic::RealAlgebraic(const Rational& q) : minpoly_(linear_minpoly(q)), lo_(q), hi_(q) {}

RealAlgebraic::RealAlgebraic(IntPoly minpoly, Rational lo, Rational hi)
    : minpoly_(minpoly.primitive_part()), lo_(std::move(lo)), hi_(std::move(hi)) {
  require(minpoly_.degree() >= 1, "RealAlgebraic: minpoly must have positive degree");
  if (minpoly_.degree() == 1) {
    Rational r(-minpoly_.coeff(0), minpoly_.coeff(1));
    r.canonicalize();
    require(lo_ <= r && r <= hi_, "RealAlgebraic: interval misses the rational root");
    lo_ = hi_ = r;
    return;
  }
  require(lo_ < hi_, "RealAlgebraic: empty interval");
  require(minpoly_.sign_at(lo_) != 0 && minpoly_.sign_at(hi_) != 0, "RealAlgebraic: endpoint is a root");
  auto chain = sturm_chain(minpoly_);
  require(count_roots(chain, lo_, hi_) == 1, "RealAlgebraic: interval does not isolate one root");
}

Rational RealAlgebraic::rational_value() const {
  require(is_rational(), "rational_value of irrational number");
  return lo_;
}

RealAlgebraic RealAlgebraic::refined() const {
  if (is_rational()) return *this;
  Rational lo = lo_, hi = hi_;
  bisect(minpoly_, lo, hi);
  return RealAlgebraic(minpoly_, lo, hi, Unchecked{});
}

RealAlgebraic RealAlgebraic::refined_to(const Rational& width) const {
  if (is_rational()) return *this;
  Rational lo = lo_, hi = hi_;
  while (hi - lo > width) bisect(minpoly_, lo, hi);
  return RealAlgebraic(minpoly_, lo, hi, Unchecked{});
}

long double RealAlgebraic::approx_ld() const {
  Rational lo = lo_, hi = hi_;
  if (!is_rational()) {
    const Rational tiny = Rational(1) / Rational(Integer(1) << 1000);
    while (true) {
      Rational w = hi - lo;
      Rational m = std::max(abs_q(lo), abs_q(hi));
      if (w * (Integer(1) << 68) <= m || w < tiny) break;
      bisect(minpoly_, lo, hi);
    }
  }
  Rational mid = (lo + hi) / 2;
  if (mid == 0) return 0;
  Integer num = abs(mid.get_num()), den = mid.get_den();
  long shift = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
               static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)) - 70;
  if (shift > 0)
    den <<= shift;
  else
    num <<= -shift;
  Integer q = num / den;
  long double v = std::ldexp(std::strtold(q.get_str().c_str(), nullptr), static_cast<int>(shift));
  return sgn(mid) < 0 ? -v : v;
}

double RealAlgebraic::approx() const { return static_cast<double>(approx_ld()); }

int RealAlgebraic::sign() const { return compare(*this, Rational(0)); }

std::string RealAlgebraic::to_string() const {
  std::ostringstream os;
  os << "root of " << minpoly_.to_list() << " in [" << lo_.get_str() << ", " << hi_.get_str() << "]";
  return os.str();
}

int compare(const RealAlgebraic& a, const Rational& q) {
  if (a.is_rational()) {
    int c = cmp(a.rational_value(), q);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  RealAlgebraic r = a;
  while (true) {
    if (r.hi() <= q) return -1;
    if (r.lo() >= q) return 1;
    r = r.refined();
  }
}

int compare(const RealAlgebraic& a, const RealAlgebraic& b) {
  if (a.is_rational()) return -compare(b, a.rational_value());
  if (b.is_rational()) return compare(a, b.rational_value());
  RealAlgebraic x = a, y = b;
  const bool same_poly = a.minpoly() == b.minpoly();
  std::vector<RatPoly> chain;
  if (same_poly) chain = sturm_chain(a.minpoly());
  while (true) {
    if (x.hi() <= y.lo()) return -1;
    if (y.hi() <= x.lo()) return 1;
    if (same_poly) {
      Rational lo = std::max(x.lo(), y.lo());
      Rational hi = std::min(x.hi(), y.hi());
      // The shared root must lie in the overlap, which holds at most one root.
      if (lo < hi && count_roots(chain, lo, hi) == 1) return 0;
    }
    x = x.refined();
    y = y.refined();
  }
}

std::vector<RealAlgebraic> isolate_real_roots(const IntPoly& p) {
  require(!p.is_zero(), "isolate_real_roots: zero polynomial");
  std::vector<RealAlgebraic> out;
  if (p.degree() <= 0) return out;
  Factorization f = factor_int_poly(p);
  for (const auto& fac : f.factors) {
    if (fac.poly.degree() == 1) {
      Rational r(-fac.poly.coeff(0), fac.poly.coeff(1));
      r.canonicalize();
      out.emplace_back(r);
      continue;
    }
    for (auto& [lo, hi] : isolate_irreducible(fac.poly))
      out.push_back(RealAlgebraic(fac.poly, lo, hi).refined_to(Rational(1, 1024)));
  }
  std::sort(out.begin(), out.end(), [](const RealAlgebraic& a, const RealAlgebraic& b) { return compare(a, b) < 0; });
  // Intervals of roots from different factors may overlap; shrink until disjoint.
  for (std::size_t i = 0; i + 1 < out.size(); ++i) {
    while (out[i].hi() >= out[i + 1].lo() && !(out[i].is_rational() && out[i + 1].is_rational())) {
      out[i] = out[i].refined();
      out[i + 1] = out[i + 1].refined();
    }
  }
  return out;
}

RealAlgebraic root_near(const IntPoly& p, double approx) {
  auto roots = isolate_real_roots(p);
  require(!roots.empty(), "root_near: polynomial has no real root");
  std::size_t best = 0;
  double bd = 1e300;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    double d = std::fabs(roots[i].approx() - approx);
    if (d < bd) {
      bd = d;
      best = i;
    }
  }
  return roots[best];
}

RealAlgebraic reciprocal(const RealAlgebraic& x) {
  if (x.is_rational()) {
    require(x.rational_value() != 0, "reciprocal of zero");
    return RealAlgebraic(Rational(1 / x.rational_value()));
  }
  RealAlgebraic r = x;
  while (sgn(r.lo()) * sgn(r.hi()) <= 0) r = r.refined();
  Rational lo = 1 / r.hi(), hi = 1 / r.lo();
  return RealAlgebraic(x.minpoly().reciprocal(), lo, hi);
}

}  // namespace ietlab
