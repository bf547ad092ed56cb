#include "ietlab/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace ietlab {

RealAlgebraic largest_real_eigenvalue(const IntMatrix& m) {
  auto roots = isolate_real_roots(charpoly(m));
  require(!roots.empty(), "matrix has no real eigenvalue");
  return roots.back();
}

std::vector<FieldElement> eigenvector(const RatMatrix& m, const FieldElement& lambda) {
  require(m.rows() == m.cols(), "eigenvector: square matrix required");
  const std::size_t n = m.rows();
  const FieldPtr& K = lambda.field();
  std::vector<std::vector<FieldElement>> a(n, std::vector<FieldElement>(n, FieldElement(K, Rational(0))));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = FieldElement(K, m(i, j));
      if (i == j) a[i][j] -= lambda;
    }
  auto ns = field_nullspace(std::move(a));
  if (ns.size() != 1) throw CheckFailure("eigenvector: eigenspace is not one-dimensional");
  return ns[0];
}

PerronPair perron_pair(const IntMatrix& m) {
  require(m.rows() == m.cols() && m.rows() >= 1, "perron_pair: square matrix required");
  require(is_primitive(m), "perron_pair: matrix is not primitive");
  RealAlgebraic beta = largest_real_eigenvalue(m);
  FieldPtr K = NumberField::create(beta, "Q(beta)");
  FieldElement b = FieldElement::generator(K);
  auto v = eigenvector(to_rat(m), b);
  FieldElement s = sum(v);
  for (auto& x : v) x = x / s;
  for (const auto& x : v)
    if (x.sign() <= 0) throw CheckFailure("perron_pair: eigenvector not positive");
  return {beta, K, v};
}

bool is_self_reciprocal(const IntPoly& p) {
  IntPoly r = p.reciprocal();
  return r == p || r == -p;
}

bool is_unit(const IntPoly& minpoly) {
  IntPoly p = minpoly.primitive_part();
  return p.leading() == 1 && abs(p.coeff(0)) == 1;
}

int roots_inside_unit_disk(const IntPoly& p) {
  require(!p.is_zero(), "roots_inside_unit_disk: zero polynomial");
  for (const auto& f : factor_int_poly(p).factors) {
    if (f.poly.degree() == 1 && abs(f.poly.coeff(0)) == abs(f.poly.coeff(1)))
      throw PreconditionError("roots_inside_unit_disk: root on the unit circle");
    if (f.poly.degree() >= 2 && is_self_reciprocal(f.poly))
      throw PreconditionError("roots_inside_unit_disk: self-reciprocal factor may have unimodular roots");
  }
  // Strip roots at zero; they are inside.
  int zeros = 0;
  while (p.coeff(zeros) == 0) ++zeros;
  IntPoly f(std::vector<Integer>(p.coeffs().begin() + zeros, p.coeffs().end()));
  const int n = f.degree();
  if (n == 0) return zeros;
  // z = (1 + w) / (1 - w) maps the unit disk onto Re w < 0.
  IntPoly g;
  for (int k = 0; k <= n; ++k) {
    if (f.coeff(k) == 0) continue;
    IntPoly term = IntPoly::monomial(f.coeff(k), 0);
    for (int i = 0; i < k; ++i) term = term * IntPoly{1, 1};
    for (int i = k; i < n; ++i) term = term * IntPoly{1, -1};
    g = g + term;
  }
  if (g.degree() != n) throw PreconditionError("roots_inside_unit_disk: root at -1");
  // Routh array; sign changes in the first column count roots with Re w > 0.
  std::vector<std::vector<Rational>> rows(n + 1, std::vector<Rational>(n / 2 + 2, Rational(0)));
  for (int j = 0; 2 * j <= n; ++j) rows[0][j] = g.coeff(n - 2 * j);
  for (int j = 0; 2 * j + 1 <= n; ++j) rows[1][j] = g.coeff(n - 2 * j - 1);
  for (int i = 2; i <= n; ++i) {
    if (rows[i - 1][0] == 0) throw LimitError("roots_inside_unit_disk: singular Routh array");
    for (std::size_t j = 0; j + 1 < rows[i].size(); ++j)
      rows[i][j] = (rows[i - 1][0] * rows[i - 2][j + 1] - rows[i - 2][0] * rows[i - 1][j + 1]) / rows[i - 1][0];
  }
  if (rows[n][0] == 0) throw LimitError("roots_inside_unit_disk: singular Routh array");
  int changes = 0;
  for (int i = 1; i <= n; ++i)
    if (sgn(rows[i][0]) != sgn(rows[i - 1][0])) ++changes;
  return n - changes + zeros;
}

bool is_pisot(const RealAlgebraic& beta) {
  if (compare(beta, Rational(1)) <= 0) return false;
  IntPoly p = beta.minpoly();
  if (p.leading() != 1) return false;
  const int n = p.degree();
  if (n == 1) return true;
  if (is_self_reciprocal(p)) return n == 2;
  return roots_inside_unit_disk(p) == n - 1;
}

std::vector<ModulusInfo> root_moduli(const IntPoly& p) {
  std::vector<ModulusInfo> out;
  for (const auto& fac : factor_int_poly(p).factors) {
    const IntPoly& f = fac.poly;
    auto reals = isolate_real_roots(f);
    for (const auto& r0 : reals) {
      RealAlgebraic r = r0.refined_to(Rational(1) / Rational(Integer(1) << 90));
      long double a = r.lo().get_d(), b = r.hi().get_d();
      long double mlo, mhi;
      if (a >= 0) {
        mlo = a;
        mhi = b;
      } else if (b <= 0) {
        mlo = -b;
        mhi = -a;
      } else {
        mlo = 0;
        mhi = std::max(-a, b);
      }
      mlo = std::nextafter(mlo * (1 - 1e-15L), 0.0L);
      mhi = mhi * (1 + 1e-15L);
      out.push_back({mlo, mhi, std::fabs(r.approx_ld()), true, f, fac.multiplicity});
    }
    if (f.degree() == static_cast<int>(reals.size())) continue;
    auto discs = enclose_roots(f);
    for (std::size_t i = 0; i < discs.size(); ++i)
      for (std::size_t j = i + 1; j < discs.size(); ++j)
        if (std::abs(discs[i].center - discs[j].center) <= discs[i].radius + discs[j].radius)
          throw LimitError("root_moduli: root discs not separated");
    std::size_t nonreal = 0;
    for (const auto& d : discs) {
      if (std::fabs(d.center.imag()) <= d.radius) continue;
      ++nonreal;
      long double m = std::abs(d.center);
      out.push_back({std::max(0.0L, m - d.radius), m + d.radius, m, false, f, fac.multiplicity});
    }
    if (nonreal + reals.size() != static_cast<std::size_t>(f.degree()))
      throw LimitError("root_moduli: could not certify real/non-real split");
  }
  std::sort(out.begin(), out.end(), [](const ModulusInfo& a, const ModulusInfo& b) { return a.value > b.value; });
  return out;
}

}  // namespace ietlab
