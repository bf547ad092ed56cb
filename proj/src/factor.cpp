#include "ietlab/factor.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>

namespace ietlab {

namespace {

using cld = std::complex<long double>;

std::vector<Integer> positive_divisors(const Integer& n) {
  Integer m = abs(n);
  std::vector<Integer> out;
  if (m == 0) return out;
  if (!m.fits_ulong_p() || m > Integer("1000000000000")) {
    out.push_back(1);
    out.push_back(m);
    return out;
  }
  unsigned long v = m.get_ui();
  for (unsigned long d = 1; d * d <= v; ++d) {
    if (v % d == 0) {
      out.emplace_back(d);
      if (d * d != v) out.emplace_back(v / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

long double l2_norm(const IntPoly& p) {
  long double s = 0;
  for (const auto& c : p.coeffs()) {
    long double v = std::strtold(c.get_str().c_str(), nullptr);
    s += v * v;
  }
  return std::sqrt(s);
}

long double binom(int n, int k) {
  long double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Irreducible factors of a squarefree primitive polynomial.
std::vector<IntPoly> split_squarefree(IntPoly g) {
  std::vector<IntPoly> out;
  if (g.degree() <= 1) {
    if (g.degree() == 1) out.push_back(g.primitive_part());
    return out;
  }
  std::vector<cld> roots = complex_roots(g);
  const long double eps = std::numeric_limits<long double>::epsilon();

  bool progress = true;
  while (progress && g.degree() >= 2) {
    progress = false;
    const int n = g.degree();
    // Mignotte: a factor of degree s has |h_j| <= C(s, j) * ||g||_2.
    const long double norm = l2_norm(g);
    std::vector<int> partner(n, -1);
    for (int i = 0; i < n; ++i) {
      if (roots[i].imag() == 0) {
        partner[i] = i;
        continue;
      }
      long double best = 1e300L;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        long double d = std::abs(roots[j] - std::conj(roots[i]));
        if (d < best) {
          best = d;
          partner[i] = j;
        }
      }
    }
    std::vector<Integer> divisors = positive_divisors(g.leading());
    for (int s = 1; s <= n / 2 && !progress; ++s) {
      const long double bound = binom(s, s / 2) * norm * g.leading().get_d();
      if (bound * 1e-12L > 0.1L) throw LimitError("factorization: coefficients too large for numeric recombination");
      std::vector<int> idx(s);
      for (int i = 0; i < s; ++i) idx[i] = i;
      while (true) {
        bool closed = true;
        for (int i : idx)
          if (std::find(idx.begin(), idx.end(), partner[i]) == idx.end()) closed = false;
        if (closed) {
          std::vector<cld> c(1, cld(1));
          for (int i : idx) {
            std::vector<cld> nc(c.size() + 1, cld(0));
            for (std::size_t k = 0; k < c.size(); ++k) {
              nc[k + 1] += c[k];
              nc[k] -= c[k] * roots[i];
            }
            c = std::move(nc);
          }
          for (const Integer& lc : divisors) {
            long double l = lc.get_d();
            std::vector<Integer> hc;
            bool ok = true;
            for (const auto& ck : c) {
              long double v = ck.real() * l;
              long double r = std::round(v);
              long double tol = 1e-6L * std::max(1.0L, std::fabs(v)) + 1e3L * eps * bound;
              if (std::fabs(v - r) > std::min(tol, 0.25L) || std::fabs(r) > bound + 1) {
                ok = false;
                break;
              }
              hc.emplace_back(static_cast<long>(0));
              mpz_set_d(hc.back().get_mpz_t(), static_cast<double>(r));
            }
            if (!ok) continue;
            IntPoly h(hc);
            if (h.degree() != s) continue;
            if (!divides(h, g)) continue;
            out.push_back(h.primitive_part());
            g = exact_quotient(g, h.primitive_part()).primitive_part();
            std::vector<cld> rest;
            for (int i = 0; i < n; ++i)
              if (std::find(idx.begin(), idx.end(), i) == idx.end()) rest.push_back(roots[i]);
            roots = std::move(rest);
            progress = true;
            break;
          }
        }
        if (progress) break;
        // next combination
        int k = s - 1;
        while (k >= 0 && idx[k] == n - s + k) --k;
        if (k < 0) break;
        ++idx[k];
        for (int j = k + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
  }
  if (g.degree() >= 1) out.push_back(g.primitive_part());
  return out;
}

}  // namespace

IntPoly Factorization::product() const {
  IntPoly r({1});
  for (const auto& f : factors)
    for (int i = 0; i < f.multiplicity; ++i) r = r * f.poly;
  return r * content;
}

Factorization factor_int_poly(const IntPoly& p) {
  require(!p.is_zero(), "factor_int_poly: zero polynomial");
  if (p.degree() > kMaxFactorDegree) throw LimitError("factor_int_poly: degree beyond support limit 8");
  Factorization out;
  out.content = p.content();
  if (p.leading() < 0) out.content = -out.content;
  IntPoly prim = p.primitive_part();
  for (const auto& [sq, mult] : squarefree_decomposition(prim)) {
    for (auto& f : split_squarefree(sq)) out.factors.push_back({f, mult});
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const Factor& a, const Factor& b) {
    if (a.poly != b.poly) return a.poly < b.poly;
    return a.multiplicity < b.multiplicity;
  });
  if (out.product() != p) throw CheckFailure("factor_int_poly: factors do not reproduce the input");
  return out;
}

bool is_irreducible(const IntPoly& p) {
  if (p.degree() <= 0) return false;
  auto f = factor_int_poly(p);
  return f.factors.size() == 1 && f.factors[0].multiplicity == 1;
}

}  // namespace ietlab
