#include "ietlab/matrix.hpp"

#include <algorithm>

namespace ietlab {

IntMatrix int_matrix(const std::vector<std::vector<long>>& rows) {
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == m.cols(), "int_matrix: ragged rows");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RatMatrix to_rat(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

Integer det(const IntMatrix& m) {
  require(m.rows() == m.cols(), "det: square matrix required");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j));
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Rational det(const RatMatrix& m) {
  require(m.rows() == m.cols(), "det: square matrix required");
  const std::size_t n = m.rows();
  RatMatrix a = m;
  Rational d = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      d = -d;
    }
    d *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rational f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return d;
}

RatMatrix inverse(const RatMatrix& m) {
  require(m.rows() == m.cols(), "inverse: square matrix required");
  const std::size_t n = m.rows();
  RatMatrix a = m, inv = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) throw PreconditionError("inverse: singular matrix");
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(k, j), a(p, j));
        std::swap(inv(k, j), inv(p, j));
      }
    Rational piv = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      Rational f = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

IntMatrix power(const IntMatrix& m, unsigned k) {
  require(m.rows() == m.cols(), "power: square matrix required");
  IntMatrix r = IntMatrix::identity(m.rows()), b = m;
  while (k) {
    if (k & 1u) r = r * b;
    k >>= 1u;
    if (k) b = b * b;
  }
  return r;
}

IntPoly charpoly(const IntMatrix& a) {
  // Faddeev-LeVerrier; all divisions are exact over Z.
  require(a.rows() == a.cols(), "charpoly: square matrix required");
  const std::size_t n = a.rows();
  std::vector<Integer> c(n + 1);
  c[n] = 1;
  IntMatrix M(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t i = 0; i < n; ++i) M(i, i) += c[n - k + 1];
    M = a * M;
    Integer tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += M(i, i);
    Integer q = -tr;
    mpz_divexact_ui(q.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(k));
    c[n - k] = q;
  }
  return IntPoly(std::move(c));
}

bool is_nonnegative(const IntMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) < 0) return false;
  return true;
}

bool is_primitive(const IntMatrix& m) {
  require(m.rows() == m.cols(), "is_primitive: square matrix required");
  if (!is_nonnegative(m)) return false;
  const std::size_t n = m.rows();
  std::vector<char> b(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b[i * n + j] = m(i, j) > 0;
  const std::size_t w = (n - 1) * (n - 1) + 1;
  std::size_t p = 1;
  while (p < w) {
    std::vector<char> c(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (b[i * n + k])
          for (std::size_t j = 0; j < n; ++j) c[i * n + j] |= b[k * n + j];
    b.swap(c);
    p *= 2;
  }
  return std::all_of(b.begin(), b.end(), [](char x) { return x != 0; });
}

HnfResult hnf_rows(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  IntMatrix H = a, U = IntMatrix::identity(m);
  auto row_op = [&](std::size_t r1, std::size_t r2, const Integer& s, const Integer& t, const Integer& u,
                    const Integer& v) {
    // (r1, r2) <- (s r1 + t r2, u r1 + v r2)
    for (std::size_t j = 0; j < n; ++j) {
      Integer x = H(r1, j), y = H(r2, j);
      H(r1, j) = s * x + t * y;
      H(r2, j) = u * x + v * y;
    }
    for (std::size_t j = 0; j < m; ++j) {
      Integer x = U(r1, j), y = U(r2, j);
      U(r1, j) = s * x + t * y;
      U(r2, j) = u * x + v * y;
    }
  };
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    for (std::size_t i = row + 1; i < m; ++i) {
      if (H(i, col) == 0) continue;
      if (H(row, col) == 0) {
        row_op(row, i, 0, 1, 1, 0);
        continue;
      }
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), H(row, col).get_mpz_t(), H(i, col).get_mpz_t());
      Integer u = -H(i, col) / g, v = H(row, col) / g;
      row_op(row, i, s, t, u, v);
    }
    if (H(row, col) == 0) continue;
    if (H(row, col) < 0) row_op(row, row, -1, 0, -1, 0);
    for (std::size_t i = 0; i < row; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), H(i, col).get_mpz_t(), H(row, col).get_mpz_t());
      if (q == 0) continue;
      for (std::size_t j = 0; j < n; ++j) H(i, j) -= q * H(row, j);
      for (std::size_t j = 0; j < m; ++j) U(i, j) -= q * U(row, j);
    }
    ++row;
  }
  return {H, U, row};
}

IntMatrix integer_kernel(const IntMatrix& a) {
  HnfResult h = hnf_rows(a.transpose());
  const std::size_t n = a.cols();
  IntMatrix k(n - h.rank, n);
  for (std::size_t i = h.rank; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) k(i - h.rank, j) = h.U(i, j);
  return k;
}

std::vector<std::vector<Rational>> rational_nullspace(const RatMatrix& m) {
  const std::size_t r = m.rows(), c = m.cols();
  RatMatrix a = m;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < c && row < r; ++col) {
    std::size_t p = row;
    while (p < r && a(p, col) == 0) ++p;
    if (p == r) continue;
    for (std::size_t j = 0; j < c; ++j) std::swap(a(row, j), a(p, j));
    Rational piv = a(row, col);
    for (std::size_t j = 0; j < c; ++j) a(row, j) /= piv;
    for (std::size_t i = 0; i < r; ++i) {
      if (i == row || a(i, col) == 0) continue;
      Rational f = a(i, col);
      for (std::size_t j = 0; j < c; ++j) a(i, j) -= f * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < c; ++f) {
    if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
    std::vector<Rational> v(c, Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Rational> solve(const RatMatrix& a, const std::vector<Rational>& b) {
  return inverse(a) * b;
}

Rational max_norm(const std::vector<Rational>& v) {
  Rational m = 0;
  for (const auto& x : v) m = std::max(m, abs_q(x));
  return m;
}

Integer max_norm(const std::vector<Integer>& v) {
  Integer m = 0;
  for (const auto& x : v) m = std::max(m, Integer(abs(x)));
  return m;
}

Rational inf_norm(const RatMatrix& m) {
  Rational best = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += abs_q(m(i, j));
    best = std::max(best, s);
  }
  return best;
}

}  // namespace ietlab
