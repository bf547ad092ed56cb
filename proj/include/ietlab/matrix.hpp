#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "ietlab/arith.hpp"
#include "ietlab/poly.hpp"

namespace ietlab {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, const T& init = T(0)) : r_(r), c_(c), a_(r * c, init) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      require(rows[i].size() == m.c_, "Matrix::from_rows: ragged rows");
      for (std::size_t j = 0; j < m.c_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  std::vector<T> row(std::size_t i) const { return {a_.begin() + i * c_, a_.begin() + (i + 1) * c_}; }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  Matrix operator*(const Matrix& o) const {
    require(c_ == o.r_, "Matrix product: dimension mismatch");
    Matrix m(r_, o.c_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t k = 0; k < c_; ++k) {
        const T& x = (*this)(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < o.c_; ++j) m(i, j) += x * o(k, j);
      }
    return m;
  }
  std::vector<T> operator*(const std::vector<T>& v) const {
    require(c_ == v.size(), "Matrix-vector product: dimension mismatch");
    std::vector<T> out(r_, T(0));
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }
  Matrix operator+(const Matrix& o) const {
    require(r_ == o.r_ && c_ == o.c_, "Matrix sum: dimension mismatch");
    Matrix m = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] += o.a_[i];
    return m;
  }
  Matrix operator-(const Matrix& o) const {
    require(r_ == o.r_ && c_ == o.c_, "Matrix difference: dimension mismatch");
    Matrix m = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] -= o.a_[i];
    return m;
  }
  Matrix scaled(const T& s) const {
    Matrix m = *this;
    for (auto& x : m.a_) x *= s;
    return m;
  }
  Matrix transpose() const {
    Matrix m(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }
  bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  std::string to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < r_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < c_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
      os << ']';
    }
    os << ']';
    return os.str();
  }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<T> a_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

IntMatrix int_matrix(const std::vector<std::vector<long>>& rows);
RatMatrix to_rat(const IntMatrix& m);

Integer det(const IntMatrix& m);
Rational det(const RatMatrix& m);
RatMatrix inverse(const RatMatrix& m);
IntMatrix power(const IntMatrix& m, unsigned k);

// det(xI - M).
IntPoly charpoly(const IntMatrix& m);

bool is_nonnegative(const IntMatrix& m);
// Some power strictly positive (checked at the Wielandt exponent).
bool is_primitive(const IntMatrix& m);

// Row Hermite normal form: U * A = H with U unimodular; the first `rank` rows
// of H are a basis of the row lattice.
struct HnfResult {
  IntMatrix H;
  IntMatrix U;
  std::size_t rank = 0;
};
HnfResult hnf_rows(const IntMatrix& a);

// Rows form a basis of {x in Z^n : A x = 0}.
IntMatrix integer_kernel(const IntMatrix& a);

// Basis of {x in Q^n : A x = 0}.
std::vector<std::vector<Rational>> rational_nullspace(const RatMatrix& a);

// Unique solution of A x = b (square A).
std::vector<Rational> solve(const RatMatrix& a, const std::vector<Rational>& b);

// Max-norm of a rational vector; operator infinity-norm of a matrix.
Rational max_norm(const std::vector<Rational>& v);
Integer max_norm(const std::vector<Integer>& v);
Rational inf_norm(const RatMatrix& m);

}  // namespace ietlab
