#pragma once

#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <vector>

#include "weyl/factor.hpp"
#include "weyl/polynomial.hpp"
#include "weyl/scalar.hpp"

namespace weyl {

/** Dense matrix over the base field. */
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
    rows_ = rows.size();
    for (const auto& r : rows) {
      if (cols_ == 0) cols_ = r.size();
      if (r.size() != cols_) throw std::invalid_argument("Matrix: ragged rows");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
    return m;
  }
  static Matrix scalar(std::size_t n, const Scalar& c) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = c;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Scalar& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const {
    for (const auto& v : data_)
      if (!v.is_zero()) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b);
    Matrix m = a;
    for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] = m.data_[i] + b.data_[i];
    return m;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b);
    Matrix m = a;
    for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] = m.data_[i] - b.data_[i];
    return m;
  }
  friend Matrix operator*(const Scalar& c, const Matrix& a) {
    Matrix m = a;
    for (auto& v : m.data_) v = c * v;
    return m;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: inner dimensions differ");
    Matrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& aik = a.at(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          m.at(i, j) = m.at(i, j) + aik * b.at(k, j);
      }
    return m;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  Scalar trace() const {
    require_square();
    Scalar t(0);
    for (std::size_t i = 0; i < rows_; ++i) t = t + at(i, i);
    return t;
  }

  std::optional<Matrix> inverse() const {
    require_square();
    std::size_t n = rows_;
    Matrix a = *this, inv = identity(n);
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t pivot = col;
      while (pivot < n && a.at(pivot, col).is_zero()) ++pivot;
      if (pivot == n) return std::nullopt;
      if (pivot != col) {
        for (std::size_t j = 0; j < n; ++j) {
          std::swap(a.at(pivot, j), a.at(col, j));
          std::swap(inv.at(pivot, j), inv.at(col, j));
        }
      }
      Scalar s = Scalar(1) / a.at(col, col);
      for (std::size_t j = 0; j < n; ++j) {
        a.at(col, j) = s * a.at(col, j);
        inv.at(col, j) = s * inv.at(col, j);
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (i == col || a.at(i, col).is_zero()) continue;
        Scalar f = a.at(i, col);
        for (std::size_t j = 0; j < n; ++j) {
          a.at(i, j) = a.at(i, j) - f * a.at(col, j);
          inv.at(i, j) = inv.at(i, j) - f * inv.at(col, j);
        }
      }
    }
    return inv;
  }

  std::size_t rank() const {
    Matrix a = *this;
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols_ && r < rows_; ++col) {
      std::size_t pivot = r;
      while (pivot < rows_ && a.at(pivot, col).is_zero()) ++pivot;
      if (pivot == rows_) continue;
      for (std::size_t j = 0; j < cols_; ++j) std::swap(a.at(pivot, j), a.at(r, j));
      Scalar s = Scalar(1) / a.at(r, col);
      for (std::size_t j = 0; j < cols_; ++j) a.at(r, j) = s * a.at(r, j);
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || a.at(i, col).is_zero()) continue;
        Scalar f = a.at(i, col);
        for (std::size_t j = 0; j < cols_; ++j) a.at(i, j) = a.at(i, j) - f * a.at(r, j);
      }
      ++r;
    }
    return r;
  }

  Scalar det() const {
    require_square();
    Matrix a = *this;
    Scalar d(1);
    for (std::size_t col = 0; col < rows_; ++col) {
      std::size_t pivot = col;
      while (pivot < rows_ && a.at(pivot, col).is_zero()) ++pivot;
      if (pivot == rows_) return Scalar(0);
      if (pivot != col) {
        for (std::size_t j = 0; j < rows_; ++j) std::swap(a.at(pivot, j), a.at(col, j));
        d = Scalar(0) - d;
      }
      d = d * a.at(col, col);
      Scalar s = Scalar(1) / a.at(col, col);
      for (std::size_t i = col + 1; i < rows_; ++i) {
        if (a.at(i, col).is_zero()) continue;
        Scalar f = s * a.at(i, col);
        for (std::size_t j = col; j < rows_; ++j) a.at(i, j) = a.at(i, j) - f * a.at(col, j);
      }
    }
    return d;
  }

  void require_square() const {
    if (!is_square()) throw std::invalid_argument("Matrix: square matrix required");
  }
  void require_same_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_)
      throw std::invalid_argument("Matrix: shape mismatch");
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

inline bool commute(const Matrix& a, const Matrix& b) { return a * b == b * a; }

inline Matrix block_diag(const std::vector<Matrix>& blocks) {
  std::size_t n = 0, m = 0;
  for (const auto& b : blocks) {
    n += b.rows();
    m += b.cols();
  }
  Matrix out(n, m);
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) out.at(r + i, c + j) = b.at(i, j);
    r += b.rows();
    c += b.cols();
  }
  return out;
}

/// Characteristic polynomial, monic, by the Faddeev-LeVerrier recurrence.
inline Poly<Scalar> charpoly(const Matrix& a) {
  a.require_square();
  std::size_t n = a.rows();
  std::vector<Scalar> c(n + 1, Scalar(0));
  c[n] = Scalar(1);
  Matrix m = Matrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m;
    Scalar ck = (Scalar(0) - m.trace()) / Scalar(static_cast<long>(k));
    c[n - k] = ck;
    m = m + Matrix::scalar(n, ck);
  }
  return Poly<Scalar>(std::move(c));
}

namespace detail {

/// Smith normal form diagonal of a square matrix over F[x], entries monic.
inline std::vector<Poly<Scalar>> poly_smith_diagonal(std::vector<std::vector<Poly<Scalar>>> m) {
  using P = Poly<Scalar>;
  std::size_t n = m.size();
  std::vector<P> diag;
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      long best_deg = -1;
      std::size_t bi = t, bj = t;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (!m[i][j].is_zero() && (best_deg < 0 || m[i][j].degree() < best_deg)) {
            best_deg = m[i][j].degree();
            bi = i;
            bj = j;
          }
      if (best_deg < 0) {
        diag.push_back(P());
        goto next_pivot;
      }
      std::swap(m[t], m[bi]);
      for (std::size_t i = t; i < n; ++i) std::swap(m[i][t], m[i][bj]);

      {
        bool reduced = true;
        for (std::size_t i = t + 1; i < n; ++i) {
          if (m[i][t].is_zero()) continue;
          P q = divmod(m[i][t], m[t][t]).first;
          for (std::size_t j = t; j < n; ++j) m[i][j] -= q * m[t][j];
          if (!m[i][t].is_zero()) reduced = false;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (m[t][j].is_zero()) continue;
          P q = divmod(m[t][j], m[t][t]).first;
          for (std::size_t i = t; i < n; ++i) m[i][j] -= q * m[i][t];
          if (!m[t][j].is_zero()) reduced = false;
        }
        if (!reduced) continue;
      }

      {
        bool chained = true;
        for (std::size_t i = t + 1; i < n && chained; ++i)
          for (std::size_t j = t + 1; j < n && chained; ++j)
            if (!divides(m[t][t], m[i][j])) {
              for (std::size_t jj = t; jj < n; ++jj) m[t][jj] += m[i][jj];
              chained = false;
            }
        if (chained) {
          diag.push_back(m[t][t].monic());
          break;
        }
      }
    }
  next_pivot:;
  }
  return diag;
}

}  // namespace detail

/**
 * Invariant factors of the F[x]-module F^n with x acting as the matrix:
 * nonconstant Smith diagonal entries of xI - A, in divisibility order.
 */
inline std::vector<Poly<Scalar>> invariant_factors(const Matrix& a) {
  a.require_square();
  std::size_t n = a.rows();
  std::vector<std::vector<Poly<Scalar>>> m(n, std::vector<Poly<Scalar>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Scalar> c{Scalar(0) - a.at(i, j)};
      if (i == j) c.push_back(Scalar(1));
      m[i][j] = Poly<Scalar>(std::move(c));
    }
  std::vector<Poly<Scalar>> out;
  for (auto& f : detail::poly_smith_diagonal(std::move(m)))
    if (f.degree() >= 1) out.push_back(std::move(f));
  return out;
}

inline Poly<Scalar> minimal_polynomial(const Matrix& a) {
  auto inv = invariant_factors(a);
  if (inv.empty()) throw std::domain_error("minimal_polynomial: empty matrix");
  return inv.back();
}

inline Matrix companion(const Poly<Scalar>& f) {
  if (f.degree() < 1 || !(f.lc() == Scalar(1)))
    throw std::invalid_argument("companion: monic polynomial of degree >= 1 required");
  std::size_t n = static_cast<std::size_t>(f.degree());
  Matrix m(n, n);
  for (std::size_t i = 1; i < n; ++i) m.at(i, i - 1) = Scalar(1);
  for (std::size_t i = 0; i < n; ++i) m.at(i, n - 1) = Scalar(0) - f.coeff(i);
  return m;
}

inline Matrix rational_canonical_form(const Matrix& a) {
  std::vector<Matrix> blocks;
  for (const auto& f : invariant_factors(a)) blocks.push_back(companion(f));
  return block_diag(blocks);
}

inline bool similar(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return invariant_factors(a) == invariant_factors(b);
}

inline bool is_cyclic(const Matrix& a) { return invariant_factors(a).size() == 1; }

/**
 * True iff the matrix is not similar to any nontrivial block-diagonal one:
 * a single companion block whose polynomial is an irreducible power.
 */
inline bool is_indecomposable_matrix(const Matrix& a, const FieldContext& field) {
  auto inv = invariant_factors(a);
  if (inv.size() != 1) return false;
  const Poly<Scalar>& m = inv.back();
  Poly<Scalar> s = squarefree_part(m);
  if (m.degree() % s.degree() != 0) return false;
  if (s.pow(static_cast<unsigned long>(m.degree() / s.degree())) != m) return false;
  return is_irreducible_over(s, field);
}

inline bool is_semisimple(const Matrix& a) {
  Poly<Scalar> m = minimal_polynomial(a);
  return gcd(m, m.derivative()).degree() == 0;
}

inline bool is_diagonalizable(const Matrix& a, const FieldContext& field) {
  Poly<Scalar> m = minimal_polynomial(a);
  if (gcd(m, m.derivative()).degree() != 0) return false;
  for (const auto& [h, mult] : factor_over_field(m, field))
    if (h.degree() != 1) return false;
  return true;
}

}  // namespace weyl
