#pragma once

// Dense matrices over an exact field, row reduction and subspaces.
// Vectors are rows: a subspace is the row space of its basis matrix.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hodgep/arith/field.hpp"

namespace hodgep {

template <ExactField Field>
class Matrix {
 public:
  using value_type = typename Field::value_type;

  Matrix() = default;
  Matrix(Field f, std::size_t rows, std::size_t cols)
      : f_(std::move(f)), rows_(rows), cols_(cols), data_(rows * cols, f_.zero()) {}

  static Matrix identity(const Field& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
  }

  static Matrix from_rows(const Field& f, std::size_t cols, const std::vector<std::vector<value_type>>& rows) {
    Matrix m(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      require(rows[i].size() == cols, "row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Field& field() const { return f_; }

  value_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<value_type> row(std::size_t i) const {
    return std::vector<value_type>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  std::vector<value_type> col(std::size_t j) const {
    std::vector<value_type> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  void append_row(const std::vector<value_type>& r) {
    require(r.size() == cols_, "row length mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!f_.is_zero(x)) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t k = 0; k < a.data_.size(); ++k)
      if (!a.f_.equal(a.data_[k], b.data_[k])) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(f_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix submatrix(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
    Matrix s(f_, rs.size(), cs.size());
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < cs.size(); ++j) s(i, j) = (*this)(rs[i], cs[j]);
    return s;
  }

  /// Entrywise map through a scalar function (e.g. Frobenius).
  template <class Fn>
  Matrix map(Fn&& fn) const {
    Matrix m(f_, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) m.data_[k] = fn(data_[k]);
    return m;
  }

 private:
  Field f_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<value_type> data_;
};

template <ExactField Field>
Matrix<Field> operator*(const Matrix<Field>& a, const Matrix<Field>& b) {
  require(a.cols() == b.rows(), "matrix product dimension mismatch");
  const Field& f = a.field();
  Matrix<Field> c(f, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto& x = a(i, k);
      if (f.is_zero(x)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!f.is_zero(b(k, j))) c(i, j) = f.add(c(i, j), f.mul(x, b(k, j)));
    }
  return c;
}

template <ExactField Field>
Matrix<Field> operator+(const Matrix<Field>& a, const Matrix<Field>& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "matrix sum dimension mismatch");
  Matrix<Field> c(a.field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a.field().add(a(i, j), b(i, j));
  return c;
}

template <ExactField Field>
Matrix<Field> operator-(const Matrix<Field>& a, const Matrix<Field>& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "matrix difference dimension mismatch");
  Matrix<Field> c(a.field(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a.field().sub(a(i, j), b(i, j));
  return c;
}

template <ExactField Field>
Matrix<Field> scaled(const Matrix<Field>& a, const typename Field::value_type& s) {
  return a.map([&](const auto& x) { return a.field().mul(s, x); });
}

/// Kronecker product.
template <ExactField Field>
Matrix<Field> kron(const Matrix<Field>& a, const Matrix<Field>& b) {
  const Field& f = a.field();
  Matrix<Field> c(f, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (f.is_zero(a(i, j))) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          c(i * b.rows() + k, j * b.cols() + l) = f.mul(a(i, j), b(k, l));
    }
  return c;
}

template <ExactField Field>
Matrix<Field> block_diagonal(const Field& f, const std::vector<Matrix<Field>>& blocks) {
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  Matrix<Field> m(f, r, c);
  std::size_t i0 = 0, j0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) m(i0 + i, j0 + j) = b(i, j);
    i0 += b.rows();
    j0 += b.cols();
  }
  return m;
}

template <ExactField Field>
std::vector<typename Field::value_type> apply(const Matrix<Field>& a, const std::vector<typename Field::value_type>& v) {
  require(a.cols() == v.size(), "matrix-vector dimension mismatch");
  const Field& f = a.field();
  std::vector<typename Field::value_type> out(a.rows(), f.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!f.is_zero(a(i, j)) && !f.is_zero(v[j])) out[i] = f.add(out[i], f.mul(a(i, j), v[j]));
  return out;
}

template <ExactField Field>
struct RowEchelon {
  Matrix<Field> reduced;             // reduced row echelon form, zero rows removed
  std::vector<std::size_t> pivots;   // pivot column of each row
};

/// Reduced row echelon form by Gauss-Jordan elimination with exact arithmetic.
template <ExactField Field>
RowEchelon<Field> rref(Matrix<Field> m) {
  const Field& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && f.is_zero(m(piv, c))) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    const auto inv = f.div(f.one(), m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || f.is_zero(m(i, c))) continue;
      const auto factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!f.is_zero(m(r, j))) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  Matrix<Field> red(f, r, m.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) red(i, j) = m(i, j);
  return {std::move(red), std::move(pivots)};
}

template <ExactField Field>
std::size_t rank(const Matrix<Field>& m) {
  return rref(m).pivots.size();
}

/// Basis (as rows) of the right kernel {x : m x = 0}.
template <ExactField Field>
Matrix<Field> kernel(const Matrix<Field>& m) {
  const Field& f = m.field();
  auto e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  Matrix<Field> k(f, 0, m.cols());
  for (std::size_t freec = 0; freec < m.cols(); ++freec) {
    if (is_pivot[freec]) continue;
    std::vector<typename Field::value_type> v(m.cols(), f.zero());
    v[freec] = f.one();
    for (std::size_t i = 0; i < e.pivots.size(); ++i) v[e.pivots[i]] = f.neg(e.reduced(i, freec));
    k.append_row(v);
  }
  return k;
}

/// Some solution x of m x = b, or nullopt.
template <ExactField Field>
std::optional<std::vector<typename Field::value_type>> solve(const Matrix<Field>& m,
                                                              const std::vector<typename Field::value_type>& b) {
  const Field& f = m.field();
  require(b.size() == m.rows(), "solve: right-hand side length mismatch");
  Matrix<Field> aug(f, m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto e = rref(aug);
  std::vector<typename Field::value_type> x(m.cols(), f.zero());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] == m.cols()) return std::nullopt;
    x[e.pivots[i]] = e.reduced(i, m.cols());
  }
  return x;
}

template <ExactField Field>
std::optional<Matrix<Field>> inverse(const Matrix<Field>& m) {
  require(m.rows() == m.cols(), "inverse of non-square matrix");
  const Field& f = m.field();
  const std::size_t n = m.rows();
  Matrix<Field> aug(f, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = f.one();
  }
  auto e = rref(aug);
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) return std::nullopt;
  Matrix<Field> inv(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

/// A linear subspace of F^n stored as a reduced row echelon basis, so that
/// equality of subspaces is equality of representations.
template <ExactField Field>
class Subspace {
 public:
  using value_type = typename Field::value_type;

  Subspace() = default;
  Subspace(Field f, std::size_t ambient) : basis_(f, 0, ambient) {}
  explicit Subspace(const Matrix<Field>& spanning) {
    auto e = rref(spanning);
    basis_ = std::move(e.reduced);
    pivots_ = std::move(e.pivots);
  }

  static Subspace full(const Field& f, std::size_t n) { return Subspace(Matrix<Field>::identity(f, n)); }

  std::size_t dim() const { return basis_.rows(); }
  std::size_t ambient() const { return basis_.cols(); }
  const Matrix<Field>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  const Field& field() const { return basis_.field(); }

  /// v minus its projection along the echelon basis; zero iff v lies in the subspace.
  std::vector<value_type> reduce(std::vector<value_type> v) const {
    const Field& f = field();
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
      const auto c = v[pivots_[i]];
      if (f.is_zero(c)) continue;
      for (std::size_t j = 0; j < ambient(); ++j)
        if (!f.is_zero(basis_(i, j))) v[j] = f.sub(v[j], f.mul(c, basis_(i, j)));
    }
    return v;
  }

  bool contains(const std::vector<value_type>& v) const {
    auto r = reduce(v);
    for (const auto& x : r)
      if (!field().is_zero(x)) return false;
    return true;
  }

  bool contains(const Subspace& other) const {
    for (std::size_t i = 0; i < other.dim(); ++i)
      if (!contains(other.basis_.row(i))) return false;
    return true;
  }

  /// Coordinates of a vector of the subspace in the echelon basis.
  std::vector<value_type> coordinates(const std::vector<value_type>& v) const {
    std::vector<value_type> c(dim());
    for (std::size_t i = 0; i < dim(); ++i) c[i] = v[pivots_[i]];
    return c;
  }

  Subspace sum(const Subspace& other) const {
    Matrix<Field> m = basis_;
    for (std::size_t i = 0; i < other.dim(); ++i) m.append_row(other.basis_.row(i));
    return Subspace(m);
  }

  /// Annihilator in the dual space, in dual-basis coordinates.
  Subspace annihilator() const {
    if (dim() == 0) return full(field(), ambient());
    return Subspace(kernel(basis_));
  }

  Subspace intersect(const Subspace& other) const {
    return annihilator().sum(other.annihilator()).annihilator();
  }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

 private:
  Matrix<Field> basis_;
  std::vector<std::size_t> pivots_;
};

/// Reduced complement of `lower` inside `upper` (lower must be contained in upper):
/// the echelon basis of upper's vectors reduced modulo lower. Canonical given the
/// two subspaces; it is the chosen basis of upper / lower.
template <ExactField Field>
Matrix<Field> quotient_basis(const Subspace<Field>& upper, const Subspace<Field>& lower) {
  const Field& f = upper.field();
  Matrix<Field> m(f, 0, upper.ambient());
  for (std::size_t i = 0; i < upper.dim(); ++i) {
    auto r = lower.reduce(upper.basis().row(i));
    bool zero = true;
    for (const auto& x : r) zero = zero && f.is_zero(x);
    if (!zero) m.append_row(r);
  }
  if (m.rows() == 0) return m;
  auto e = rref(m);
  Matrix<Field> out(f, 0, upper.ambient());
  for (std::size_t i = 0; i < e.reduced.rows(); ++i) out.append_row(lower.reduce(e.reduced.row(i)));
  return out;
}

/// Coordinates of v (an element of upper) modulo lower in the quotient basis q.
template <ExactField Field>
std::vector<typename Field::value_type> quotient_coordinates(const Matrix<Field>& q, const Subspace<Field>& lower,
                                                             const std::vector<typename Field::value_type>& v) {
  auto r = lower.reduce(v);
  // q is in echelon form with rows reduced modulo lower; solve q^T c = r.
  auto sol = solve(q.transpose(), r);
  require(sol.has_value(), "vector does not lie in the quotient span");
  return *sol;
}

}  // namespace hodgep
