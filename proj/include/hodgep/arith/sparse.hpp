#pragma once

// Column-major sparse matrices. Column j holds the image of basis vector j,
// which is how every linear map in this library is assembled.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "hodgep/arith/matrix.hpp"

namespace hodgep {

template <ExactField Field>
class SparseMatrix {
 public:
  using value_type = typename Field::value_type;
  using Entry = std::pair<std::uint32_t, value_type>;
  using Column = std::vector<Entry>;  // sorted by row, no explicit zeros

  SparseMatrix() = default;
  SparseMatrix(Field f, std::size_t rows, std::size_t cols) : f_(std::move(f)), rows_(rows), cols_(cols) {
    columns_.resize(cols);
  }

  static SparseMatrix identity(const Field& f, std::size_t n) {
    SparseMatrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.columns_[i].push_back({static_cast<std::uint32_t>(i), f.one()});
    return m;
  }

  static SparseMatrix from_dense(const Matrix<Field>& d) {
    SparseMatrix m(d.field(), d.rows(), d.cols());
    for (std::size_t j = 0; j < d.cols(); ++j)
      for (std::size_t i = 0; i < d.rows(); ++i)
        if (!d.field().is_zero(d(i, j))) m.columns_[j].push_back({static_cast<std::uint32_t>(i), d(i, j)});
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Field& field() const { return f_; }
  const Column& column(std::size_t j) const { return columns_[j]; }

  /// Replace column j by an accumulated map (zeros dropped).
  void set_column(std::size_t j, const std::map<std::uint32_t, value_type>& acc) {
    Column c;
    for (const auto& [i, v] : acc)
      if (!f_.is_zero(v)) c.push_back({i, v});
    columns_[j] = std::move(c);
  }
  /// Add v at (i, j); entries may be added in any order.
  void add(std::size_t i, std::size_t j, const value_type& v) {
    if (f_.is_zero(v)) return;
    auto& c = columns_[j];
    auto it = std::lower_bound(c.begin(), c.end(), static_cast<std::uint32_t>(i),
                               [](const Entry& e, std::uint32_t r) { return e.first < r; });
    if (it != c.end() && it->first == i) {
      it->second = f_.add(it->second, v);
      if (f_.is_zero(it->second)) c.erase(it);
    } else {
      c.insert(it, {static_cast<std::uint32_t>(i), v});
    }
  }

  value_type at(std::size_t i, std::size_t j) const {
    for (const auto& [r, v] : columns_[j])
      if (r == i) return v;
    return f_.zero();
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.size();
    return n;
  }
  bool is_zero() const { return nonzeros() == 0; }

  Matrix<Field> dense() const {
    Matrix<Field> d(f_, rows_, cols_);
    for (std::size_t j = 0; j < cols_; ++j)
      for (const auto& [i, v] : columns_[j]) d(i, j) = v;
    return d;
  }

  SparseMatrix transpose() const {
    SparseMatrix t(f_, cols_, rows_);
    for (std::size_t j = 0; j < cols_; ++j)
      for (const auto& [i, v] : columns_[j]) t.columns_[i].push_back({static_cast<std::uint32_t>(j), v});
    return t;
  }

  SparseMatrix scaled(const value_type& s) const {
    SparseMatrix m(f_, rows_, cols_);
    if (f_.is_zero(s)) return m;
    for (std::size_t j = 0; j < cols_; ++j)
      for (const auto& [i, v] : columns_[j]) m.columns_[j].push_back({i, f_.mul(s, v)});
    return m;
  }

  std::vector<value_type> apply(const std::vector<value_type>& x) const {
    require(x.size() == cols_, "sparse apply: dimension mismatch");
    std::vector<value_type> y(rows_, f_.zero());
    for (std::size_t j = 0; j < cols_; ++j) {
      if (f_.is_zero(x[j])) continue;
      for (const auto& [i, v] : columns_[j]) y[i] = f_.add(y[i], f_.mul(v, x[j]));
    }
    return y;
  }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    require(a.cols_ == b.rows_, "sparse product dimension mismatch");
    const Field& f = a.f_;
    SparseMatrix c(f, a.rows_, b.cols_);
    std::map<std::uint32_t, value_type> acc;
    for (std::size_t j = 0; j < b.cols_; ++j) {
      acc.clear();
      for (const auto& [k, bv] : b.columns_[j])
        for (const auto& [i, av] : a.columns_[k]) {
          auto [it, fresh] = acc.try_emplace(i, f.zero());
          it->second = f.add(it->second, f.mul(av, bv));
        }
      c.set_column(j, acc);
    }
    return c;
  }

  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) { return combine(a, b, false); }
  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) { return combine(a, b, true); }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t j = 0; j < a.cols_; ++j) {
      if (a.columns_[j].size() != b.columns_[j].size()) return false;
      for (std::size_t k = 0; k < a.columns_[j].size(); ++k)
        if (a.columns_[j][k].first != b.columns_[j][k].first ||
            !a.f_.equal(a.columns_[j][k].second, b.columns_[j][k].second))
          return false;
    }
    return true;
  }

  /// Entrywise conversion into another field (e.g. reduction modulo p).
  template <ExactField Target, class Fn>
  SparseMatrix<Target> convert(const Target& g, Fn&& fn) const {
    SparseMatrix<Target> m(g, rows_, cols_);
    for (std::size_t j = 0; j < cols_; ++j) {
      std::map<std::uint32_t, typename Target::value_type> acc;
      for (const auto& [i, v] : columns_[j]) acc[i] = fn(v);
      m.set_column(j, acc);
    }
    return m;
  }

 private:
  static SparseMatrix combine(const SparseMatrix& a, const SparseMatrix& b, bool subtract) {
    require(a.rows_ == b.rows_ && a.cols_ == b.cols_, "sparse sum dimension mismatch");
    const Field& f = a.f_;
    SparseMatrix c(f, a.rows_, a.cols_);
    for (std::size_t j = 0; j < a.cols_; ++j) {
      const auto& x = a.columns_[j];
      const auto& y = b.columns_[j];
      std::size_t p = 0, q = 0;
      Column out;
      while (p < x.size() || q < y.size()) {
        if (q == y.size() || (p < x.size() && x[p].first < y[q].first)) {
          out.push_back(x[p++]);
        } else if (p == x.size() || y[q].first < x[p].first) {
          out.push_back({y[q].first, subtract ? f.neg(y[q].second) : y[q].second});
          ++q;
        } else {
          auto v = subtract ? f.sub(x[p].second, y[q].second) : f.add(x[p].second, y[q].second);
          if (!f.is_zero(v)) out.push_back({x[p].first, v});
          ++p;
          ++q;
        }
      }
      c.columns_[j] = std::move(out);
    }
    return c;
  }

  Field f_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Column> columns_;
};

template <ExactField Field>
SparseMatrix<Field> commutator(const SparseMatrix<Field>& a, const SparseMatrix<Field>& b) {
  return a * b - b * a;
}

}  // namespace hodgep
