#pragma once

// Integer lattices: kernels, solutions and Hermite forms over Z, used to pick
// integral bases (saturated lattices) so that modules built over Q reduce mod p.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "hodgep/arith/matrix.hpp"

namespace hodgep {

using ZVec = std::vector<mpz_class>;
using ZMat = std::vector<ZVec>;  // list of rows

namespace detail {

struct ColumnEchelon {
  ZMat h;                           // A * U
  ZMat u;                           // unimodular n x n transform
  std::vector<std::size_t> pivot_rows;  // row of the pivot in column k, k < rank
};

// Unimodular column reduction of an r x n integer matrix to column echelon form.
inline ColumnEchelon column_echelon(const ZMat& a, std::size_t n) {
  ColumnEchelon e;
  e.h = a;
  e.u.assign(n, ZVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) e.u[i][i] = 1;
  auto colop = [&](std::size_t c1, std::size_t c2, const mpz_class& s, const mpz_class& t, const mpz_class& x,
                   const mpz_class& y) {
    // (col c1, col c2) <- (s c1 + t c2, x c1 + y c2)
    for (auto* m : {&e.h, &e.u})
      for (auto& row : *m) {
        mpz_class a1 = row[c1], a2 = row[c2];
        row[c1] = s * a1 + t * a2;
        row[c2] = x * a1 + y * a2;
      }
  };
  std::size_t piv = 0;
  for (std::size_t r = 0; r < e.h.size() && piv < n; ++r) {
    for (std::size_t c = piv + 1; c < n; ++c) {
      if (e.h[r][c] == 0) continue;
      mpz_class a1 = e.h[r][piv], a2 = e.h[r][c];
      mpz_class g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a1.get_mpz_t(), a2.get_mpz_t());
      mpz_class x = -a2 / g, y = a1 / g;
      colop(piv, c, s, t, x, y);
    }
    if (e.h[r][piv] != 0) {
      if (e.h[r][piv] < 0) colop(piv, piv, -1, 0, 0, -1);  // negate column
      e.pivot_rows.push_back(r);
      ++piv;
    }
  }
  return e;
}

}  // namespace detail

/// Row Hermite normal form: echelon, positive pivots, entries above pivots reduced.
inline ZMat hermite_rows(ZMat b) {
  if (b.empty()) return b;
  const std::size_t n = b[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < b.size(); ++c) {
    for (std::size_t i = r + 1; i < b.size(); ++i) {
      if (b[i][c] == 0) continue;
      mpz_class g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), b[r][c].get_mpz_t(), b[i][c].get_mpz_t());
      mpz_class x = -b[i][c] / g, y = b[r][c] / g;
      for (std::size_t j = 0; j < n; ++j) {
        mpz_class a1 = b[r][j], a2 = b[i][j];
        b[r][j] = s * a1 + t * a2;
        b[i][j] = x * a1 + y * a2;
      }
    }
    if (b[r][c] == 0) continue;
    if (b[r][c] < 0)
      for (auto& v : b[r]) v = -v;
    for (std::size_t i = 0; i < r; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), b[i][c].get_mpz_t(), b[r][c].get_mpz_t());
      if (q != 0)
        for (std::size_t j = 0; j < n; ++j) b[i][j] -= q * b[r][j];
    }
    ++r;
  }
  b.resize(r);
  return b;
}

/// Basis (rows, Hermite form) of {x in Z^n : A x = 0}.
inline ZMat integer_kernel(const ZMat& a, std::size_t n) {
  auto e = detail::column_echelon(a, n);
  ZMat k;
  for (std::size_t c = e.pivot_rows.size(); c < n; ++c) {
    ZVec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = e.u[i][c];
    k.push_back(std::move(v));
  }
  return hermite_rows(std::move(k));
}

/// Some x in Z^n with A x = b, or nullopt.
inline std::optional<ZVec> integer_solve(const ZMat& a, std::size_t n, const ZVec& b) {
  auto e = detail::column_echelon(a, n);
  const std::size_t rk = e.pivot_rows.size();
  ZVec y(n, 0);
  for (std::size_t k = 0; k < rk; ++k) {
    const std::size_t r = e.pivot_rows[k];
    mpz_class rest = b[r];
    for (std::size_t c = 0; c < k; ++c) rest -= e.h[r][c] * y[c];
    if (rest % e.h[r][k] != 0) return std::nullopt;
    y[k] = rest / e.h[r][k];
  }
  for (std::size_t r = 0; r < a.size(); ++r) {
    mpz_class s = 0;
    for (std::size_t c = 0; c < rk; ++c) s += e.h[r][c] * y[c];
    if (s != b[r]) return std::nullopt;
  }
  ZVec x(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < rk; ++c) x[i] += e.u[i][c] * y[c];
  return x;
}

/// Integral basis of V ∩ Z^n for the Q-span V of the given rows.
inline ZMat saturate(const Matrix<Rationals>& spanning) {
  const std::size_t n = spanning.cols();
  const auto k = kernel(spanning);  // rows y with spanning * y = 0, i.e. V^perp
  ZMat constraints;
  for (std::size_t i = 0; i < k.rows(); ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), k(i, j).get_den_mpz_t());
    ZVec row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = mpz_class(k(i, j) * l);
    constraints.push_back(std::move(row));
  }
  if (constraints.empty()) {
    ZMat id(n, ZVec(n, 0));
    for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
    return hermite_rows(std::move(id));
  }
  return integer_kernel(constraints, n);
}

}  // namespace hodgep
