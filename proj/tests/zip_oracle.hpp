#pragma once

// Brute-force F-zip isomorphism oracle and the exhaustive small universe.
// Enumerates GL_n(F_q) and checks the defining conditions directly.

#include <vector>

#include "hodgep/zipalgebra.hpp"

namespace zip_oracle {

using namespace hodgep;

inline GFVec mat_vec(const GFMatrix& g, const GFVec& v) {
  const auto& F = g.field();
  GFVec out(g.rows(), F.zero());
  for (std::size_t r = 0; r < g.rows(); ++r)
    for (std::size_t c = 0; c < g.cols(); ++c) out[r] = F.add(out[r], F.mul(g(r, c), v[c]));
  return out;
}

inline GFSubspace image(const GFMatrix& g, const GFSubspace& s) {
  GFMatrix m(g.field(), 0, g.rows());
  for (std::size_t r = 0; r < s.dim(); ++r) m.append_row(mat_vec(g, s.basis().row(r)));
  return GFSubspace(m);
}

// phi_i applied to a representative v of a class in gr_C^i, returned as a representative in D_i.
inline GFVec apply_phi(const FZip& z, int i, const GFVec& v) {
  const auto& F = z.field;
  auto b = z.gr_C_basis(i);
  auto d = z.gr_D_basis(i);
  auto lower = z.C_at(i + 1);
  GFMatrix sys(F, 0, z.dim);
  for (std::size_t r = 0; r < b.rows(); ++r) sys.append_row(lower.reduce(b.row(r)));
  auto c = solve(sys.transpose(), lower.reduce(v));
  if (!c) return {};
  for (auto& x : *c) x = F.frobenius(x);
  const auto& M = z.phi.at(i);
  GFVec out(z.dim, F.zero());
  for (std::size_t j = 0; j < M.rows(); ++j) {
    auto coef = F.zero();
    for (std::size_t k = 0; k < M.cols(); ++k) coef = F.add(coef, F.mul(M(j, k), (*c)[k]));
    for (std::size_t t = 0; t < z.dim; ++t) out[t] = F.add(out[t], F.mul(coef, d(j, t)));
  }
  return out;
}

inline bool is_morphism(const FZip& a, const FZip& b, const GFMatrix& g) {
  std::set<int> idx;
  for (const auto& [i, s] : a.C) idx.insert({i, i + 1});
  for (const auto& [i, s] : b.C) idx.insert({i, i + 1});
  for (const auto& [i, s] : a.D) idx.insert({i, i - 1});
  for (const auto& [i, s] : b.D) idx.insert({i, i - 1});
  for (int i : idx) {
    if (!(image(g, a.C_at(i)) == b.C_at(i))) return false;
    if (!(image(g, a.D_at(i)) == b.D_at(i))) return false;
  }
  const auto& F = a.field;
  for (int i : a.graded_indices()) {
    auto basis = a.gr_C_basis(i);
    auto lowD = b.D_at(i - 1);
    for (std::size_t k = 0; k < basis.rows(); ++k) {
      auto lhs = mat_vec(g, apply_phi(a, i, basis.row(k)));
      auto rhs = apply_phi(b, i, mat_vec(g, basis.row(k)));
      if (rhs.empty()) return false;
      GFVec diff(a.dim);
      for (std::size_t t = 0; t < a.dim; ++t) diff[t] = F.sub(lhs[t], rhs[t]);
      if (!lowD.contains(diff)) return false;
    }
  }
  return true;
}

inline std::vector<GFMatrix> general_linear(const GaloisField& F, std::size_t n) {
  std::vector<GFMatrix> out;
  const long long q = F.order();
  long long total = 1;
  for (std::size_t k = 0; k < n * n; ++k) total *= q;
  for (long long code = 0; code < total; ++code) {
    GFMatrix m(F, n, n);
    long long c = code;
    for (std::size_t k = 0; k < n * n; ++k) {
      m(k / n, k % n) = static_cast<GaloisField::value_type>(c % q);
      c /= q;
    }
    if (rank(m) == n) out.push_back(m);
  }
  return out;
}

inline bool brute_isomorphic(const FZip& a, const FZip& b) {
  if (a.dim != b.dim || !(a.field == b.field)) return false;
  if (a.dim == 0) return true;
  for (const auto& g : general_linear(a.field, a.dim))
    if (is_morphism(a, b, g)) return true;
  return false;
}

inline std::vector<GFMatrix> lines(const GaloisField& F) {
  std::vector<GFMatrix> out;
  out.push_back(GFMatrix::from_rows(F, 2, {{1, 0}}));
  for (long long t = 0; t < F.order(); ++t)
    out.push_back(GFMatrix::from_rows(F, 2, {{static_cast<GaloisField::value_type>(t), 1}}));
  return out;
}

/// Every F-zip of dimension <= 2 with graded pieces in degrees {0, 1}.
inline std::vector<FZip> universe(const GaloisField& F) {
  std::vector<FZip> out;
  out.push_back(make_fzip(F, 0, {}, {}, {}));
  std::vector<GaloisField::value_type> units;
  for (long long a = 1; a < F.order(); ++a) units.push_back(static_cast<GaloisField::value_type>(a));
  auto I1 = GFMatrix::identity(F, 1), I2 = GFMatrix::identity(F, 2);
  for (int deg : {0, 1})
    for (auto u : units) out.push_back(make_fzip(F, 1, {{deg, I1}}, {{deg, I1}}, {{deg, GFMatrix::from_rows(F, 1, {{u}})}}));
  const auto gl2 = general_linear(F, 2);
  for (int deg : {0, 1})
    for (const auto& g : gl2) out.push_back(make_fzip(F, 2, {{deg, I2}}, {{deg, I2}}, {{deg, g}}));
  for (const auto& L : lines(F))
    for (const auto& Lp : lines(F))
      for (auto a : units)
        for (auto b : units)
          out.push_back(make_fzip(F, 2, {{0, I2}, {1, L}}, {{0, Lp}, {1, I2}},
                                  {{0, GFMatrix::from_rows(F, 1, {{a}})}, {1, GFMatrix::from_rows(F, 1, {{b}})}}));
  return out;
}

}  // namespace zip_oracle
