#pragma once

// F-zips over finite fields: a space with a descending filtration C, an
// ascending filtration D and Frobenius-semilinear isomorphisms
// phi_i : (gr_C^i)^(p) -> gr_D^i.
//
// Graded pieces carry canonical bases: the echelon basis of C^i reduced
// modulo C^{i+1} (and likewise for D), so phi_i is a plain matrix and two zips
// given by different spanning sets compare equal. With respect to these bases
// phi_i sends sum_k c_k b_k to sum_j (M c^p)_j d_j, where c^p is the entrywise
// Frobenius.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hodgep/arith/field.hpp"
#include "hodgep/arith/matrix.hpp"
#include "hodgep/repkit.hpp"

namespace hodgep {

using GFMatrix = Matrix<GaloisField>;
using GFSubspace = Subspace<GaloisField>;
using GFVec = std::vector<GaloisField::value_type>;

inline GFMatrix frobenius(const GFMatrix& m, int power = 1) {
  const auto& F = m.field();
  return m.map([&](GaloisField::value_type x) {
    for (int k = 0; k < power; ++k) x = F.frobenius(x);
    return x;
  });
}

/// A semilinear map x -> M * Frob^k(x).
struct SemilinearMap {
  GFMatrix matrix;
  int frobenius_power = 0;

  GFVec apply(const GFVec& x) const {
    const auto& F = matrix.field();
    GFVec y = x;
    for (auto& v : y)
      for (int k = 0; k < frobenius_power; ++k) v = F.frobenius(v);
    return hodgep::apply(matrix, y);
  }
  /// (this o other)(x) = A Frob^a(B Frob^b x) = A Frob^a(B) Frob^{a+b}(x)
  SemilinearMap compose(const SemilinearMap& other) const {
    return {matrix * frobenius(other.matrix, frobenius_power), frobenius_power + other.frobenius_power};
  }
};

struct FZip {
  GaloisField field{2};
  std::size_t dim = 0;
  std::vector<std::pair<int, GFSubspace>> C;  // listed jumps, increasing index
  std::vector<std::pair<int, GFSubspace>> D;
  std::map<int, GFMatrix> phi;

  /// C^i: the listed space at the smallest listed index >= i, zero past the end.
  GFSubspace C_at(int i) const {
    for (const auto& [j, s] : C)
      if (j >= i) return s;
    return GFSubspace(field, dim);
  }
  /// D_i: the listed space at the largest listed index <= i, zero before the start.
  GFSubspace D_at(int i) const {
    for (auto it = D.rbegin(); it != D.rend(); ++it)
      if (it->first <= i) return it->second;
    return GFSubspace(field, dim);
  }
  /// Indices where a graded piece of C or D can be nonzero.
  std::vector<int> graded_indices() const {
    std::set<int> s;
    for (const auto& [j, sp] : C) s.insert(j);
    for (const auto& [j, sp] : D) s.insert(j);
    return {s.begin(), s.end()};
  }
  GFMatrix gr_C_basis(int i) const { return quotient_basis(C_at(i), C_at(i + 1)); }
  GFMatrix gr_D_basis(int i) const { return quotient_basis(D_at(i), D_at(i - 1)); }
  std::size_t gr_C_dim(int i) const { return C_at(i).dim() - C_at(i + 1).dim(); }
  std::size_t gr_D_dim(int i) const { return D_at(i).dim() - D_at(i - 1).dim(); }
};

inline std::vector<std::pair<int, GFSubspace>> normalized_filtration(
    const GaloisField& F, std::size_t dim, const std::vector<std::pair<int, GFMatrix>>& spans) {
  std::vector<std::pair<int, GFSubspace>> out;
  for (const auto& [i, m] : spans) {
    require(m.cols() == dim, "filtration rows have wrong length");
    out.emplace_back(i, GFSubspace(m));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  (void)F;
  return out;
}

inline FZip make_fzip(const GaloisField& F, std::size_t dim, const std::vector<std::pair<int, GFMatrix>>& C,
                      const std::vector<std::pair<int, GFMatrix>>& D, std::map<int, GFMatrix> phi) {
  FZip z;
  z.field = F;
  z.dim = dim;
  z.C = normalized_filtration(F, dim, C);
  z.D = normalized_filtration(F, dim, D);
  z.phi = std::move(phi);
  return z;
}

/// First violated F-zip axiom, or nullopt.
inline std::optional<std::string> validate(const FZip& z) {
  const auto& F = z.field;
  for (const auto* fil : {&z.C, &z.D})
    for (std::size_t k = 0; k < fil->size(); ++k) {
      if ((*fil)[k].second.ambient() != z.dim) return std::string("filtration step has wrong ambient dimension");
      if (k > 0 && (*fil)[k].first == (*fil)[k - 1].first) return std::string("duplicate filtration index");
    }
  for (std::size_t k = 1; k < z.C.size(); ++k)
    if (!z.C[k - 1].second.contains(z.C[k].second))
      return "C is not descending at index " + std::to_string(z.C[k].first);
  for (std::size_t k = 1; k < z.D.size(); ++k)
    if (!z.D[k].second.contains(z.D[k - 1].second))
      return "D is not ascending at index " + std::to_string(z.D[k].first);
  if (z.dim > 0) {
    if (z.C.empty() || z.C.front().second.dim() != z.dim) return std::string("C is not exhaustive");
    if (z.D.empty() || z.D.back().second.dim() != z.dim) return std::string("D is not exhaustive");
  }
  for (int i : z.graded_indices()) {
    const auto dc = z.gr_C_dim(i), dd = z.gr_D_dim(i);
    if (dc != dd) return "graded dimension mismatch at index " + std::to_string(i);
    auto it = z.phi.find(i);
    if (dc == 0) {
      if (it != z.phi.end() && (it->second.rows() != 0 || it->second.cols() != 0))
        return "phi_" + std::to_string(i) + " given for a zero graded piece";
      continue;
    }
    if (it == z.phi.end()) return "phi_" + std::to_string(i) + " is missing";
    if (it->second.rows() != dd || it->second.cols() != dc) return "phi_" + std::to_string(i) + " has wrong shape";
    if (!(it->second.field() == F)) return "phi_" + std::to_string(i) + " is over the wrong field";
    if (rank(it->second) != dc) return "phi_" + std::to_string(i) + " is not invertible";
  }
  const auto idx = z.graded_indices();
  const std::set<int> known(idx.begin(), idx.end());
  for (const auto& [i, m] : z.phi)
    if (!known.count(i) && (m.rows() != 0 || m.cols() != 0))
      return "phi_" + std::to_string(i) + " given for a zero graded piece";
  return std::nullopt;
}

inline void require_valid(const FZip& z) {
  if (auto v = validate(z)) throw Error("invalid F-zip: " + *v);
}

inline std::map<int, long long> zip_type(const FZip& z) {
  require_valid(z);
  std::map<int, long long> t;
  for (int i : z.graded_indices())
    if (auto d = z.gr_C_dim(i)) t[i] = static_cast<long long>(d);
  return t;
}

namespace detail {

// Coordinates of v modulo `lower` in the (independent mod lower) rows of `basis`.
inline GFVec coords_mod(const GFMatrix& basis, const GFSubspace& lower, const GFVec& v) {
  const auto& F = basis.field();
  GFMatrix reduced(F, 0, basis.cols());
  for (std::size_t r = 0; r < basis.rows(); ++r) reduced.append_row(lower.reduce(basis.row(r)));
  auto sol = solve(reduced.transpose(), lower.reduce(v));
  require(sol.has_value(), "internal: vector not in the graded span");
  return *sol;
}

// A linear map defined on all of F^n that returns quotient coordinates on
// `upper` / `lower` in the canonical basis.
struct GradedProjection {
  GFMatrix inv;        // inverse of the adapted basis
  std::size_t offset;  // position of the graded block
  std::size_t size;
  GFVec operator()(const GFVec& v) const {
    const auto& F = inv.field();
    GFVec c(size, F.zero());
    for (std::size_t k = 0; k < size; ++k)
      for (std::size_t j = 0; j < v.size(); ++j)
        if (!F.is_zero(v[j])) c[k] = F.add(c[k], F.mul(v[j], inv(j, offset + k)));
    return c;
  }
};

inline GradedProjection graded_projection(const GFSubspace& lower, const GFMatrix& gr_basis) {
  const auto& F = gr_basis.field();
  const std::size_t n = gr_basis.cols();
  GFMatrix full(F, 0, n);
  for (std::size_t r = 0; r < lower.dim(); ++r) full.append_row(lower.basis().row(r));
  for (std::size_t r = 0; r < gr_basis.rows(); ++r) full.append_row(gr_basis.row(r));
  GFSubspace sofar(full);
  for (std::size_t j = 0; j < n && full.rows() < n; ++j) {
    GFVec u(n, F.zero());
    u[j] = F.one();
    if (sofar.contains(u)) continue;
    full.append_row(u);
    sofar = GFSubspace(full);
  }
  auto inv = inverse(full);
  require(inv.has_value(), "internal: adapted basis is singular");
  return {*inv, lower.dim(), gr_basis.rows()};
}

}  // namespace detail

/// Convert phi given in chosen graded bases (rows representing classes) into
/// the canonical-basis matrix: M = T M' Frob(A).
inline GFMatrix canonical_phi(const FZip& z, int i, const GFMatrix& chosen_c, const GFMatrix& chosen_d,
                              const GFMatrix& m_chosen) {
  const auto& F = z.field;
  const auto can_c = z.gr_C_basis(i);
  const auto can_d = z.gr_D_basis(i);
  const auto lower_c = z.C_at(i + 1);
  const auto lower_d = z.D_at(i - 1);
  GFMatrix A(F, chosen_c.rows(), can_c.rows());
  for (std::size_t t = 0; t < can_c.rows(); ++t) {
    auto c = detail::coords_mod(chosen_c, lower_c, can_c.row(t));
    for (std::size_t s = 0; s < c.size(); ++s) A(s, t) = c[s];
  }
  GFMatrix T(F, can_d.rows(), chosen_d.rows());
  for (std::size_t j = 0; j < chosen_d.rows(); ++j) {
    auto c = detail::coords_mod(can_d, lower_d, chosen_d.row(j));
    for (std::size_t s = 0; s < c.size(); ++s) T(s, j) = c[s];
  }
  return T * m_chosen * frobenius(A);
}

inline FZip unit_fzip(const GaloisField& F) {
  auto one = GFMatrix::identity(F, 1);
  return make_fzip(F, 1, {{0, one}}, {{0, one}}, {{0, one}});
}

inline void require_same_base(const FZip& a, const FZip& b) {
  require(a.field == b.field, "F-zips are over different fields");
}

inline std::pair<int, int> index_range(const std::vector<std::pair<int, GFSubspace>>& fil) {
  if (fil.empty()) return {0, 0};
  return {fil.front().first, fil.back().first};
}

inline FZip direct_sum(const FZip& a, const FZip& b) {
  require_same_base(a, b);
  require_valid(a);
  require_valid(b);
  const auto& F = a.field;
  const std::size_t n = a.dim + b.dim;
  auto embed = [&](const GFMatrix& m, bool first) {
    GFMatrix out(F, m.rows(), n);
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) out(r, (first ? 0 : a.dim) + c) = m(r, c);
    return out;
  };
  auto stack = [&](const GFMatrix& x, const GFMatrix& y) {
    GFMatrix out = x;
    for (std::size_t r = 0; r < y.rows(); ++r) out.append_row(y.row(r));
    return out;
  };
  std::set<int> ci, di;
  for (const auto& [i, s] : a.C) ci.insert(i);
  for (const auto& [i, s] : b.C) ci.insert(i);
  for (const auto& [i, s] : a.D) di.insert(i);
  for (const auto& [i, s] : b.D) di.insert(i);
  std::vector<std::pair<int, GFMatrix>> C, D;
  for (int i : ci) C.emplace_back(i, stack(embed(a.C_at(i).basis(), true), embed(b.C_at(i).basis(), false)));
  for (int i : di) D.emplace_back(i, stack(embed(a.D_at(i).basis(), true), embed(b.D_at(i).basis(), false)));
  FZip z = make_fzip(F, n, C, D, {});
  for (int i : z.graded_indices()) {
    if (z.gr_C_dim(i) == 0 || z.gr_C_dim(i) != z.gr_D_dim(i)) continue;
    auto cc = stack(embed(a.gr_C_basis(i), true), embed(b.gr_C_basis(i), false));
    auto cd = stack(embed(a.gr_D_basis(i), true), embed(b.gr_D_basis(i), false));
    std::vector<GFMatrix> blocks;
    if (a.gr_C_dim(i)) blocks.push_back(a.phi.at(i));
    if (b.gr_C_dim(i)) blocks.push_back(b.phi.at(i));
    z.phi[i] = canonical_phi(z, i, cc, cd, block_diagonal(F, blocks));
  }
  return z;
}

inline FZip tensor(const FZip& a, const FZip& b) {
  require_same_base(a, b);
  require_valid(a);
  require_valid(b);
  const auto& F = a.field;
  const std::size_t n = a.dim * b.dim;
  if (n == 0) return make_fzip(F, 0, {}, {}, {});
  auto kron_rows = [&](const GFMatrix& x, const GFMatrix& y) {
    GFMatrix out(F, 0, n);
    for (std::size_t r = 0; r < x.rows(); ++r)
      for (std::size_t s = 0; s < y.rows(); ++s) {
        GFVec v(n, F.zero());
        for (std::size_t i = 0; i < a.dim; ++i)
          if (!F.is_zero(x(r, i)))
            for (std::size_t j = 0; j < b.dim; ++j) v[i * b.dim + j] = F.mul(x(r, i), y(s, j));
        out.append_row(v);
      }
    return out;
  };
  auto [ca0, ca1] = index_range(a.C);
  auto [cb0, cb1] = index_range(b.C);
  auto [da0, da1] = index_range(a.D);
  auto [db0, db1] = index_range(b.D);
  std::vector<std::pair<int, GFMatrix>> C, D;
  for (int t = ca0 + cb0; t <= ca1 + cb1; ++t) {
    GFMatrix span(F, 0, n);
    for (int i = ca0; i <= ca1; ++i) {
      auto k = kron_rows(a.C_at(i).basis(), b.C_at(t - i).basis());
      for (std::size_t r = 0; r < k.rows(); ++r) span.append_row(k.row(r));
    }
    C.emplace_back(t, span);
  }
  for (int t = da0 + db0; t <= da1 + db1; ++t) {
    GFMatrix span(F, 0, n);
    for (int i = da0; i <= da1; ++i) {
      auto k = kron_rows(a.D_at(i).basis(), b.D_at(t - i).basis());
      for (std::size_t r = 0; r < k.rows(); ++r) span.append_row(k.row(r));
    }
    D.emplace_back(t, span);
  }
  FZip z = make_fzip(F, n, C, D, {});
  const auto ia = a.graded_indices();
  for (int t : z.graded_indices()) {
    if (z.gr_C_dim(t) == 0) continue;
    GFMatrix cc(F, 0, n), cd(F, 0, n);
    std::vector<GFMatrix> blocks;
    for (int i : ia) {
      if (a.gr_C_dim(i) == 0 || b.gr_C_dim(t - i) == 0) continue;
      auto kc = kron_rows(a.gr_C_basis(i), b.gr_C_basis(t - i));
      auto kd = kron_rows(a.gr_D_basis(i), b.gr_D_basis(t - i));
      for (std::size_t r = 0; r < kc.rows(); ++r) cc.append_row(kc.row(r));
      for (std::size_t r = 0; r < kd.rows(); ++r) cd.append_row(kd.row(r));
      blocks.push_back(kron(a.phi.at(i), b.phi.at(t - i)));
    }
    z.phi[t] = canonical_phi(z, t, cc, cd, block_diagonal(F, blocks));
  }
  return z;
}

/// Dual zip on the dual space (dual-basis coordinates):
/// C^{v,i} = (C^{1-i})^perp, D^v_i = (D_{-i-1})^perp, phi^v_i = (phi_{-i}^T)^{-1}.
inline FZip dual(const FZip& z) {
  require_valid(z);
  const auto& F = z.field;
  const std::size_t n = z.dim;
  if (n == 0) return make_fzip(F, 0, {}, {}, {});
  auto [c0, c1] = index_range(z.C);
  auto [d0, d1] = index_range(z.D);
  std::vector<std::pair<int, GFMatrix>> C, D;
  for (int i = -c1; i <= -c0; ++i) C.emplace_back(i, z.C_at(1 - i).annihilator().basis());
  for (int i = -d1; i <= -d0; ++i) D.emplace_back(i, z.D_at(-i - 1).annihilator().basis());
  FZip out = make_fzip(F, n, C, D, {});
  // functionals in `perp` dual to the rows of `basis`
  auto dual_rows = [&](const GFSubspace& vanish_on, const GFMatrix& basis) {
    GFMatrix sys(F, 0, n);
    for (std::size_t r = 0; r < vanish_on.dim(); ++r) sys.append_row(vanish_on.basis().row(r));
    for (std::size_t r = 0; r < basis.rows(); ++r) sys.append_row(basis.row(r));
    GFMatrix out_rows(F, 0, n);
    for (std::size_t k = 0; k < basis.rows(); ++k) {
      GFVec rhs(sys.rows(), F.zero());
      rhs[vanish_on.dim() + k] = F.one();
      auto sol = solve(sys, rhs);
      require(sol.has_value(), "internal: dual basis does not exist");
      out_rows.append_row(*sol);
    }
    return out_rows;
  };
  for (int i : out.graded_indices()) {
    if (out.gr_C_dim(i) == 0) continue;
    auto cc = dual_rows(z.C_at(1 - i), z.gr_C_basis(-i));
    auto cd = dual_rows(z.D_at(-i - 1), z.gr_D_basis(-i));
    auto inv = inverse(z.phi.at(-i).transpose());
    require(inv.has_value(), "internal: phi is not invertible");
    out.phi[i] = canonical_phi(out, i, cc, cd, *inv);
  }
  return out;
}

/// F-zip of a module over the prime field with the grading by <weight, mu>:
/// C^a = sum of weight spaces of mu-degree >= a, D_a of mu-degree <= a, phi = sign * identity.
inline FZip point_fzip(const GModule<GaloisField>& m, const Coweight& mu, int sign = +1) {
  const auto& F = m.field;
  if (F.degree() != 1) throw Error("point_fzip needs a module over the prime field");
  require(static_cast<int>(mu.size()) == m.rs.rank(), "cocharacter has wrong length");
  require(sign == 1 || sign == -1, "sign must be +1 or -1");
  const std::size_t n = m.dim;
  if (n == 0) return make_fzip(F, 0, {}, {}, {});
  std::vector<long long> deg(n);
  for (std::size_t k = 0; k < n; ++k) deg[k] = pairing(m.weights[k], mu);
  const long long lo = *std::min_element(deg.begin(), deg.end());
  const long long hi = *std::max_element(deg.begin(), deg.end());
  std::vector<std::pair<int, GFMatrix>> C, D;
  for (long long a = lo; a <= hi; ++a) {
    GFMatrix c(F, 0, n), d(F, 0, n);
    for (std::size_t k = 0; k < n; ++k) {
      GFVec u(n, F.zero());
      u[k] = F.one();
      if (deg[k] >= a) c.append_row(u);
      if (deg[k] <= a) d.append_row(u);
    }
    C.emplace_back(static_cast<int>(a), c);
    D.emplace_back(static_cast<int>(a), d);
  }
  FZip z = make_fzip(F, n, C, D, {});
  for (long long a = lo; a <= hi; ++a) {
    const auto d = z.gr_C_dim(static_cast<int>(a));
    if (d == 0) continue;
    z.phi[static_cast<int>(a)] = scaled(GFMatrix::identity(F, d), F.from_int(sign));
  }
  return z;
}

// ---------------------------------------------------------------------------
// Isomorphism testing

struct IsoBounds {
  std::size_t max_dim = 4;
  long long max_order = 9;
  std::uint64_t max_candidates = std::uint64_t{1} << 24;
};

struct IsoResult {
  bool isomorphic = false;
  std::optional<GFMatrix> witness;  // g with g(C1) = C2, g(D1) = D2, gr(g) phi1 = phi2 gr(g)^(p)
};

namespace detail {

// All linear constraints on g : z1 -> z2 (column-vector convention) whose
// vanishing means g respects both filtrations and intertwines the phis.
inline GFVec morphism_defect(const FZip& a, const FZip& b, const GFMatrix& g,
                             const std::map<int, std::pair<GradedProjection, GradedProjection>>& proj) {
  const auto& F = a.field;
  GFVec out;
  auto image = [&](const GFVec& x) { return apply(g, x); };
  for (int i : a.graded_indices()) {
    for (int which = 0; which < 2; ++which) {
      const auto src = which ? a.D_at(i) : a.C_at(i);
      const auto dst = which ? b.D_at(i) : b.C_at(i);
      for (std::size_t r = 0; r < src.dim(); ++r) {
        auto red = dst.reduce(image(src.basis().row(r)));
        out.insert(out.end(), red.begin(), red.end());
      }
    }
    const auto dc = a.gr_C_dim(i);
    if (dc == 0) continue;
    const auto& [pc, pd] = proj.at(i);
    const auto bc = a.gr_C_basis(i), bd = a.gr_D_basis(i);
    GFMatrix GC(F, dc, dc), GD(F, dc, dc);
    for (std::size_t k = 0; k < dc; ++k) {
      auto x = pc(image(bc.row(k)));
      auto y = pd(image(bd.row(k)));
      for (std::size_t r = 0; r < dc; ++r) {
        GC(r, k) = x[r];
        GD(r, k) = y[r];
      }
    }
    auto lhs = GD * a.phi.at(i);
    auto rhs = b.phi.at(i) * frobenius(GC);
    auto diff = lhs - rhs;
    for (std::size_t r = 0; r < dc; ++r)
      for (std::size_t c = 0; c < dc; ++c) out.push_back(diff(r, c));
  }
  return out;
}

}  // namespace detail

/// Decide isomorphism by solving the F_p-linear system for filtration-compatible
/// intertwining maps and enumerating its solutions in lexicographic order of
/// coordinates until an invertible one appears.
inline IsoResult is_isomorphic(const FZip& a, const FZip& b, const IsoBounds& bounds = {}) {
  require_same_base(a, b);
  require_valid(a);
  require_valid(b);
  IsoResult res;
  if (a.dim != b.dim) return res;
  if (a.dim > bounds.max_dim || a.field.order() > bounds.max_order) throw Error("search space too large");
  if (zip_type(a) != zip_type(b)) return res;
  const auto& F = a.field;
  const std::size_t n = a.dim;
  if (n == 0) {
    res.isomorphic = true;
    res.witness = GFMatrix(F, 0, 0);
    return res;
  }
  std::map<int, std::pair<detail::GradedProjection, detail::GradedProjection>> proj;
  for (int i : a.graded_indices())
    if (a.gr_C_dim(i))
      proj.emplace(i, std::make_pair(detail::graded_projection(b.C_at(i + 1), b.gr_C_basis(i)),
                                     detail::graded_projection(b.D_at(i - 1), b.gr_D_basis(i))));
  for (int i : b.graded_indices())
    if (b.gr_C_dim(i) && !proj.count(i)) return res;
  const int e = F.degree();
  const long long p = F.characteristic();
  const std::size_t unknowns = static_cast<std::size_t>(e) * n * n;
  const GaloisField Fp(p);
  // F_p-matrix of g -> defect, one column per F_p-basis element of Hom
  std::vector<GFVec> columns;
  std::size_t rows = 0;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      for (int t = 0; t < e; ++t) {
        GFMatrix g(F, n, n);
        g(r, c) = F.basis_element(t);
        auto defect = detail::morphism_defect(a, b, g, proj);
        GFVec col;
        for (auto v : defect)
          for (auto digit : F.digits(v)) col.push_back(static_cast<GaloisField::value_type>(digit));
        rows = col.size();
        columns.push_back(std::move(col));
      }
  Matrix<GaloisField> sys(Fp, rows, unknowns);
  for (std::size_t j = 0; j < unknowns; ++j)
    for (std::size_t i = 0; i < rows; ++i) sys(i, j) = columns[j][i];
  const auto ker = kernel(sys);
  const std::size_t k = ker.rows();
  std::uint64_t total = 1;
  bool overflow = false;
  for (std::size_t i = 0; i < k; ++i) {
    if (total > bounds.max_candidates / static_cast<std::uint64_t>(p)) overflow = true;
    else total *= static_cast<std::uint64_t>(p);
  }
  std::vector<long long> coef(k, 0);
  std::uint64_t tried = 0;
  while (true) {
    if (tried >= bounds.max_candidates) throw Error("search space too large");
    ++tried;
    // assemble g from the F_p coordinates
    std::vector<long long> flat(unknowns, 0);
    for (std::size_t i = 0; i < k; ++i)
      if (coef[i])
        for (std::size_t j = 0; j < unknowns; ++j) flat[j] = (flat[j] + coef[i] * ker(i, j)) % p;
    GFMatrix g(F, n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        std::vector<long long> d(e);
        for (int t = 0; t < e; ++t) d[t] = flat[(r * n + c) * e + t];
        g(r, c) = F.from_digits(d);
      }
    if (rank(g) == n) {
      res.isomorphic = true;
      res.witness = g;
      return res;
    }
    // next coefficient vector in lexicographic order (last coordinate fastest)
    std::size_t i = k;
    while (i > 0 && coef[i - 1] == p - 1) coef[--i] = 0;
    if (i == 0) break;
    ++coef[i - 1];
  }
  (void)overflow;
  (void)total;
  return res;
}

// ---------------------------------------------------------------------------
// Generators

inline GFMatrix random_invertible(const GaloisField& F, std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<long long> dist(0, F.order() - 1);
  while (true) {
    GFMatrix m(F, n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = static_cast<GaloisField::value_type>(dist(rng));
    if (rank(m) == n) return m;
  }
}

/// A random F-zip with the given type: C and D are flags read off two random
/// bases, phi random invertible.
inline FZip random_fzip(const GaloisField& F, const std::map<int, long long>& type, std::mt19937_64& rng) {
  std::size_t n = 0;
  for (const auto& [i, d] : type) {
    require(d >= 0, "negative type multiplicity");
    n += static_cast<std::size_t>(d);
  }
  if (n == 0) return make_fzip(F, 0, {}, {}, {});
  auto P = random_invertible(F, n, rng);
  auto Q = random_invertible(F, n, rng);
  std::vector<std::pair<int, GFMatrix>> C, D;
  // C^i = first (sum_{j >= i} tau(j)) rows of P; D_i = first (sum_{j <= i} tau(j)) rows of Q
  for (const auto& [i, d] : type) {
    std::size_t above = 0, below = 0;
    for (const auto& [j, dj] : type) {
      if (j >= i) above += dj;
      if (j <= i) below += dj;
    }
    GFMatrix c(F, 0, n), dd(F, 0, n);
    for (std::size_t r = 0; r < above; ++r) c.append_row(P.row(r));
    for (std::size_t r = 0; r < below; ++r) dd.append_row(Q.row(r));
    C.emplace_back(i, c);
    D.emplace_back(i, dd);
  }
  std::map<int, GFMatrix> phi;
  for (const auto& [i, d] : type)
    if (d > 0) phi[i] = random_invertible(F, static_cast<std::size_t>(d), rng);
  return make_fzip(F, n, C, D, phi);
}

/// Zip shaped like H^1 of a g-dimensional abelian variety: C: V ⊃ Ker F ⊃ 0
/// with dim Ker F = g, type {0: g, 1: g}.
inline FZip abelian_h1_fzip(const GaloisField& F, int g, std::mt19937_64& rng) {
  require(g >= 0, "dimension must be non-negative");
  return random_fzip(F, {{0, g}, {1, g}}, rng);
}

}  // namespace hodgep
