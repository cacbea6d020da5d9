#pragma once

// The test matrix of (datum, mu, lambda) instances for the complexes, and
// checks that recompute levels and compositions from the raw matrices
// instead of going through check_complex / graded_compare.

#include <map>
#include <string>
#include <vector>

#include "hodgep/complexes.hpp"
#include "support.hpp"

namespace complex_matrix {

using namespace hodgep;

struct Shape {
  std::string name;
  RootDatum datum;
  Coweight mu;
};

/// GL2 (modular curve), GL3 with mu = (1,1,0), GSp4 (Siegel).
inline std::vector<Shape> shapes() {
  return {{"A1", type_A(1, true), {1, 0}}, {"A2", type_A(2, true), {1, 1, 0}}, {"C2", type_C(2, true), {1, 1, 1}}};
}

/// Dominant weights with zero central part and Weyl dimension <= max_dim.
inline std::vector<Weight> small_weights(const RootSystem& rs, long long max_dim) {
  // a single pairing t already forces dimension > t, so t < max_dim bounds the search
  std::vector<Weight> out;
  const int n = rs.num_simple();
  std::vector<long long> t(n, 0);
  while (true) {
    auto lam = testing_support::weight_with_pairings(rs, t);
    if (weyl_dimension(rs, lam) <= max_dim) out.push_back(lam);
    int k = 0;
    while (k < n && t[k] == max_dim - 1) t[k++] = 0;
    if (k == n) break;
    ++t[k];
  }
  return out;
}

struct Decoded {
  std::size_t mono, wedge, v;
};

template <class Cx>
Decoded decode(const Cx& cx, int a, std::size_t idx) {
  const std::size_t nw = cx.wedges[a].size(), dv = cx.V.dim;
  return {idx / (nw * dv), (idx / dv) % nw, idx % dv};
}

template <class Cx>
long long mu_degree(const Cx& cx, std::size_t v) {
  return testing_support::dot(cx.V.weights[v], cx.pd.mu);
}

// C^l(Std_a) = Sym ⊗ ∧^a ⊗ C^{l-a}(V): membership iff mu-degree(v) >= l + a.
template <class Cx>
long long hodge(const Cx& cx, int a, std::size_t idx) {
  return mu_degree(cx, decode(cx, a, idx).v) - a;
}

// D_l(p-Std_a) = Sym ⊗ ∧^a ⊗ D_{l-a}(V): membership iff -mu-degree(v) <= l - a.
template <class Cx>
long long conjugate(const Cx& cx, int a, std::size_t idx) {
  return a - mu_degree(cx, decode(cx, a, idx).v);
}

template <class Cx>
int sym_deg(const Cx& cx, int a, std::size_t idx) {
  return static_cast<int>(cx.monomials[decode(cx, a, idx).mono].size());
}

/// d_{a-1} d_a vanishes on every column of Sym-degree <= Dmax - 2, by explicit accumulation.
template <class Cx>
bool interior_square_zero(const Cx& cx, std::string* where = nullptr) {
  const auto& F = cx.V.field;
  for (int a = 2; a <= cx.n; ++a) {
    const auto& d1 = cx.diff[a - 1];
    const auto& d2 = cx.diff[a];
    for (std::size_t c = 0; c < d2.cols(); ++c) {
      if (sym_deg(cx, a, c) > cx.dmax - 2) continue;
      std::map<std::size_t, typename std::decay_t<decltype(F)>::value_type> acc;
      for (const auto& [r, v] : d2.column(c))
        for (const auto& [r2, v2] : d1.column(r)) {
          auto it = acc.try_emplace(r2, F.zero()).first;
          it->second = F.add(it->second, F.mul(v, v2));
        }
      for (const auto& [r, v] : acc)
        if (!F.is_zero(v)) {
          if (where) *where = "degree " + std::to_string(a) + " column " + std::to_string(c);
          return false;
        }
    }
  }
  return true;
}

/// d(C^l) ⊆ C^l for std, psi(D_l) ⊆ D_l for p-std; both filtrations are spanned by basis vectors.
template <class Cx>
bool filtration_preserved(const Cx& cx) {
  const bool std_variant = cx.variant == ComplexVariant::standard;
  for (int a = 1; a <= cx.n; ++a)
    for (std::size_t c = 0; c < cx.diff[a].cols(); ++c)
      for (const auto& [r, v] : cx.diff[a].column(c)) {
        if (std_variant && hodge(cx, a - 1, r) < hodge(cx, a, c)) return false;
        if (!std_variant && conjugate(cx, a - 1, r) > conjugate(cx, a, c)) return false;
      }
  return true;
}

/// gr_C^l of std against gr_D^{-l} of p-std: dimensions per (a, l) and the graded differentials entrywise.
template <class Cx>
bool graded_agree(const Cx& s, const Cx& p) {
  for (int a = 0; a <= s.n; ++a) {
    std::map<long long, long long> dc, dd;
    for (std::size_t i = 0; i < s.term_dim(a); ++i) ++dc[hodge(s, a, i)];
    for (std::size_t i = 0; i < p.term_dim(a); ++i) ++dd[-conjugate(p, a, i)];
    if (dc != dd) return false;
  }
  const auto& F = s.V.field;
  for (int a = 1; a <= s.n; ++a)
    for (std::size_t c = 0; c < s.diff[a].cols(); ++c) {
      const long long l = hodge(s, a, c);
      auto graded = [&](const Cx& cx, bool conj) {
        std::map<std::size_t, typename std::decay_t<decltype(F)>::value_type> out;
        for (const auto& [r, v] : cx.diff[a].column(c)) {
          const bool keep = conj ? conjugate(cx, a - 1, r) == -l : hodge(cx, a - 1, r) == l;
          if (keep && !F.is_zero(v)) out.emplace(r, v);
        }
        return out;
      };
      auto gs = graded(s, false), gp = graded(p, true);
      if (gs.size() != gp.size()) return false;
      for (const auto& [r, v] : gs) {
        auto it = gp.find(r);
        if (it == gp.end() || !F.equal(it->second, v)) return false;
      }
    }
  return true;
}

}  // namespace complex_matrix
