#pragma once

// Truncations of the standard complex Std_a = Sym(u_-) ⊗ ∧^a(u_-) ⊗ V and of
// its p-curvature twin, with Hodge and conjugate filtrations, the graded
// comparison between them, Casimir-isotypic extraction and BGG pages.
//
// Conventions (mu dominant and minuscule, so u_- is abelian and every x in u_-
// has mu-degree -1). For a basis vector u ⊗ x_S ⊗ v with |S| = a and v of
// mu-degree b:
//   Hodge level     b - a, and C^l = span of basis vectors of level >= l;
//   conjugate level a - b, and D_l = span of basis vectors of level <= l.
// The differential's V-action term preserves both levels and its Sym term
// raises the Hodge level and lowers the conjugate level by one, so
// gr_C^{l}(Std) and gr_D^{-l}(p-Std) share a basis and the graded
// differentials are the V-action term on both sides.

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include "hodgep/arith/sparse.hpp"
#include "hodgep/parabolic.hpp"
#include "hodgep/repkit.hpp"
#include "hodgep/rootlattice.hpp"

namespace hodgep {

enum class ComplexVariant { standard, p_curvature };

inline std::string variant_name(ComplexVariant v) { return v == ComplexVariant::standard ? "std" : "p-std"; }

template <ExactField Field>
struct FilteredComplex {
  using value_type = typename Field::value_type;

  ParabolicData pd;
  GModule<Field> V;
  int dmax = 0;
  ComplexVariant variant = ComplexVariant::standard;

  int n = 0;                                     // dim u_-
  std::vector<std::vector<int>> monomials;       // Sym^{<= dmax}(u_-) by degree, then lex
  std::vector<std::vector<long long>> mono_mul;  // index of m * x_s, or -1 past the truncation
  std::vector<std::vector<std::vector<int>>> wedges;  // per degree a, subsets in lex order
  std::vector<long long> vdeg;                   // mu-degree of V basis vectors
  std::vector<SparseMatrix<Field>> diff;         // diff[a] : term a -> term a-1 (diff[0] is 0 x dim)

  int top_degree() const { return n; }
  std::size_t wedge_count(int a) const { return wedges[a].size(); }
  std::size_t term_dim(int a) const { return monomials.size() * wedges[a].size() * V.dim; }

  struct Index {
    std::size_t m, w, v;
  };
  Index decode(int a, std::size_t idx) const {
    const std::size_t inner = wedges[a].size() * V.dim;
    return {idx / inner, (idx % inner) / V.dim, idx % V.dim};
  }
  std::size_t encode(int a, std::size_t m, std::size_t w, std::size_t v) const {
    return (m * wedges[a].size() + w) * V.dim + v;
  }
  int sym_degree(int a, std::size_t idx) const { return static_cast<int>(monomials[decode(a, idx).m].size()); }
  long long hodge_level(int a, std::size_t idx) const { return vdeg[decode(a, idx).v] - a; }
  long long conjugate_level(int a, std::size_t idx) const { return a - vdeg[decode(a, idx).v]; }
  Weight weight(int a, std::size_t idx) const {
    auto ix = decode(a, idx);
    Weight w = V.weights[ix.v];
    for (int s : monomials[ix.m]) w = add(w, pd.u_minus_roots[s]);
    for (int s : wedges[a][ix.w]) w = add(w, pd.u_minus_roots[s]);
    return w;
  }
};

inline void require_abelian(const ParabolicData& pd) {
  if (!mu_dominant(pd) || !pd.minuscule())
    throw Error("complexes need a dominant minuscule cocharacter (abelian u_-)");
}

namespace detail {

template <ExactField Field>
FilteredComplex<Field> build_complex(const ParabolicData& pd, const GModule<Field>& V, int dmax, ComplexVariant variant) {
  require(dmax >= 0, "Dmax must be non-negative");
  require(V.rs == pd.rs, "module and parabolic data are over different root data");
  require(V.nodes == all_nodes(pd.rs), "module lacks the action of the full group");
  require_abelian(pd);
  FilteredComplex<Field> cx{pd, V, dmax, variant, 0, {}, {}, {}, {}, {}};
  const auto& F = V.field;
  cx.n = static_cast<int>(pd.u_plus.size());
  const int n = cx.n;
  std::map<std::vector<int>, long long> mono_index;
  for (int deg = 0; deg <= dmax; ++deg)
    for (auto& m : multisets(n, deg)) {
      mono_index[m] = static_cast<long long>(cx.monomials.size());
      cx.monomials.push_back(m);
      if (n == 0) break;
    }
  cx.mono_mul.assign(cx.monomials.size(), std::vector<long long>(n, -1));
  for (std::size_t k = 0; k < cx.monomials.size(); ++k)
    for (int s = 0; s < n; ++s) {
      auto t = cx.monomials[k];
      t.push_back(s);
      std::sort(t.begin(), t.end());
      auto it = mono_index.find(t);
      if (it != mono_index.end()) cx.mono_mul[k][s] = it->second;
    }
  for (int a = 0; a <= n; ++a) cx.wedges.push_back(combinations(n, a));
  cx.vdeg.resize(V.dim);
  for (std::size_t v = 0; v < V.dim; ++v) cx.vdeg[v] = pairing(V.weights[v], pd.mu);

  // x_s acting on V: the root vector F_g for g = u_plus[s]
  const auto rv = root_vectors(V, root_recipes(pd.rs));
  std::vector<SparseMatrix<Field>> xact;
  for (int s = 0; s < n; ++s) xact.push_back(rv[pd.u_plus[s]].second);

  cx.diff.emplace_back(F, 0, cx.term_dim(0));
  for (int a = 1; a <= n; ++a) {
    std::map<std::vector<int>, std::size_t> widx;
    for (std::size_t k = 0; k < cx.wedges[a - 1].size(); ++k) widx[cx.wedges[a - 1][k]] = k;
    SparseMatrix<Field> d(F, cx.term_dim(a - 1), cx.term_dim(a));
    for (std::size_t m = 0; m < cx.monomials.size(); ++m)
      for (std::size_t w = 0; w < cx.wedges[a].size(); ++w) {
        const auto& S = cx.wedges[a][w];
        for (int i = 0; i < a; ++i) {
          auto rest = S;
          rest.erase(rest.begin() + i);
          const std::size_t wr = widx.at(rest);
          const int s = S[i];
          // formula positions are 1-based: (-1)^{i-1} and (-1)^i with i+1 in place of i
          const bool even = (i % 2 == 0);
          const auto plus = F.one(), minus = F.neg(F.one());
          for (std::size_t v = 0; v < V.dim; ++v) {
            const std::size_t col = cx.encode(a, m, w, v);
            if (cx.mono_mul[m][s] >= 0)
              d.add(cx.encode(a - 1, static_cast<std::size_t>(cx.mono_mul[m][s]), wr, v), col, even ? plus : minus);
            for (const auto& [r, val] : xact[s].column(v))
              d.add(cx.encode(a - 1, m, wr, r), col, even ? F.neg(val) : val);
          }
        }
      }
    cx.diff.push_back(std::move(d));
  }
  return cx;
}

}  // namespace detail

template <ExactField Field>
FilteredComplex<Field> std_complex(const ParabolicData& pd, const GModule<Field>& V, int dmax) {
  return detail::build_complex(pd, V, dmax, ComplexVariant::standard);
}

template <ExactField Field>
FilteredComplex<Field> p_std_complex(const ParabolicData& pd, const GModule<Field>& V, int dmax) {
  if constexpr (std::is_same_v<Field, GaloisField>) {
    if (V.field.degree() != 1) throw Error("p-Std needs a module over the prime field");
    return detail::build_complex(pd, V, dmax, ComplexVariant::p_curvature);
  } else {
    throw Error("p-Std needs a module over the prime field");
  }
}

// ---------------------------------------------------------------------------
// Axiom checks

struct ComplexReport {
  bool square_zero = true;          // on inputs of Sym-degree <= Dmax - 2
  bool square_zero_everywhere = true;
  bool sym_degree_bound = true;     // image of degree m lies in degree <= m + 1
  bool filtration_preserved = true; // C for std, D for p-std
  std::vector<std::string> failures;
};

template <ExactField Field>
ComplexReport check_complex(const FilteredComplex<Field>& cx) {
  ComplexReport rep;
  for (int a = 2; a <= cx.n; ++a) {
    auto sq = cx.diff[a - 1] * cx.diff[a];
    for (std::size_t c = 0; c < sq.cols(); ++c) {
      if (sq.column(c).empty()) continue;
      rep.square_zero_everywhere = false;
      if (cx.sym_degree(a, c) <= cx.dmax - 2) {
        if (rep.square_zero)
          rep.failures.push_back("d^2 != 0 at degree " + std::to_string(a) + ", column " + std::to_string(c));
        rep.square_zero = false;
      }
    }
  }
  for (int a = 1; a <= cx.n; ++a)
    for (std::size_t c = 0; c < cx.diff[a].cols(); ++c)
      for (const auto& [r, v] : cx.diff[a].column(c)) {
        if (cx.sym_degree(a - 1, r) > cx.sym_degree(a, c) + 1) {
          if (rep.sym_degree_bound) rep.failures.push_back("Sym-degree raised by more than one at degree " + std::to_string(a));
          rep.sym_degree_bound = false;
        }
        const bool ok = cx.variant == ComplexVariant::standard
                            ? cx.hodge_level(a - 1, r) >= cx.hodge_level(a, c)
                            : cx.conjugate_level(a - 1, r) <= cx.conjugate_level(a, c);
        if (!ok) {
          if (rep.filtration_preserved)
            rep.failures.push_back(std::string(cx.variant == ComplexVariant::standard ? "C" : "D") +
                                   "-filtration not preserved at degree " + std::to_string(a));
          rep.filtration_preserved = false;
        }
      }
  return rep;
}

/// Basis indices of term a spanning C^l (std) or D_l (p-std).
template <ExactField Field>
std::vector<std::size_t> filtration_step(const FilteredComplex<Field>& cx, int a, long long l) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cx.term_dim(a); ++i) {
    const bool in = cx.variant == ComplexVariant::standard ? cx.hodge_level(a, i) >= l : cx.conjugate_level(a, i) <= l;
    if (in) out.push_back(i);
  }
  return out;
}

/// Levels at which the filtration of term a jumps.
template <ExactField Field>
std::vector<long long> filtration_jumps(const FilteredComplex<Field>& cx, int a) {
  std::set<long long> s;
  for (std::size_t i = 0; i < cx.term_dim(a); ++i)
    s.insert(cx.variant == ComplexVariant::standard ? cx.hodge_level(a, i) : cx.conjugate_level(a, i));
  return {s.begin(), s.end()};
}

// ---------------------------------------------------------------------------
// Graded comparison between gr_C Std and gr_D p-Std

struct GradedMismatch {
  int degree;       // homological degree a of the source
  long long level;  // Hodge level l (compared with conjugate level -l)
  std::string what;
};

struct GradedReport {
  bool agree = true;
  std::map<std::pair<int, long long>, std::size_t> dimensions;  // (a, l) -> dim gr_C^l Std_a
  std::vector<GradedMismatch> mismatches;
};

template <ExactField Field>
GradedReport graded_compare(const FilteredComplex<Field>& std_cx, const FilteredComplex<Field>& p_cx) {
  require(std_cx.variant == ComplexVariant::standard && p_cx.variant == ComplexVariant::p_curvature,
          "graded_compare needs a std and a p-std complex");
  require(std_cx.dmax == p_cx.dmax && std_cx.n == p_cx.n && std_cx.V.dim == p_cx.V.dim &&
              std_cx.pd.mu == p_cx.pd.mu && std_cx.V.weights == p_cx.V.weights,
          "complexes are built from different data");
  GradedReport rep;
  for (int a = 0; a <= std_cx.n; ++a) {
    std::map<long long, std::size_t> dc, dd;
    for (std::size_t i = 0; i < std_cx.term_dim(a); ++i) ++dc[std_cx.hodge_level(a, i)];
    for (std::size_t i = 0; i < p_cx.term_dim(a); ++i) ++dd[-p_cx.conjugate_level(a, i)];
    for (const auto& [l, k] : dc) rep.dimensions[{a, l}] = k;
    if (dc != dd) {
      rep.agree = false;
      rep.mismatches.push_back({a, 0, "graded dimensions differ"});
    }
  }
  const auto& F = std_cx.V.field;
  for (int a = 1; a <= std_cx.n; ++a) {
    const auto& d = std_cx.diff[a];
    const auto& psi = p_cx.diff[a];
    for (std::size_t c = 0; c < d.cols(); ++c) {
      const long long l = std_cx.hodge_level(a, c);
      std::map<std::uint32_t, typename Field::value_type> gd, gp;
      for (const auto& [r, v] : d.column(c))
        if (std_cx.hodge_level(a - 1, r) == l) gd[r] = v;
      for (const auto& [r, v] : psi.column(c))
        if (p_cx.conjugate_level(a - 1, r) == -l) gp[r] = v;
      bool same = gd.size() == gp.size();
      if (same)
        for (const auto& [r, v] : gd) {
          auto it = gp.find(r);
          if (it == gp.end() || !F.equal(it->second, v)) {
            same = false;
            break;
          }
        }
      if (!same) {
        rep.agree = false;
        rep.mismatches.push_back({a, l, "graded differentials differ at column " + std::to_string(c)});
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// BGG page

struct BGGEntry {
  WeylElement w;
  Weight w_dot_lambda;
  long long levi_dim = 0;
  bool levi_dominant = true;
  long long grading = 0;  // a = -<w.lambda, H>
};

struct BGGRow {
  long long a = 0;
  std::vector<BGGEntry> entries;
  std::vector<std::string> summands;  // H^{i - l(w)}(W^v_{w.lambda}) when i is given
};

struct BGGPage {
  Weight lambda;
  Coweight H;
  std::vector<BGGRow> rows;
  std::optional<int> i;
  std::map<long long, std::vector<std::vector<int>>> c_steps;  // C^i: words with w.lambda(H) <= -i
  std::map<long long, std::vector<std::vector<int>>> d_steps;  // D_i: words with w.lambda(H) >= -i
  std::optional<long long> prime;
  std::optional<bool> p_small;
  std::vector<std::string> warnings;
  std::vector<std::string> discrepancies;  // alternative H versus mu
};

inline std::string word_string(const std::vector<int>& w) {
  if (w.empty()) return "e";
  std::string s;
  for (std::size_t k = 0; k < w.size(); ++k) s += (k ? " " : "") + std::string("s") + std::to_string(w[k] + 1);
  return s;
}

inline BGGPage bgg_page(const ParabolicData& pd, const Weight& lambda, std::optional<int> i = std::nullopt,
                        std::optional<Coweight> H = std::nullopt, std::optional<long long> prime = std::nullopt) {
  require(static_cast<int>(lambda.size()) == pd.rs.rank(), "weight has wrong length");
  if (!is_dominant(pd.rs, lambda)) throw Error("weight " + to_string(lambda) + " is not dominant");
  BGGPage page;
  page.lambda = lambda;
  page.H = H.value_or(pd.mu);
  require(static_cast<int>(page.H.size()) == pd.rs.rank(), "H has wrong length");
  page.i = i;
  page.prime = prime;
  if (prime) {
    page.p_small = is_p_small(pd.rs, lambda, *prime);
    if (!*page.p_small) page.warnings.push_back("weight is not p-small for p = " + std::to_string(*prime));
  }
  std::map<long long, BGGRow> rows;
  for (const auto& w : min_coset_reps(pd.rs, pd.J)) {
    BGGEntry e;
    e.w = w;
    e.w_dot_lambda = dot_act(pd.rs, w, lambda);
    e.grading = -pairing(e.w_dot_lambda, page.H);
    e.levi_dominant = is_dominant(pd.levi, e.w_dot_lambda);
    if (e.levi_dominant) {
      e.levi_dim = weyl_dimension(pd.levi, e.w_dot_lambda);
    } else {
      page.warnings.push_back("w.lambda = " + to_string(e.w_dot_lambda) + " is not dominant for the Levi");
    }
    if (H && *H != pd.mu) {
      const long long a_mu = -pairing(e.w_dot_lambda, pd.mu);
      if (a_mu != e.grading)
        page.discrepancies.push_back("w = " + word_string(w.word) + ": a = " + std::to_string(e.grading) +
                                     " for H, " + std::to_string(a_mu) + " for mu");
    }
    auto& row = rows[e.grading];
    row.a = e.grading;
    if (i) row.summands.push_back("H^" + std::to_string(*i - w.length) + "(W^v_" + to_string(e.w_dot_lambda) + ")");
    row.entries.push_back(e);
  }
  for (auto& [a, r] : rows) page.rows.push_back(r);
  // filtration steps over the range of occurring indices
  if (!page.rows.empty()) {
    const long long lo = page.rows.front().a, hi = page.rows.back().a;
    for (long long k = lo - 1; k <= hi + 1; ++k) {
      auto& cs = page.c_steps[k];
      auto& ds = page.d_steps[k];
      for (const auto& r : page.rows)
        for (const auto& e : r.entries) {
          const long long v = pairing(e.w_dot_lambda, page.H);
          if (v <= -k) cs.push_back(e.w.word);
          if (v >= -k) ds.push_back(e.w.word);
        }
    }
  }
  return page;
}

// ---------------------------------------------------------------------------
// Euler characteristic certification

struct EulerMismatch {
  int s;
  Weight xi;
  long long lhs, rhs;
};

struct EulerReport {
  bool pass = true;
  std::size_t checked = 0;
  std::vector<EulerMismatch> mismatches;
};

/// Character of Sym^s(u_-) indexed by degree s <= dmax.
inline std::vector<Character> sym_characters(const ParabolicData& pd, int dmax) {
  std::vector<Character> out(dmax + 1);
  const int n = static_cast<int>(pd.u_minus_roots.size());
  for (int s = 0; s <= dmax; ++s)
    for (const auto& m : multisets(n, s)) {
      Weight w(pd.rs.rank(), 0);
      for (int x : m) w = add(w, pd.u_minus_roots[x]);
      out[s][w] += 1;
    }
  return out;
}

inline Character multiply(const Character& a, const Character& b) {
  Character out;
  for (const auto& [x, m] : a)
    for (const auto& [y, k] : b) out[add(x, y)] += m * k;
  return out;
}

template <ExactField Field>
EulerReport euler_character_check(const FilteredComplex<Field>& cx, const BGGPage& page) {
  require(cx.V.character() == freudenthal_weights(cx.pd.rs, page.lambda),
          "module does not have the character of the Weyl module of highest weight " + to_string(page.lambda));
  EulerReport rep;
  std::map<std::pair<int, Weight>, long long> lhs, rhs;
  for (int a = 0; a <= cx.n; ++a)
    for (std::size_t i = 0; i < cx.term_dim(a); ++i) lhs[{cx.sym_degree(a, i), cx.weight(a, i)}] += (a % 2 ? -1 : 1);
  const auto symch = sym_characters(cx.pd, cx.dmax);
  for (const auto& row : page.rows)
    for (const auto& e : row.entries) {
      require(e.levi_dominant, "BGG entry is not dominant for the Levi");
      const auto ch = freudenthal_weights(cx.pd.levi, e.w_dot_lambda);
      const long long sign = e.w.length % 2 ? -1 : 1;
      for (int s = 0; s <= cx.dmax; ++s)
        for (const auto& [xi, m] : multiply(symch[s], ch)) rhs[{s, xi}] += sign * m;
    }
  std::set<std::pair<int, Weight>> keys;
  for (const auto& [k, v] : lhs) keys.insert(k);
  for (const auto& [k, v] : rhs) keys.insert(k);
  for (const auto& k : keys) {
    const long long l = lhs.count(k) ? lhs.at(k) : 0;
    const long long r = rhs.count(k) ? rhs.at(k) : 0;
    ++rep.checked;
    if (l != r) {
      rep.pass = false;
      rep.mismatches.push_back({k.first, k.second, l, r});
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Casimir-isotypic extraction

using GradedCharacter = std::map<std::tuple<int, int, Weight>, long long>;  // (a, s, weight) -> dim

template <ExactField Field>
struct IsotypicComplex {
  Weight lambda;
  mpq_class eigenvalue;                // c(lambda) for the trace-form normalization
  std::vector<Matrix<Field>> basis;    // per degree a: rows spanning the generalized eigenspace
  GradedCharacter character;
  bool commutes = true;                // [Omega, d] = 0
  bool subcomplex = true;              // d maps the eigenspaces into each other
};

/// L-constituents (highest weights with multiplicity) of a character that is W_L-invariant.
inline std::vector<std::pair<Weight, long long>> levi_constituents(const ParabolicData& pd, Character ch) {
  IVec rho_l(pd.rs.rank(), 0);
  for (int k : pd.levi_positive) rho_l = add(rho_l, pd.rs.positive_coroots()[k]);
  std::vector<std::pair<Weight, long long>> out;
  while (!ch.empty()) {
    auto best = ch.begin();
    for (auto it = ch.begin(); it != ch.end(); ++it)
      if (pairing(it->first, rho_l) > pairing(best->first, rho_l)) best = it;
    const Weight top = best->first;
    const long long mult = best->second;
    if (mult < 0 || !is_dominant(pd.levi, top)) throw Error("internal: character is not a sum of Levi characters", ErrorKind::check_failed);
    out.push_back({top, mult});
    accumulate(ch, freudenthal_weights(pd.levi, top), -mult);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool dot_linked(const RootSystem& rs, const Weight& a, const Weight& b) {
  const auto& r2 = rs.rho().doubled;
  return dominant_conjugate(rs, add(add(a, a), r2)) == dominant_conjugate(rs, add(add(b, b), r2));
}

namespace detail {

template <ExactField Field>
typename Field::value_type field_rational(const Field& F, const mpq_class& q) {
  try {
    return F.from_rational(q);
  } catch (const Error&) {
    throw Error("Casimir normalization " + q.get_str() + " is not invertible in " + F.name());
  }
}

// Casimir on term a of the complex: u ⊗ w -> u ⊗ Omega'(w) + 2 sum_g c_g (u x_g) ⊗ E_g w.
template <ExactField Field>
SparseMatrix<Field> casimir_on_term(const FilteredComplex<Field>& cx, int a, const LieStructure& L,
                                    const GModule<Field>& umod) {
  const auto& F = cx.V.field;
  const auto& pd = cx.pd;
  const auto& rs = pd.rs;
  auto W = tensor(wedge(umod, a), restrict_to(cx.V, pd.J));
  const int ns = rs.num_simple();
  // Omega' on W
  SparseMatrix<Field> om(F, W.dim, W.dim);
  for (std::size_t b = 0; b < W.dim; ++b) {
    mpq_class s = 0;
    for (int i = 0; i < ns; ++i)
      for (int j = 0; j < ns; ++j)
        s += L.gram_inv[i][j] * static_cast<long>(pairing(W.weights[b], rs.simple_coroot(i))) *
             static_cast<long>(pairing(W.weights[b], rs.simple_coroot(j)));
    for (int k : pd.u_plus) s += L.c[k] * L.N[k] * static_cast<long>(pairing(W.weights[b], rs.positive_coroots()[k]));
    om.add(b, b, field_rational(F, s));
  }
  auto rvW = root_vectors(W, L.recipe);
  for (int k : pd.levi_positive) {
    const auto& [E, Fm] = rvW[k];
    om = om + (E * Fm + Fm * E).scaled(field_rational(F, L.c[k]));
  }
  auto rvV = root_vectors(cx.V, L.recipe);
  SparseMatrix<Field> out(F, cx.term_dim(a), cx.term_dim(a));
  const std::size_t nw = cx.wedges[a].size();
  for (std::size_t m = 0; m < cx.monomials.size(); ++m)
    for (std::size_t w = 0; w < nw; ++w)
      for (std::size_t v = 0; v < cx.V.dim; ++v) {
        const std::size_t col = cx.encode(a, m, w, v);
        for (const auto& [r, val] : om.column(w * cx.V.dim + v))
          out.add(cx.encode(a, m, r / cx.V.dim, r % cx.V.dim), col, val);
        for (int s = 0; s < cx.n; ++s) {
          const long long mm = cx.mono_mul[m][s];
          if (mm < 0) continue;
          const int k = pd.u_plus[s];
          const auto coef = field_rational(F, 2 * L.c[k]);
          for (const auto& [r, val] : rvV[k].first.column(v))
            out.add(cx.encode(a, static_cast<std::size_t>(mm), w, r), col, F.mul(coef, val));
        }
      }
  return out;
}

// Dimension of ker (A)^N for a square dense matrix A.
template <ExactField Field>
Matrix<Field> generalized_kernel(const Matrix<Field>& A) {
  const std::size_t n = A.rows();
  if (n == 0) return Matrix<Field>(A.field(), 0, 0);
  Matrix<Field> P = A;
  std::size_t prev = rank(P);
  while (true) {
    Matrix<Field> Q = P * A;
    std::size_t r = rank(Q);
    if (r == prev) break;
    prev = r;
    P = Q;
  }
  return kernel(P);
}

}  // namespace detail

/// Casimir operators on every term, with [Omega, d] = 0 verified.
template <ExactField Field>
std::vector<SparseMatrix<Field>> casimir_operators(const FilteredComplex<Field>& cx, const LieStructure& L, bool& commutes) {
  auto umod = u_minus_module(cx.pd, cx.V.field);
  std::vector<SparseMatrix<Field>> om;
  for (int a = 0; a <= cx.n; ++a) om.push_back(detail::casimir_on_term(cx, a, L, umod));
  commutes = true;
  for (int a = 1; a <= cx.n; ++a)
    if (!(om[a - 1] * cx.diff[a] == cx.diff[a] * om[a])) commutes = false;
  return om;
}

/// Generalized c(lambda)-eigencomplex of the Casimir. Throws a casimir_collision
/// error when some Levi constituent of ∧(u_-) ⊗ V outside the dot-orbit of
/// lambda has the same eigenvalue.
template <ExactField Field>
IsotypicComplex<Field> casimir_isotypic(const FilteredComplex<Field>& cx, const Weight& lambda) {
  require(cx.variant == ComplexVariant::standard, "Casimir extraction runs on the std complex");
  const auto& pd = cx.pd;
  const auto& F = cx.V.field;
  const LieStructure L = lie_structure(pd.rs);
  IsotypicComplex<Field> res;
  res.lambda = lambda;
  res.eigenvalue = casimir_value(L, lambda);
  const auto target = detail::field_rational(F, res.eigenvalue);

  // collision scan over the Levi constituents of ∧^a(u_-) ⊗ V
  const auto vch = cx.V.character();
  for (int a = 0; a <= cx.n; ++a) {
    Character wch;
    for (const auto& S : cx.wedges[a]) {
      Weight w(pd.rs.rank(), 0);
      for (int s : S) w = add(w, pd.u_minus_roots[s]);
      wch[w] += 1;
    }
    for (const auto& [eta, mult] : levi_constituents(pd, multiply(wch, vch))) {
      if (dot_linked(pd.rs, eta, lambda)) continue;
      if (F.equal(detail::field_rational(F, casimir_value(L, eta)), target))
        throw Error("Casimir does not separate; extraction is an over-approximation (constituent " + to_string(eta) +
                        " in degree " + std::to_string(a) + ")",
                    ErrorKind::casimir_collision);
    }
  }

  bool commutes = true;
  const auto om = casimir_operators(cx, L, commutes);
  res.commutes = commutes;
  for (int a = 0; a <= cx.n; ++a) {
    const std::size_t N = cx.term_dim(a);
    std::map<Weight, std::vector<std::size_t>> blocks;
    for (std::size_t i = 0; i < N; ++i) blocks[cx.weight(a, i)].push_back(i);
    Matrix<Field> basis(F, 0, N);
    for (const auto& [xi, idx] : blocks) {
      auto restricted = [&](const std::vector<std::size_t>& sub) {
        Matrix<Field> A(F, sub.size(), sub.size());
        std::map<std::size_t, std::size_t> pos;
        for (std::size_t k = 0; k < sub.size(); ++k) pos[sub[k]] = k;
        for (std::size_t k = 0; k < sub.size(); ++k) {
          for (const auto& [r, v] : om[a].column(sub[k])) {
            auto it = pos.find(r);
            if (it != pos.end()) A(it->second, k) = v;
          }
          A(k, k) = F.sub(A(k, k), target);
        }
        return A;
      };
      auto ker = detail::generalized_kernel(restricted(idx));
      for (std::size_t r = 0; r < ker.rows(); ++r) {
        std::vector<typename Field::value_type> row(N, F.zero());
        for (std::size_t k = 0; k < idx.size(); ++k) row[idx[k]] = ker(r, k);
        basis.append_row(row);
      }
      // graded dimensions through the Sym-degree filtration F^{>= s}, which Omega preserves
      std::size_t above = 0;
      for (int s = cx.dmax; s >= 0; --s) {
        std::vector<std::size_t> sub;
        for (auto i : idx)
          if (cx.sym_degree(a, i) >= s) sub.push_back(i);
        const std::size_t dim_s = detail::generalized_kernel(restricted(sub)).rows();
        if (dim_s > above) res.character[{a, s, xi}] = static_cast<long long>(dim_s - above);
        above = dim_s;
      }
    }
    res.basis.push_back(basis);
  }
  for (int a = 1; a <= cx.n; ++a) {
    Subspace<Field> target_space(res.basis[a - 1]);
    for (std::size_t r = 0; r < res.basis[a].rows(); ++r)
      if (!target_space.contains(cx.diff[a].apply(res.basis[a].row(r)))) {
        res.subcomplex = false;
        break;
      }
  }
  return res;
}

/// The graded character predicted by the BGG term list:
/// (a, s, xi) -> sum over w in ^J W(a) of [Sym^s(u_-) ⊗ W_{w.lambda}](xi).
inline GradedCharacter bgg_term_character(const ParabolicData& pd, const Weight& lambda, int dmax) {
  GradedCharacter out;
  const auto symch = sym_characters(pd, dmax);
  for (const auto& w : min_coset_reps(pd.rs, pd.J)) {
    const Weight x = dot_act(pd.rs, w, lambda);
    const auto ch = freudenthal_weights(pd.levi, x);
    for (int s = 0; s <= dmax; ++s)
      for (const auto& [xi, m] : multiply(symch[s], ch)) out[{w.length, s, xi}] += m;
  }
  return out;
}

}  // namespace hodgep
