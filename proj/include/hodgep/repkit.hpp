#pragma once

// Finite-dimensional modules given by explicit Chevalley generator matrices
// and a weight basis. A module records which simple indices act on it, so the
// same type carries G-modules and modules over a Levi subgroup.

#include <gmpxx.h>

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "hodgep/arith/integer_lattice.hpp"
#include "hodgep/arith/sparse.hpp"
#include "hodgep/parabolic.hpp"
#include "hodgep/rootlattice.hpp"

namespace hodgep {

template <ExactField Field>
struct GModule {
  using value_type = typename Field::value_type;

  Field field{};
  RootSystem rs;
  std::vector<int> nodes;  // simple indices acting; e[k], f[k] belong to nodes[k]
  std::size_t dim = 0;
  std::vector<Weight> weights;
  std::vector<SparseMatrix<Field>> e, f;

  GModule(Field fld, RootSystem r, std::vector<int> nd, std::size_t d)
      : field(std::move(fld)), rs(std::move(r)), nodes(std::move(nd)), dim(d), weights(d, Weight(rs.rank(), 0)) {
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      e.emplace_back(field, dim, dim);
      f.emplace_back(field, dim, dim);
    }
  }

  int slot(int node) const {
    for (std::size_t k = 0; k < nodes.size(); ++k)
      if (nodes[k] == node) return static_cast<int>(k);
    return -1;
  }

  /// h for global simple index i, diagonal from the weight grading.
  SparseMatrix<Field> h(int i) const {
    SparseMatrix<Field> m(field, dim, dim);
    for (std::size_t b = 0; b < dim; ++b) m.add(b, b, field.from_int(pairing(weights[b], rs.simple_coroot(i))));
    return m;
  }

  /// Basis indices grouped by weight.
  std::map<Weight, std::vector<std::size_t>> weight_spaces() const {
    std::map<Weight, std::vector<std::size_t>> ws;
    for (std::size_t b = 0; b < dim; ++b) ws[weights[b]].push_back(b);
    return ws;
  }

  Character character() const {
    Character ch;
    for (const auto& w : weights) ch[w] += 1;
    return ch;
  }
};

/// First violated module axiom, or nullopt.
template <ExactField Field>
std::optional<std::string> check_module(const GModule<Field>& m) {
  const auto& F = m.field;
  if (m.weights.size() != m.dim) return "weight table has wrong size";
  for (std::size_t k = 0; k < m.nodes.size(); ++k) {
    const int i = m.nodes[k];
    const auto& ai = m.rs.simple_root(i);
    for (std::size_t c = 0; c < m.dim; ++c) {
      for (const auto& [r, v] : m.e[k].column(c))
        if (m.weights[r] != add(m.weights[c], ai))
          return "e_" + std::to_string(i + 1) + " does not raise weights by the simple root";
      for (const auto& [r, v] : m.f[k].column(c))
        if (m.weights[r] != add(m.weights[c], ai, -1))
          return "f_" + std::to_string(i + 1) + " does not lower weights by the simple root";
    }
    for (std::size_t l = 0; l < m.nodes.size(); ++l) {
      auto br = commutator(m.e[k], m.f[l]);
      if (k == l) {
        if (!(br == m.h(i))) return "[e_i, f_i] != h_i for i = " + std::to_string(i + 1);
      } else if (!br.is_zero()) {
        return "[e_i, f_j] != 0 for i = " + std::to_string(i + 1) + ", j = " + std::to_string(m.nodes[l] + 1);
      }
      // [h_i, e_j] = <a_j, a_i^v> e_j follows from the weight checks above
    }
  }
  (void)F;
  return std::nullopt;
}

template <ExactField Field>
GModule<Field> character_module(const Field& F, const RootSystem& rs, const std::vector<int>& nodes, const Weight& chi) {
  require(static_cast<int>(chi.size()) == rs.rank(), "character has wrong length");
  for (int i : nodes)
    require(pairing(chi, rs.simple_coroot(i)) == 0, "weight " + to_string(chi) + " is not a character of the group");
  GModule<Field> m(F, rs, nodes, 1);
  m.weights[0] = chi;
  return m;
}

template <ExactField Field>
GModule<Field> trivial_module(const Field& F, const RootSystem& rs, const std::vector<int>& nodes) {
  return character_module(F, rs, nodes, Weight(rs.rank(), 0));
}

inline std::vector<int> all_nodes(const RootSystem& rs) {
  std::vector<int> v(rs.num_simple());
  for (int i = 0; i < rs.num_simple(); ++i) v[i] = i;
  return v;
}

/// Highest weight of the defining module of a simple factor: pairs to 1 with
/// the first node of the factor chain and to 0 with every other acting coroot.
inline Weight factor_top_weight(const RootSystem& rs, const std::vector<int>& nodes, const SimpleFactor& fac) {
  auto sub = sub_datum(rs, nodes);
  int local = -1;
  for (std::size_t k = 0; k < nodes.size(); ++k)
    if (nodes[k] == fac.nodes[0]) local = static_cast<int>(k);
  auto w = fundamental_weight(sub, local);
  if (!w) throw Error("defining module has no integral highest weight in these coordinates");
  return *w;
}

/// Direct sum of the defining modules of the simple factors of the sub-datum on `nodes`.
template <ExactField Field>
GModule<Field> standard_module(const RootSystem& rs, const Field& F, std::vector<int> nodes = {}) {
  if (nodes.empty()) nodes = all_nodes(rs);
  std::sort(nodes.begin(), nodes.end());
  auto sub = sub_datum(rs, nodes);
  std::size_t total = 0;
  for (const auto& fac : sub.factors()) {
    if (fac.type == 'A') total += fac.nodes.size() + 1;
    else if (fac.type == 'C') total += 2 * fac.nodes.size();
    else throw Error("unsupported type (only A and C factors have standard modules)");
  }
  GModule<Field> m(F, rs, nodes, total);
  std::size_t off = 0;
  for (auto fac : sub.factors()) {
    for (auto& v : fac.nodes) v = nodes[v];  // local -> global
    const Weight top = factor_top_weight(rs, nodes, fac);
    const int n = static_cast<int>(fac.nodes.size());
    auto put = [&](std::vector<SparseMatrix<Field>>& mats, int node, std::size_t r, std::size_t c, long long v) {
      mats[m.slot(node)].add(off + r, off + c, F.from_int(v));
    };
    if (fac.type == 'A') {
      // v_0 .. v_n ; e_{c_i} v_{i+1} = v_i, f_{c_i} v_i = v_{i+1}
      Weight w = top;
      for (int i = 0; i <= n; ++i) {
        m.weights[off + i] = w;
        if (i < n) {
          put(m.e, fac.nodes[i], i, i + 1, 1);
          put(m.f, fac.nodes[i], i + 1, i, 1);
          w = add(w, rs.simple_root(fac.nodes[i]), -1);
        }
      }
      off += n + 1;
    } else {
      // v_1..v_n at positions 0..n-1, v_{-n}..v_{-1} at positions n..2n-1
      auto pos = [&](int s) { return s > 0 ? static_cast<std::size_t>(s - 1) : static_cast<std::size_t>(2 * n + s); };
      Weight w = top;
      for (int i = 1; i <= n; ++i) {
        m.weights[off + pos(i)] = w;
        w = add(w, rs.simple_root(fac.nodes[i - 1]), -1);  // after i = n this is the weight of v_{-n}
      }
      for (int i = n; i >= 1; --i) {
        m.weights[off + pos(-i)] = w;
        if (i > 1) w = add(w, rs.simple_root(fac.nodes[i - 2]), -1);
      }
      for (int i = 1; i < n; ++i) {
        const int node = fac.nodes[i - 1];
        // e_i = E_{i,i+1} - E_{-(i+1),-i}
        put(m.e, node, pos(i), pos(i + 1), 1);
        put(m.e, node, pos(-(i + 1)), pos(-i), -1);
        put(m.f, node, pos(i + 1), pos(i), 1);
        put(m.f, node, pos(-i), pos(-(i + 1)), -1);
      }
      put(m.e, fac.nodes[n - 1], pos(n), pos(-n), 1);
      put(m.f, fac.nodes[n - 1], pos(-n), pos(n), 1);
      off += 2 * n;
    }
  }
  return m;
}

template <ExactField Field>
void require_compatible(const GModule<Field>& a, const GModule<Field>& b) {
  require(a.field == b.field, "modules are over different fields");
  require(a.rs == b.rs && a.nodes == b.nodes, "modules are over different data");
}

template <ExactField Field>
GModule<Field> direct_sum(const GModule<Field>& a, const GModule<Field>& b) {
  require_compatible(a, b);
  GModule<Field> m(a.field, a.rs, a.nodes, a.dim + b.dim);
  for (std::size_t i = 0; i < a.dim; ++i) m.weights[i] = a.weights[i];
  for (std::size_t i = 0; i < b.dim; ++i) m.weights[a.dim + i] = b.weights[i];
  for (std::size_t k = 0; k < a.nodes.size(); ++k)
    for (int which = 0; which < 2; ++which) {
      const auto& x = which ? a.f[k] : a.e[k];
      const auto& y = which ? b.f[k] : b.e[k];
      auto& out = which ? m.f[k] : m.e[k];
      for (std::size_t c = 0; c < a.dim; ++c)
        for (const auto& [r, v] : x.column(c)) out.add(r, c, v);
      for (std::size_t c = 0; c < b.dim; ++c)
        for (const auto& [r, v] : y.column(c)) out.add(a.dim + r, a.dim + c, v);
    }
  return m;
}

/// Tensor product, basis index i * dim(b) + j.
template <ExactField Field>
GModule<Field> tensor(const GModule<Field>& a, const GModule<Field>& b) {
  require_compatible(a, b);
  const std::size_t nb = b.dim;
  GModule<Field> m(a.field, a.rs, a.nodes, a.dim * b.dim);
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = 0; j < nb; ++j) m.weights[i * nb + j] = add(a.weights[i], b.weights[j]);
  for (std::size_t k = 0; k < a.nodes.size(); ++k)
    for (int which = 0; which < 2; ++which) {
      const auto& x = which ? a.f[k] : a.e[k];
      const auto& y = which ? b.f[k] : b.e[k];
      auto& out = which ? m.f[k] : m.e[k];
      for (std::size_t i = 0; i < a.dim; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
          const std::size_t c = i * nb + j;
          for (const auto& [r, v] : x.column(i)) out.add(r * nb + j, c, v);
          for (const auto& [r, v] : y.column(j)) out.add(i * nb + r, c, v);
        }
    }
  return m;
}

template <ExactField Field>
GModule<Field> dual(const GModule<Field>& a) {
  GModule<Field> m(a.field, a.rs, a.nodes, a.dim);
  for (std::size_t i = 0; i < a.dim; ++i) m.weights[i] = negated(a.weights[i]);
  for (std::size_t k = 0; k < a.nodes.size(); ++k) {
    m.e[k] = a.e[k].transpose().scaled(a.field.neg(a.field.one()));
    m.f[k] = a.f[k].transpose().scaled(a.field.neg(a.field.one()));
  }
  return m;
}

/// Increasing a-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<int>> combinations(int n, int a) {
  std::vector<std::vector<int>> out;
  if (a < 0 || a > n) return out;
  std::vector<int> c(a);
  for (int i = 0; i < a; ++i) c[i] = i;
  while (true) {
    out.push_back(c);
    int i = a - 1;
    while (i >= 0 && c[i] == n - a + i) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < a; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

/// Non-decreasing a-tuples from {0..n-1} (monomials of degree a) in lexicographic order.
inline std::vector<std::vector<int>> multisets(int n, int a) {
  std::vector<std::vector<int>> out;
  if (a < 0 || (n == 0 && a > 0)) return out;
  std::vector<int> c(a, 0);
  while (true) {
    out.push_back(c);
    int i = a - 1;
    while (i >= 0 && c[i] == n - 1) --i;
    if (i < 0) break;
    ++c[i];
    for (int j = i + 1; j < a; ++j) c[j] = c[i];
  }
  return out;
}

namespace detail {

// Sort a tuple of distinct integers, returning the permutation sign.
inline int sort_with_sign(std::vector<int>& t) {
  int sign = 1;
  for (std::size_t i = 1; i < t.size(); ++i)
    for (std::size_t j = i; j > 0 && t[j - 1] > t[j]; --j) {
      std::swap(t[j - 1], t[j]);
      sign = -sign;
    }
  return sign;
}

}  // namespace detail

template <ExactField Field>
GModule<Field> wedge(const GModule<Field>& a, int deg) {
  const auto basis = combinations(static_cast<int>(a.dim), deg);
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t k = 0; k < basis.size(); ++k) index[basis[k]] = k;
  GModule<Field> m(a.field, a.rs, a.nodes, basis.size());
  const auto& F = a.field;
  for (std::size_t c = 0; c < basis.size(); ++c) {
    Weight w(a.rs.rank(), 0);
    for (int x : basis[c]) w = add(w, a.weights[x]);
    m.weights[c] = w;
  }
  for (std::size_t k = 0; k < a.nodes.size(); ++k)
    for (int which = 0; which < 2; ++which) {
      const auto& x = which ? a.f[k] : a.e[k];
      auto& out = which ? m.f[k] : m.e[k];
      for (std::size_t c = 0; c < basis.size(); ++c) {
        const auto& s = basis[c];
        for (int p = 0; p < deg; ++p)
          for (const auto& [r, v] : x.column(s[p])) {
            if (std::find(s.begin(), s.end(), static_cast<int>(r)) != s.end()) continue;
            auto t = s;
            t[p] = static_cast<int>(r);
            const int sign = detail::sort_with_sign(t);
            out.add(index.at(t), c, sign > 0 ? v : F.neg(v));
          }
      }
    }
  return m;
}

template <ExactField Field>
GModule<Field> sym(const GModule<Field>& a, int deg) {
  const auto basis = multisets(static_cast<int>(a.dim), deg);
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t k = 0; k < basis.size(); ++k) index[basis[k]] = k;
  GModule<Field> m(a.field, a.rs, a.nodes, basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c) {
    Weight w(a.rs.rank(), 0);
    for (int x : basis[c]) w = add(w, a.weights[x]);
    m.weights[c] = w;
  }
  for (std::size_t k = 0; k < a.nodes.size(); ++k)
    for (int which = 0; which < 2; ++which) {
      const auto& x = which ? a.f[k] : a.e[k];
      auto& out = which ? m.f[k] : m.e[k];
      for (std::size_t c = 0; c < basis.size(); ++c) {
        const auto& s = basis[c];
        for (int p = 0; p < deg; ++p)
          for (const auto& [r, v] : x.column(s[p])) {
            auto t = s;
            t[p] = static_cast<int>(r);
            std::sort(t.begin(), t.end());
            out.add(index.at(t), c, v);
          }
      }
    }
  return m;
}

/// Coordinates with respect to an independent set of rows, via an invertible
/// square block on pivot columns.
template <ExactField Field>
class CoordinateMap {
 public:
  using value_type = typename Field::value_type;
  explicit CoordinateMap(const Matrix<Field>& basis) : basis_(basis) {
    auto e = rref(basis);
    require(e.pivots.size() == basis.rows(), "internal: basis rows are dependent");
    pivots_ = e.pivots;
    std::vector<std::size_t> rows(basis.rows());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    inv_ = *inverse(basis.submatrix(rows, pivots_));
  }
  std::vector<value_type> coords(const std::vector<value_type>& v, bool verify = true) const {
    const auto& F = basis_.field();
    std::vector<value_type> c(basis_.rows(), F.zero());
    for (std::size_t j = 0; j < pivots_.size(); ++j) {
      const auto& x = v[pivots_[j]];
      if (F.is_zero(x)) continue;
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = F.add(c[i], F.mul(x, inv_(j, i)));
    }
    if (verify) {
      for (std::size_t col = 0; col < basis_.cols(); ++col) {
        auto s = F.zero();
        for (std::size_t i = 0; i < c.size(); ++i) s = F.add(s, F.mul(c[i], basis_(i, col)));
        if (!F.equal(s, v[col])) throw Error("internal: vector is not in the span of the submodule basis", ErrorKind::check_failed);
      }
    }
    return c;
  }

 private:
  Matrix<Field> basis_;
  std::vector<std::size_t> pivots_;
  Matrix<Field> inv_;
};

/// Submodule generated by a highest-weight vector of weight lambda (the first
/// one in echelon order when the space of such vectors is larger). Over Q the
/// basis is an integral basis of the saturated lattice, so that the action
/// matrices are integral and reduce modulo any prime.
template <ExactField Field>
GModule<Field> highest_weight_submodule(const GModule<Field>& m, const Weight& lambda) {
  const auto& F = m.field;
  const auto spaces = m.weight_spaces();
  auto it = spaces.find(lambda);
  if (it == spaces.end()) throw Error("no highest-weight vector of weight " + to_string(lambda));
  const auto& L = it->second;
  // local index within each weight space
  std::vector<std::size_t> local(m.dim);
  for (const auto& [w, idx] : spaces)
    for (std::size_t k = 0; k < idx.size(); ++k) local[idx[k]] = k;

  Matrix<Field> cond(F, 0, L.size());
  for (std::size_t k = 0; k < m.nodes.size(); ++k) {
    const Weight up = add(lambda, m.rs.simple_root(m.nodes[k]));
    auto ut = spaces.find(up);
    if (ut == spaces.end()) continue;
    Matrix<Field> block(F, ut->second.size(), L.size());
    for (std::size_t c = 0; c < L.size(); ++c)
      for (const auto& [r, v] : m.e[k].column(L[c])) block(local[r], c) = v;
    for (std::size_t r = 0; r < block.rows(); ++r) cond.append_row(block.row(r));
  }
  auto ker = kernel(cond);
  if (ker.rows() == 0) throw Error("no highest-weight vector of weight " + to_string(lambda));

  // generate by the f's, weight by weight in order of depth
  std::map<Weight, Matrix<Field>> span;  // weight -> basis rows (local coordinates)
  std::vector<Weight> order;
  span.emplace(lambda, Subspace<Field>(Matrix<Field>::from_rows(F, L.size(), {ker.row(0)})).basis());
  std::vector<Weight> level{lambda};
  while (!level.empty()) {
    std::map<Weight, Matrix<Field>> next;
    for (const auto& w : level) {
      order.push_back(w);
      const auto& src = spaces.at(w);
      const auto& rows = span.at(w);
      for (std::size_t k = 0; k < m.nodes.size(); ++k) {
        const Weight down = add(w, m.rs.simple_root(m.nodes[k]), -1);
        auto dt = spaces.find(down);
        if (dt == spaces.end()) continue;
        auto [nt, fresh] = next.try_emplace(down, Matrix<Field>(F, 0, dt->second.size()));
        for (std::size_t b = 0; b < rows.rows(); ++b) {
          std::vector<typename Field::value_type> img(dt->second.size(), F.zero());
          bool nz = false;
          for (std::size_t c = 0; c < src.size(); ++c) {
            const auto& coef = rows(b, c);
            if (F.is_zero(coef)) continue;
            for (const auto& [r, v] : m.f[k].column(src[c])) {
              img[local[r]] = F.add(img[local[r]], F.mul(coef, v));
              nz = true;
            }
          }
          if (nz) nt->second.append_row(img);
        }
      }
    }
    level.clear();
    for (auto& [w, rows] : next) {
      Subspace<Field> s(rows);
      if (s.dim() == 0) continue;
      span.emplace(w, s.basis());
      level.push_back(w);
    }
    std::sort(level.begin(), level.end(), std::greater<>());
  }

  if constexpr (std::is_same_v<Field, Rationals>) {
    for (auto& [w, rows] : span) {
      ZMat z = saturate(rows);
      Matrix<Rationals> q(F, z.size(), rows.cols());
      for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = 0; j < rows.cols(); ++j) q(i, j) = mpq_class(z[i][j]);
      rows = q;
    }
  }

  std::size_t total = 0;
  std::map<Weight, std::size_t> offset;
  for (const auto& w : order) {
    offset[w] = total;
    total += span.at(w).rows();
  }
  GModule<Field> out(F, m.rs, m.nodes, total);
  std::map<Weight, CoordinateMap<Field>> coord;
  for (const auto& w : order) coord.emplace(w, CoordinateMap<Field>(span.at(w)));
  for (const auto& w : order) {
    const auto& rows = span.at(w);
    const auto& src = spaces.at(w);
    for (std::size_t b = 0; b < rows.rows(); ++b) {
      const std::size_t col = offset[w] + b;
      out.weights[col] = w;
      for (std::size_t k = 0; k < m.nodes.size(); ++k)
        for (int which = 0; which < 2; ++which) {
          const Weight tgt = add(w, m.rs.simple_root(m.nodes[k]), which ? -1 : 1);
          const auto& x = which ? m.f[k] : m.e[k];
          auto tt = spaces.find(tgt);
          if (tt == spaces.end()) continue;
          std::vector<typename Field::value_type> img(tt->second.size(), F.zero());
          bool nz = false;
          for (std::size_t c = 0; c < src.size(); ++c) {
            const auto& coef = rows(b, c);
            if (F.is_zero(coef)) continue;
            for (const auto& [r, v] : x.column(src[c])) {
              img[local[r]] = F.add(img[local[r]], F.mul(coef, v));
              nz = true;
            }
          }
          if (!nz) continue;
          auto ct = coord.find(tgt);
          bool all_zero = std::all_of(img.begin(), img.end(), [&](const auto& v) { return F.is_zero(v); });
          if (all_zero) continue;
          if (ct == coord.end()) throw Error("internal: generated span is not a submodule", ErrorKind::check_failed);
          auto c = ct->second.coords(img);
          auto& mat = which ? out.f[k] : out.e[k];
          for (std::size_t i = 0; i < c.size(); ++i) mat.add(offset[tgt] + i, col, c[i]);
        }
    }
  }
  if constexpr (std::is_same_v<Field, Rationals>) {
    const auto sub = sub_datum(m.rs, m.nodes);
    if (is_dominant(sub, lambda) && total != static_cast<std::size_t>(weyl_dimension(sub, lambda)))
      throw Error("internal: highest-weight submodule dimension differs from the Weyl dimension", ErrorKind::check_failed);
  }
  return out;
}

/// Reduction of a module with integral structure constants modulo p.
inline GModule<GaloisField> reduce_mod_p(const GModule<Rationals>& m, const GaloisField& F) {
  GModule<GaloisField> out(F, m.rs, m.nodes, m.dim);
  out.weights = m.weights;
  auto conv = [&](const mpq_class& q) { return F.from_rational(q); };
  for (std::size_t k = 0; k < m.nodes.size(); ++k) {
    out.e[k] = m.e[k].convert(F, conv);
    out.f[k] = m.f[k].convert(F, conv);
  }
  return out;
}

/// Module over the Levi sub-datum obtained by restricting to the nodes in J.
template <ExactField Field>
GModule<Field> restrict_to(const GModule<Field>& m, const std::vector<int>& nodes) {
  GModule<Field> out(m.field, m.rs, nodes, m.dim);
  out.weights = m.weights;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const int s = m.slot(nodes[k]);
    require(s >= 0, "restriction to a node that does not act");
    out.e[k] = m.e[s];
    out.f[k] = m.f[s];
  }
  return out;
}

/// The Weyl module of highest weight lambda over Q: the highest-weight submodule
/// of a tensor product of symmetric powers of fundamental modules, twisted by a
/// central character.
inline GModule<Rationals> weyl_module_q(const RootSystem& rs, const Weight& lambda, std::vector<int> nodes = {}) {
  if (nodes.empty()) nodes = all_nodes(rs);
  std::sort(nodes.begin(), nodes.end());
  const Rationals Q;
  auto sub = sub_datum(rs, nodes);
  require(static_cast<int>(lambda.size()) == rs.rank(), "weight has wrong length");
  if (!is_dominant(sub, lambda)) throw Error("weight " + to_string(lambda) + " is not dominant");
  GModule<Rationals> acc = trivial_module(Q, rs, nodes);
  Weight top(rs.rank(), 0);
  for (const auto& fac0 : sub.factors()) {
    SimpleFactor fac = fac0;
    for (auto& v : fac.nodes) v = nodes[v];
    if (fac.type != 'A' && fac.type != 'C') throw Error("unsupported type (only A and C factors are supported)");
    auto std_mod = standard_module(rs, Q, fac.nodes);
    std_mod = restrict_to(std_mod, fac.nodes);
    for (std::size_t k = 0; k < fac.nodes.size(); ++k) {
      const long long a = pairing(lambda, rs.simple_coroot(fac.nodes[k]));
      if (a == 0) continue;
      // fundamental module: highest-weight part of the (k+1)-th exterior power
      auto wk = wedge(std_mod, static_cast<int>(k) + 1);
      Weight fw = std_mod.weights[0];
      for (std::size_t t = 1; t <= k; ++t) fw = add(fw, std_mod.weights[t]);
      auto fund = highest_weight_submodule(wk, fw);
      auto power = sym(fund, static_cast<int>(a));
      // extend to all nodes (other factors act trivially)
      GModule<Rationals> ext(Q, rs, nodes, power.dim);
      ext.weights = power.weights;
      for (std::size_t s = 0; s < fac.nodes.size(); ++s) {
        const int g = ext.slot(fac.nodes[s]);
        ext.e[g] = power.e[s];
        ext.f[g] = power.f[s];
      }
      acc = tensor(acc, ext);
      top = add(top, fw, a);
    }
  }
  const Weight central = add(lambda, top, -1);
  acc = tensor(acc, character_module(Q, rs, nodes, central));
  return highest_weight_submodule(acc, lambda);
}

template <ExactField Field>
GModule<Field> weyl_module(const RootSystem& rs, const Field& F, const Weight& lambda, std::vector<int> nodes = {}) {
  auto q = weyl_module_q(rs, lambda, std::move(nodes));
  if constexpr (std::is_same_v<Field, Rationals>) {
    return q;
  } else {
    return reduce_mod_p(q, F);
  }
}

// ---------------------------------------------------------------------------
// Root vectors, invariant form and Casimir data

/// How to build E_b, F_b: simple generators for simple roots, otherwise
/// E_b = [E_i, E_g], F_b = [F_g, F_i] with the smallest i such that g = b - a_i > 0.
struct RootRecipe {
  int simple = -1;
  int i = -1;
  int gamma = -1;
};

struct LieStructure {
  RootSystem rs;
  std::vector<RootRecipe> recipe;
  std::vector<mpq_class> c;   // 1 / tr(E_a F_a) in the faithful module
  std::vector<mpq_class> N;   // [E_a, F_a] = N_a h_{a^v}
  std::vector<std::vector<mpq_class>> gram, gram_inv;  // tr(h_i h_j)
};

inline std::vector<RootRecipe> root_recipes(const RootSystem& rs) {
  const auto& pos = rs.positive_roots();
  std::vector<RootRecipe> out(pos.size());
  for (std::size_t k = 0; k < pos.size(); ++k) {
    const auto& sc = rs.positive_root_simple_coords()[k];
    if (rs.height(static_cast<int>(k)) == 1) {
      for (int i = 0; i < rs.num_simple(); ++i)
        if (sc[i] == 1) out[k].simple = i;
      continue;
    }
    for (int i = 0; i < rs.num_simple(); ++i) {
      auto r = rs.find_root(add(pos[k], rs.simple_root(i), -1));
      if (r && r->second > 0) {
        out[k].i = i;
        out[k].gamma = r->first;
        break;
      }
    }
  }
  return out;
}

/// E_a and F_a on a module, for the positive roots whose recipe only uses acting
/// nodes; missing ones are left empty (zero-sized).
template <ExactField Field>
std::vector<std::pair<SparseMatrix<Field>, SparseMatrix<Field>>> root_vectors(const GModule<Field>& m,
                                                                             const std::vector<RootRecipe>& rec) {
  std::vector<std::pair<SparseMatrix<Field>, SparseMatrix<Field>>> out(rec.size());
  std::vector<bool> ok(rec.size(), false);
  for (std::size_t k = 0; k < rec.size(); ++k) {
    if (rec[k].simple >= 0) {
      const int s = m.slot(rec[k].simple);
      if (s < 0) continue;
      out[k] = {m.e[s], m.f[s]};
      ok[k] = true;
    } else {
      const int s = m.slot(rec[k].i);
      if (s < 0 || !ok[rec[k].gamma]) continue;
      const auto& [eg, fg] = out[rec[k].gamma];
      out[k] = {commutator(m.e[s], eg), commutator(fg, m.f[s])};
      ok[k] = true;
    }
  }
  return out;
}

template <ExactField Field>
typename Field::value_type trace_product(const SparseMatrix<Field>& a, const SparseMatrix<Field>& b) {
  const auto& F = a.field();
  auto s = F.zero();
  for (std::size_t j = 0; j < b.cols(); ++j)
    for (const auto& [k, v] : b.column(j)) {
      auto x = a.at(j, k);
      if (!F.is_zero(x)) s = F.add(s, F.mul(x, v));
    }
  return s;
}

inline LieStructure lie_structure(const RootSystem& rs) {
  const Rationals Q;
  LieStructure L{rs, root_recipes(rs), {}, {}, {}, {}};
  auto faithful = standard_module(rs, Q);
  auto rv = root_vectors(faithful, L.recipe);
  const auto& cor = rs.positive_coroots();
  for (std::size_t k = 0; k < rv.size(); ++k) {
    const auto& [E, F] = rv[k];
    mpq_class t = trace_product(E, F);
    if (sgn(t) == 0) throw Error("internal: degenerate trace form on a root pair", ErrorKind::check_failed);
    L.c.push_back(1 / t);
    auto br = commutator(E, F);
    mpq_class n = 0;
    for (std::size_t b = 0; b < faithful.dim; ++b) {
      long long p = pairing(faithful.weights[b], cor[k]);
      mpq_class d = br.at(b, b);
      if (p != 0) {
        n = d / static_cast<long>(p);
        break;
      }
    }
    for (std::size_t b = 0; b < faithful.dim; ++b)
      if (br.at(b, b) != n * static_cast<long>(pairing(faithful.weights[b], cor[k])) || br.column(b).size() > 1)
        throw Error("internal: [E_a, F_a] is not a multiple of the coroot", ErrorKind::check_failed);
    L.N.push_back(n);
  }
  const int n = rs.num_simple();
  Matrix<Rationals> G(Q, n, n);
  L.gram.assign(n, std::vector<mpq_class>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      mpq_class s = 0;
      for (const auto& w : faithful.weights)
        s += static_cast<long>(pairing(w, rs.simple_coroot(i)) * pairing(w, rs.simple_coroot(j)));
      G(i, j) = s;
      L.gram[i][j] = s;
    }
  auto Gi = inverse(G);
  require(Gi.has_value(), "internal: trace form is degenerate on the Cartan");
  L.gram_inv.assign(n, std::vector<mpq_class>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) L.gram_inv[i][j] = (*Gi)(i, j);
  return L;
}

/// Eigenvalue of the Casimir on a highest-weight vector of weight lambda.
inline mpq_class casimir_value(const LieStructure& L, const Weight& lambda) {
  const int n = L.rs.num_simple();
  mpq_class s = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      s += L.gram_inv[i][j] * static_cast<long>(pairing(lambda, L.rs.simple_coroot(i))) *
           static_cast<long>(pairing(lambda, L.rs.simple_coroot(j)));
  const auto& cor = L.rs.positive_coroots();
  for (std::size_t k = 0; k < cor.size(); ++k) s += L.c[k] * L.N[k] * static_cast<long>(pairing(lambda, cor[k]));
  return s;
}

/// Casimir operator on a module on which the full group acts.
template <ExactField Field>
SparseMatrix<Field> casimir_matrix(const GModule<Field>& m, const LieStructure& L) {
  require(m.nodes == all_nodes(m.rs), "Casimir needs the full group action");
  const auto& F = m.field;
  const int n = m.rs.num_simple();
  SparseMatrix<Field> om(F, m.dim, m.dim);
  for (std::size_t b = 0; b < m.dim; ++b) {
    mpq_class s = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        s += L.gram_inv[i][j] * static_cast<long>(pairing(m.weights[b], m.rs.simple_coroot(i))) *
             static_cast<long>(pairing(m.weights[b], m.rs.simple_coroot(j)));
    om.add(b, b, F.from_rational(s));
  }
  auto rv = root_vectors(m, L.recipe);
  for (std::size_t k = 0; k < rv.size(); ++k) {
    const auto& [E, Fm] = rv[k];
    om = om + (E * Fm + Fm * E).scaled(F.from_rational(L.c[k]));
  }
  return om;
}

// ---------------------------------------------------------------------------
// u_- and the Kostant-type identity

/// u_- with basis F_g (g running over the roots of u_+ in positive-root order),
/// as a module over the Levi (nodes J) via the adjoint action.
template <ExactField Field>
GModule<Field> u_minus_module(const ParabolicData& pd, const Field& F) {
  const auto& rs = pd.rs;
  const std::size_t d = pd.u_plus.size();
  GModule<Field> m(F, rs, pd.J, d);
  for (std::size_t k = 0; k < d; ++k) m.weights[k] = negated(rs.positive_roots()[pd.u_plus[k]]);
  if (d == 0 || pd.J.empty()) return m;
  const Rationals Q;
  auto faithful = standard_module(rs, Q);
  auto rv = root_vectors(faithful, root_recipes(rs));
  std::map<int, std::size_t> pos_of;
  for (std::size_t k = 0; k < d; ++k) pos_of[pd.u_plus[k]] = k;
  for (std::size_t s = 0; s < pd.J.size(); ++s) {
    const int j = pd.J[s];
    for (int which = 0; which < 2; ++which) {
      const auto& gen = which ? faithful.f[j] : faithful.e[j];
      for (std::size_t k = 0; k < d; ++k) {
        auto br = commutator(gen, rv[pd.u_plus[k]].second);
        if (br.is_zero()) continue;
        // weight of the bracket is -g +/- a_j, a negative root in u_-
        IVec target = add(negated(rs.positive_roots()[pd.u_plus[k]]), rs.simple_root(j), which ? -1 : 1);
        auto r = rs.find_root(target);
        require(r && r->second < 0 && pos_of.count(r->first), "internal: adjoint action leaves u_-");
        const auto& Fg = rv[r->first].second;
        // proportionality constant
        mpq_class ratio = 0;
        bool found = false;
        for (std::size_t c = 0; c < Fg.cols() && !found; ++c)
          for (const auto& [row, v] : Fg.column(c)) {
            ratio = br.at(row, c) / v;
            found = true;
            break;
          }
        require(found && br == Fg.scaled(ratio), "internal: adjoint action is not proportional to a root vector");
        auto& out = which ? m.f[s] : m.e[s];
        out.add(pos_of[r->first], k, F.from_rational(ratio));
      }
    }
  }
  return m;
}

struct KostantReport {
  int a = 0;
  bool equal = false;
  Character wedge_character;
  Character levi_character;
  std::vector<std::pair<std::vector<int>, Weight>> terms;  // (w, w.0)
};

inline KostantReport kostant_check(const ParabolicData& pd, int a) {
  const int d = static_cast<int>(pd.u_minus_roots.size());
  require(a >= 0 && a <= d, "degree out of range");
  KostantReport rep;
  rep.a = a;
  for (const auto& s : combinations(d, a)) {
    Weight w(pd.rs.rank(), 0);
    for (int x : s) w = add(w, pd.u_minus_roots[x]);
    rep.wedge_character[w] += 1;
  }
  const Weight zero(pd.rs.rank(), 0);
  for (const auto& w : length_fiber(min_coset_reps(pd.rs, pd.J), a)) {
    Weight x = dot_act(pd.rs, w, zero);
    if (!is_dominant(pd.levi, x))
      throw Error("w.0 = " + to_string(x) + " is not dominant for the Levi", ErrorKind::check_failed);
    rep.terms.push_back({w.word, x});
    accumulate(rep.levi_character, freudenthal_weights(pd.levi, x));
  }
  rep.equal = rep.wedge_character == rep.levi_character;
  return rep;
}

}  // namespace hodgep
