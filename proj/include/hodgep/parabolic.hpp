#pragma once

// Parabolic data attached to a cocharacter mu: the Levi index set J, the
// roots of u_- (negative mu-pairing), minimal coset representatives ^J W
// and the Bruhat order.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hodgep/rootlattice.hpp"

namespace hodgep {

struct ParabolicData {
  RootSystem rs;
  Coweight mu;
  std::vector<int> J;                   // simple indices with <a_i, mu> = 0
  std::vector<int> levi_positive;       // indices into rs.positive_roots()
  std::vector<int> u_plus;              // positive roots with <a, mu> > 0
  std::vector<IVec> u_minus_roots;      // their negatives, the T-weights of u_-
  RootSystem levi;                      // sub-datum on the simple roots in J

  bool minuscule() const {
    for (int k : u_plus)
      if (pairing(rs.positive_roots()[k], mu) != 1) return false;
    return true;
  }
  /// Global simple index of the Levi simple index k.
  int levi_node(int k) const { return J[k]; }
};

inline RootSystem sub_datum(const RootSystem& rs, const std::vector<int>& nodes) {
  RootDatum d;
  d.label = rs.datum().label + "[";
  for (std::size_t k = 0; k < nodes.size(); ++k) d.label += (k ? "," : "") + std::to_string(nodes[k] + 1);
  d.label += "]";
  d.rank = rs.rank();
  for (int i : nodes) {
    require(i >= 0 && i < rs.num_simple(), "simple root index out of range");
    d.simple_roots.push_back(rs.simple_root(i));
    d.simple_coroots.push_back(rs.simple_coroot(i));
  }
  return RootSystem(d);
}

inline ParabolicData levi_subset(const RootSystem& rs, const Coweight& mu) {
  require(static_cast<int>(mu.size()) == rs.rank(), "cocharacter has wrong length");
  std::vector<int> J;
  for (int i = 0; i < rs.num_simple(); ++i)
    if (pairing(rs.simple_root(i), mu) == 0) J.push_back(i);
  std::vector<int> levi_pos, u_plus;
  std::vector<IVec> u_minus;
  std::vector<int> u_minus_src;
  const auto& roots = rs.positive_roots();
  for (int k = 0; k < static_cast<int>(roots.size()); ++k) {
    const long long c = pairing(roots[k], mu);
    if (c == 0) levi_pos.push_back(k);
    else if (c > 0) u_plus.push_back(k);
    else u_minus_src.push_back(k);
  }
  // u_- consists of the roots with negative mu-pairing: -a for a in u_plus, plus
  // positive roots with negative pairing when mu is not dominant.
  for (int k : u_plus) u_minus.push_back(negated(roots[k]));
  for (int k : u_minus_src) u_minus.push_back(roots[k]);
  ParabolicData pd{rs, mu, J, levi_pos, u_plus, u_minus, sub_datum(rs, J)};
  return pd;
}

inline bool mu_dominant(const ParabolicData& pd) {
  for (int i = 0; i < pd.rs.num_simple(); ++i)
    if (pairing(pd.rs.simple_root(i), pd.mu) < 0) return false;
  return true;
}

/// Minimal length representatives of W_J \ W, sorted by (length, word).
inline std::vector<std::size_t> min_coset_indices(const RootSystem& rs, const std::vector<int>& J) {
  for (int j : J) require(j >= 0 && j < rs.num_simple(), "invalid simple root index " + std::to_string(j));
  std::vector<std::size_t> out;
  const auto& W = rs.weyl_group();
  for (std::size_t k = 0; k < W.size(); ++k) {
    const auto& winv = W[rs.inverse(k)];
    bool ok = true;
    for (int j : J) {
      auto r = rs.find_root(winv.act(rs.simple_root(j)));
      if (!r || r->second < 0) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(k);
  }
  return out;  // weyl_group() is already sorted by (length, word)
}

inline std::vector<WeylElement> min_coset_reps(const RootSystem& rs, const std::vector<int>& J) {
  std::vector<WeylElement> out;
  for (auto k : min_coset_indices(rs, J)) out.push_back(rs.weyl_group()[k]);
  return out;
}

inline std::vector<WeylElement> length_fiber(const std::vector<WeylElement>& reps, int a) {
  std::vector<WeylElement> out;
  for (const auto& w : reps)
    if (w.length == a) out.push_back(w);
  return out;
}

/// Elements of the parabolic subgroup W_J (generated by s_j, j in J).
inline std::vector<std::size_t> parabolic_subgroup(const RootSystem& rs, const std::vector<int>& J) {
  std::set<std::size_t> seen{0};
  std::vector<std::size_t> queue{0};
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (int j : J) {
      auto v = rs.left_mult(j, queue[q]);
      if (seen.insert(v).second) queue.push_back(v);
    }
  return {seen.begin(), seen.end()};
}

/// Bruhat order via the lifting property: for s a left descent of v,
/// u <= v iff min(u, su) <= sv.
class BruhatOrder {
 public:
  explicit BruhatOrder(RootSystem rs) : rs_(std::move(rs)) {}

  bool leq(std::size_t u, std::size_t v) const {
    const auto& W = rs_.weyl_group();
    if (W[u].length > W[v].length) return false;
    if (W[v].length == 0) return u == v;
    auto key = std::make_pair(u, v);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    const int s = W[v].word[0];  // a left descent of v
    const std::size_t sv = rs_.left_mult(s, v);
    const std::size_t su = rs_.left_mult(s, u);
    const std::size_t m = W[su].length < W[u].length ? su : u;
    bool r = leq(m, sv);
    memo_[key] = r;
    return r;
  }

 private:
  RootSystem rs_;
  mutable std::map<std::pair<std::size_t, std::size_t>, bool> memo_;
};

inline bool bruhat_leq(const RootSystem& rs, const WeylElement& w, const WeylElement& v) {
  return BruhatOrder(rs).leq(rs.index_of(w), rs.index_of(v));
}

}  // namespace hodgep
