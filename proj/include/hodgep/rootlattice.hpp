#pragma once

// Root data in explicit coordinates: X*(T) = Z^rank with simple roots and
// coroots given as integer vectors and the pairing being the dot product.

#include <gmpxx.h>

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hodgep/arith/integer_lattice.hpp"
#include "hodgep/error.hpp"

namespace hodgep {

using IVec = std::vector<long long>;
using Weight = IVec;
using Coweight = IVec;
/// Weight multiset with exact multiplicities, ordered for stable output.
using Character = std::map<Weight, long long>;

inline long long pairing(const IVec& x, const IVec& y) {
  require(x.size() == y.size(), "pairing: dimension mismatch");
  long long s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline IVec add(IVec a, const IVec& b, long long scale = 1) {
  require(a.size() == b.size(), "weight dimension mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += scale * b[i];
  return a;
}

inline IVec negated(IVec a) {
  for (auto& x : a) x = -x;
  return a;
}

inline std::string to_string(const IVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

struct RootDatum {
  std::string label;
  int rank = 0;
  std::vector<IVec> simple_roots;
  std::vector<IVec> simple_coroots;
};

/// A weight with a denominator of 2 allowed; `doubled` holds 2x.
struct HalfWeight {
  IVec doubled;
  bool integral() const {
    return std::all_of(doubled.begin(), doubled.end(), [](long long x) { return x % 2 == 0; });
  }
  IVec halved() const {
    require(integral(), "weight is not integral");
    IVec v(doubled.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = doubled[i] / 2;
    return v;
  }
};

struct WeylElement {
  std::vector<int> word;           // lexicographically first reduced word
  std::vector<IVec> matrix;        // action on X*(T), column-vector convention
  int length = 0;

  IVec act(const IVec& x) const {
    IVec y(matrix.size(), 0);
    for (std::size_t i = 0; i < matrix.size(); ++i) y[i] = pairing(matrix[i], x);
    return y;
  }
};

/// Connected component of the Dynkin diagram, nodes listed along the chain.
/// For type C the long simple root is the last node.
struct SimpleFactor {
  char type = 'A';  // 'A', 'C', or '?' for anything else
  std::vector<int> nodes;
};

/// Validated root datum together with its roots and Weyl group. Copies share
/// the same immutable data.
class RootSystem {
 public:
  static constexpr std::size_t max_roots = 20000;
  static constexpr std::size_t max_weyl_order = 100000;

  explicit RootSystem(RootDatum d) {
    auto data = std::make_shared<Data>();
    data->datum = std::move(d);
    build(*data);
    data_ = std::move(data);
  }

  const RootDatum& datum() const { return data_->datum; }
  int rank() const { return data_->datum.rank; }
  int num_simple() const { return static_cast<int>(data_->datum.simple_roots.size()); }
  const IVec& simple_root(int i) const { return data_->datum.simple_roots[i]; }
  const IVec& simple_coroot(int i) const { return data_->datum.simple_coroots[i]; }
  long long cartan(int i, int j) const { return data_->cartan[i][j]; }

  /// Positive roots ordered by height, then simple coordinates descending.
  const std::vector<IVec>& positive_roots() const { return data_->pos_roots; }
  const std::vector<IVec>& positive_coroots() const { return data_->pos_coroots; }
  const std::vector<IVec>& positive_root_simple_coords() const { return data_->pos_simple; }
  int height(int k) const {
    const auto& c = data_->pos_simple[k];
    return static_cast<int>(std::accumulate(c.begin(), c.end(), 0LL));
  }
  /// Index of a positive root and +1, or -(index+1) for its negative; nullopt if not a root.
  std::optional<std::pair<int, int>> find_root(const IVec& x) const {
    auto it = data_->root_lookup.find(x);
    if (it == data_->root_lookup.end()) return std::nullopt;
    return it->second;
  }
  /// Simple coordinates of an element of the root lattice (error otherwise).
  IVec simple_coordinates(const IVec& x) const {
    ZMat a(rank(), ZVec(num_simple()));
    for (int r = 0; r < rank(); ++r)
      for (int i = 0; i < num_simple(); ++i) a[r][i] = static_cast<long>(simple_root(i)[r]);
    ZVec b(rank());
    for (int r = 0; r < rank(); ++r) b[r] = static_cast<long>(x[r]);
    auto sol = integer_solve(a, num_simple(), b);
    if (!sol) throw Error("weight " + to_string(x) + " is not in the root lattice");
    IVec c(num_simple());
    for (int i = 0; i < num_simple(); ++i) c[i] = sol->at(i).get_si();
    return c;
  }

  HalfWeight rho() const { return {data_->rho2}; }
  const std::vector<SimpleFactor>& factors() const { return data_->factors; }

  const std::vector<WeylElement>& weyl_group() const { return data_->weyl; }
  std::size_t weyl_order() const { return data_->weyl.size(); }
  /// Index of s_i * w in weyl_group().
  std::size_t left_mult(int i, std::size_t w) const { return data_->left_mult[i][w]; }
  std::size_t inverse(std::size_t w) const { return data_->inverse[w]; }
  std::size_t longest() const { return data_->weyl.size() - 1; }
  std::size_t index_of(const WeylElement& w) const {
    auto key = w.act(data_->rho2);
    auto it = data_->weyl_lookup.find(key);
    require(it != data_->weyl_lookup.end(), "element does not belong to this Weyl group");
    return it->second;
  }
  std::size_t index_of_word(const std::vector<int>& word) const {
    std::size_t w = 0;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      require(*it >= 0 && *it < num_simple(), "simple reflection index out of range");
      w = left_mult(*it, w);
    }
    return w;
  }

  bool operator==(const RootSystem& o) const {
    return data_ == o.data_ || (datum().rank == o.datum().rank && datum().simple_roots == o.datum().simple_roots &&
                                datum().simple_coroots == o.datum().simple_coroots);
  }

 private:
  struct Data {
    RootDatum datum;
    std::vector<std::vector<long long>> cartan;
    std::vector<IVec> pos_roots, pos_coroots, pos_simple;
    std::map<IVec, std::pair<int, int>> root_lookup;
    IVec rho2;
    std::vector<SimpleFactor> factors;
    std::vector<WeylElement> weyl;
    std::vector<std::vector<std::size_t>> left_mult;
    std::vector<std::size_t> inverse;
    std::map<IVec, std::size_t> weyl_lookup;
  };

  static void build(Data& d) {
    const auto& rd = d.datum;
    require(rd.rank >= 0, "rank must be non-negative");
    const int n = static_cast<int>(rd.simple_roots.size());
    require(static_cast<int>(rd.simple_coroots.size()) == n, "number of simple roots and coroots differ");
    require(n <= rd.rank, "more simple roots than the rank");
    for (int i = 0; i < n; ++i) {
      require(static_cast<int>(rd.simple_roots[i].size()) == rd.rank, "simple root has wrong length");
      require(static_cast<int>(rd.simple_coroots[i].size()) == rd.rank, "simple coroot has wrong length");
    }
    d.cartan.assign(n, std::vector<long long>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d.cartan[i][j] = pairing(rd.simple_roots[i], rd.simple_coroots[j]);
    for (int i = 0; i < n; ++i) {
      require(d.cartan[i][i] == 2, "Cartan matrix diagonal entry is not 2");
      for (int j = 0; j < n; ++j)
        if (i != j) {
          require(d.cartan[i][j] <= 0, "positive off-diagonal Cartan entry");
          require((d.cartan[i][j] == 0) == (d.cartan[j][i] == 0), "Cartan matrix zero pattern is not symmetric");
        }
    }
    enumerate_roots(d, n);
    d.rho2.assign(rd.rank, 0);
    for (const auto& r : d.pos_roots) d.rho2 = add(d.rho2, r);
    for (int i = 0; i < n; ++i)
      if (pairing(d.rho2, rd.simple_coroots[i]) != 2) throw Error("simple roots are linearly dependent");
    d.factors = classify(d, n);
    enumerate_weyl(d, n);
  }

  static void enumerate_roots(Data& d, int n) {
    const auto& rd = d.datum;
    struct R {
      IVec x, cx, simple;
    };
    std::map<IVec, R> found;  // keyed by simple coordinates
    std::deque<IVec> queue;
    for (int i = 0; i < n; ++i) {
      IVec s(n, 0);
      s[i] = 1;
      found[s] = {rd.simple_roots[i], rd.simple_coroots[i], s};
      queue.push_back(s);
    }
    while (!queue.empty()) {
      R r = found[queue.front()];
      queue.pop_front();
      for (int i = 0; i < n; ++i) {
        const long long c = pairing(r.x, rd.simple_coroots[i]);
        const long long cc = pairing(rd.simple_roots[i], r.cx);
        R t{add(r.x, rd.simple_roots[i], -c), add(r.cx, rd.simple_coroots[i], -cc), r.simple};
        t.simple[i] -= c;
        if (found.count(t.simple)) continue;
        if (found.size() >= max_roots) throw Error("infinite root system");
        const bool pos = std::all_of(t.simple.begin(), t.simple.end(), [](long long v) { return v >= 0; });
        const bool neg = std::all_of(t.simple.begin(), t.simple.end(), [](long long v) { return v <= 0; });
        if (!pos && !neg) throw Error("infinite root system");
        found[t.simple] = t;
        queue.push_back(t.simple);
      }
    }
    std::vector<R> pos;
    for (auto& [k, r] : found)
      if (std::all_of(k.begin(), k.end(), [](long long v) { return v >= 0; })) pos.push_back(r);
    std::sort(pos.begin(), pos.end(), [](const R& a, const R& b) {
      long long ha = std::accumulate(a.simple.begin(), a.simple.end(), 0LL);
      long long hb = std::accumulate(b.simple.begin(), b.simple.end(), 0LL);
      if (ha != hb) return ha < hb;
      return a.simple > b.simple;
    });
    for (std::size_t k = 0; k < pos.size(); ++k) {
      d.pos_roots.push_back(pos[k].x);
      d.pos_coroots.push_back(pos[k].cx);
      d.pos_simple.push_back(pos[k].simple);
      d.root_lookup[pos[k].x] = {static_cast<int>(k), +1};
      d.root_lookup[negated(pos[k].x)] = {static_cast<int>(k), -1};
    }
    if (d.root_lookup.size() != 2 * d.pos_roots.size()) throw Error("roots are not distinct in X*(T)");
  }

  static std::vector<SimpleFactor> classify(const Data& d, int n) {
    std::vector<SimpleFactor> out;
    std::vector<bool> seen(n, false);
    for (int start = 0; start < n; ++start) {
      if (seen[start]) continue;
      std::vector<int> comp;
      std::deque<int> q{start};
      seen[start] = true;
      while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        comp.push_back(v);
        for (int w = 0; w < n; ++w)
          if (!seen[w] && d.cartan[v][w] != 0) {
            seen[w] = true;
            q.push_back(w);
          }
      }
      std::sort(comp.begin(), comp.end());
      SimpleFactor f;
      f.type = '?';
      auto degree = [&](int v) {
        int k = 0;
        for (int w : comp)
          if (w != v && d.cartan[v][w] != 0) ++k;
        return k;
      };
      bool path = true;
      int leaves = 0;
      for (int v : comp) {
        int dg = degree(v);
        if (dg > 2) path = false;
        if (dg <= 1) ++leaves;
      }
      if (comp.size() == 1) {
        f.type = 'A';
        f.nodes = comp;
      } else if (path && leaves == 2) {
        int long_node = -1, bad = 0;
        for (int v : comp)
          for (int w : comp) {
            if (v == w) continue;
            if (d.cartan[v][w] == -2) long_node = v, ++bad;
            else if (d.cartan[v][w] < -2) bad += 2;
          }
        int first = -1;
        if (bad == 0) {
          for (int v : comp)
            if (degree(v) == 1) {
              first = v;
              break;
            }
        } else if (bad == 1 && degree(long_node) == 1) {
          for (int v : comp)
            if (degree(v) == 1 && v != long_node) first = v;
        }
        if (first >= 0) {
          f.type = bad == 0 ? 'A' : 'C';
          int prev = -1, cur = first;
          while (cur >= 0) {
            f.nodes.push_back(cur);
            int next = -1;
            for (int w : comp)
              if (w != cur && w != prev && d.cartan[cur][w] != 0) next = w;
            prev = cur;
            cur = next;
          }
        } else {
          f.nodes = comp;
        }
      } else {
        f.nodes = comp;
      }
      out.push_back(std::move(f));
    }
    return out;
  }

  static std::vector<IVec> reflection(const RootDatum& rd, int i) {
    std::vector<IVec> s(rd.rank, IVec(rd.rank, 0));
    for (int a = 0; a < rd.rank; ++a)
      for (int b = 0; b < rd.rank; ++b)
        s[a][b] = (a == b ? 1 : 0) - rd.simple_roots[i][a] * rd.simple_coroots[i][b];
    return s;
  }

  static std::vector<IVec> matmul(const std::vector<IVec>& a, const std::vector<IVec>& b) {
    const std::size_t m = a.size();
    std::vector<IVec> c(m, IVec(m, 0));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < m; ++k)
        if (a[i][k] != 0)
          for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
  }

  static void enumerate_weyl(Data& d, int n) {
    const auto& rd = d.datum;
    std::vector<std::vector<IVec>> refl;
    for (int i = 0; i < n; ++i) refl.push_back(reflection(rd, i));
    std::vector<IVec> id(rd.rank, IVec(rd.rank, 0));
    for (int a = 0; a < rd.rank; ++a) id[a][a] = 1;

    struct Node {
      std::vector<IVec> m;
      int length;
    };
    std::vector<Node> nodes{{id, 0}};
    std::map<IVec, std::size_t> lookup;
    auto key_of = [&](const std::vector<IVec>& m) {
      IVec y(rd.rank, 0);
      for (int a = 0; a < rd.rank; ++a) y[a] = pairing(m[a], d.rho2);
      return y;
    };
    lookup[key_of(id)] = 0;
    std::vector<std::vector<std::size_t>> lm(n);
    for (std::size_t cur = 0; cur < nodes.size(); ++cur) {
      for (int i = 0; i < n; ++i) {
        auto m = matmul(refl[i], nodes[cur].m);
        auto k = key_of(m);
        auto it = lookup.find(k);
        std::size_t idx;
        if (it == lookup.end()) {
          if (nodes.size() >= max_weyl_order) throw Error("Weyl group too large");
          idx = nodes.size();
          nodes.push_back({std::move(m), nodes[cur].length + 1});
          lookup[k] = idx;
        } else {
          idx = it->second;
        }
        if (lm[i].size() <= cur) lm[i].resize(cur + 1);
        lm[i][cur] = idx;
      }
    }
    const std::size_t N = nodes.size();
    for (auto& v : lm) v.resize(N);
    // lexicographically first reduced words: first letter is the smallest left descent
    std::vector<std::vector<int>> words(N);
    for (std::size_t w = 0; w < N; ++w) {
      if (nodes[w].length == 0) continue;
      for (int i = 0; i < n; ++i) {
        std::size_t v = lm[i][w];
        if (nodes[v].length == nodes[w].length - 1) {
          words[w] = {i};
          break;
        }
      }
    }
    std::vector<std::size_t> order(N);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return nodes[a].length < nodes[b].length; });
    for (std::size_t w : order) {
      if (nodes[w].length == 0) continue;
      std::size_t v = lm[words[w][0]][w];
      std::vector<int> full{words[w][0]};
      full.insert(full.end(), words[v].begin(), words[v].end());
      words[w] = std::move(full);
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (nodes[a].length != nodes[b].length) return nodes[a].length < nodes[b].length;
      return words[a] < words[b];
    });
    std::vector<std::size_t> pos(N);
    for (std::size_t k = 0; k < N; ++k) pos[order[k]] = k;
    d.weyl.resize(N);
    d.left_mult.assign(n, std::vector<std::size_t>(N));
    for (std::size_t k = 0; k < N; ++k) {
      const std::size_t w = order[k];
      d.weyl[k] = {words[w], nodes[w].m, nodes[w].length};
      for (int i = 0; i < n; ++i) d.left_mult[i][k] = pos[lm[i][w]];
      d.weyl_lookup[key_of(nodes[w].m)] = k;
    }
    d.inverse.resize(N);
    for (std::size_t k = 0; k < N; ++k) {
      std::size_t v = 0;
      for (int i : d.weyl[k].word) v = d.left_mult[i][v];  // builds s_{ik}...s_{i1}
      d.inverse[k] = v;
    }
    // consistency: word product equals the matrix, and length equals the inversion count
    for (std::size_t k = 0; k < N; ++k) {
      const auto& w = d.weyl[k];
      auto m = id;
      for (int i : w.word) m = matmul(m, refl[i]);
      if (m != w.matrix) throw Error("internal: reduced word does not reproduce the Weyl element", ErrorKind::check_failed);
      int inv = 0;
      for (const auto& r : d.pos_roots) {
        auto it = d.root_lookup.find(w.act(r));
        if (it == d.root_lookup.end()) throw Error("internal: Weyl element does not permute roots", ErrorKind::check_failed);
        if (it->second.second < 0) ++inv;
      }
      if (inv != w.length) throw Error("internal: length and inversion count disagree", ErrorKind::check_failed);
    }
  }

  std::shared_ptr<const Data> data_;
};

// ---------------------------------------------------------------------------
// Operations

inline const std::vector<IVec>& positive_roots(const RootSystem& rs) { return rs.positive_roots(); }

inline HalfWeight rho(const RootSystem& rs) { return rs.rho(); }

/// Half-integral pairing made exact: <x/2, y> for doubled x.
inline long long half_pairing(const HalfWeight& x, const IVec& y) {
  long long v = pairing(x.doubled, y);
  require(v % 2 == 0, "half-integral pairing");
  return v / 2;
}

inline int coxeter_number(const RootSystem& rs) {
  if (rs.positive_roots().empty()) throw Error("no roots");
  long long m = 0;
  for (const auto& c : rs.positive_coroots()) m = std::max(m, half_pairing(rs.rho(), c));
  return static_cast<int>(1 + m);
}

inline Weight act(const WeylElement& w, const Weight& x) {
  require(x.size() == w.matrix.size(), "act: dimension mismatch");
  return w.act(x);
}

/// w(x + rho) - rho, computed integrally since w(rho) - rho lies in the root lattice.
inline Weight dot_act(const RootSystem& rs, const WeylElement& w, const Weight& x) {
  require(static_cast<int>(x.size()) == rs.rank(), "dot_act: dimension mismatch");
  const auto& r2 = rs.rho().doubled;
  IVec shift = add(w.act(r2), r2, -1);
  for (auto& s : shift) s /= 2;
  return add(w.act(x), shift);
}

inline bool is_dominant(const RootSystem& rs, const Weight& x) {
  for (int i = 0; i < rs.num_simple(); ++i)
    if (pairing(x, rs.simple_coroot(i)) < 0) return false;
  return true;
}

inline bool is_p_small(const RootSystem& rs, const Weight& lambda, long long p) {
  require(static_cast<int>(lambda.size()) == rs.rank(), "weight has wrong length");
  if (!detail::is_prime(p)) throw Error(std::to_string(p) + " is not prime");
  if (!is_dominant(rs, lambda)) throw Error("weight " + to_string(lambda) + " is not dominant");
  for (const auto& c : rs.positive_coroots())
    if (pairing(lambda, c) + half_pairing(rs.rho(), c) > p) return false;
  return true;
}

inline long long weyl_dimension(const RootSystem& rs, const Weight& eta) {
  require(static_cast<int>(eta.size()) == rs.rank(), "weight has wrong length");
  if (!is_dominant(rs, eta)) throw Error("weight " + to_string(eta) + " is not dominant");
  mpq_class prod = 1;
  for (const auto& c : rs.positive_coroots()) {
    long long r = half_pairing(rs.rho(), c);
    prod *= mpq_class(static_cast<long>(pairing(eta, c) + r), static_cast<long>(r));
  }
  prod.canonicalize();
  require(prod.get_den() == 1, "internal: non-integral Weyl dimension");
  require(prod.get_num().fits_slong_p(), "Weyl dimension too large");
  return prod.get_num().get_si();
}

/// The dominant W-conjugate of x.
inline Weight dominant_conjugate(const RootSystem& rs, Weight x) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < rs.num_simple(); ++i) {
      long long c = pairing(x, rs.simple_coroot(i));
      if (c < 0) {
        x = add(x, rs.simple_root(i), -c);
        changed = true;
      }
    }
  }
  return x;
}

/// A W-invariant form on X*(T) ⊗ Q, nondegenerate on the span of the roots.
inline long long invariant_form(const RootSystem& rs, const IVec& x, const IVec& y) {
  long long s = 0;
  for (const auto& c : rs.positive_coroots()) s += pairing(x, c) * pairing(y, c);
  return s;
}

/// Weight multiplicities of the Weyl module of highest weight eta (Freudenthal).
inline Character freudenthal_weights(const RootSystem& rs, const Weight& eta) {
  require(static_cast<int>(eta.size()) == rs.rank(), "weight has wrong length");
  if (!is_dominant(rs, eta)) throw Error("weight " + to_string(eta) + " is not dominant");
  const int n = rs.num_simple();
  // weights by depth: x is a weight iff eta - dom(x) is a non-negative combination of simple roots
  std::map<IVec, IVec> depth_coords;  // weight -> simple coordinates of eta - weight
  std::vector<std::vector<IVec>> levels{{eta}};
  depth_coords[eta] = IVec(n, 0);
  auto below = [&](const IVec& x) {
    IVec c = rs.simple_coordinates(add(eta, dominant_conjugate(rs, x), -1));
    return std::all_of(c.begin(), c.end(), [](long long v) { return v >= 0; });
  };
  for (std::size_t lv = 0; lv < levels.size(); ++lv) {
    std::vector<IVec> next;
    for (const auto& x : levels[lv])
      for (int i = 0; i < n; ++i) {
        IVec y = add(x, rs.simple_root(i), -1);
        if (depth_coords.count(y)) continue;
        if (!below(y)) continue;
        IVec c = depth_coords[x];
        c[i] += 1;
        depth_coords[y] = c;
        next.push_back(y);
      }
    if (!next.empty()) levels.push_back(std::move(next));
  }
  const auto& r2 = rs.rho().doubled;
  IVec top = add(add(eta, eta), r2);  // 2(eta + rho)
  const long long top_norm = invariant_form(rs, top, top);
  Character mult;
  mult[eta] = 1;
  const auto& roots = rs.positive_roots();
  for (std::size_t lv = 1; lv < levels.size(); ++lv)
    for (const auto& x : levels[lv]) {
      // (|eta+rho|^2 - |x+rho|^2) m(x) = 2 sum_{a>0} sum_{k>=1} m(x + k a) (x + k a, a)
      IVec xs = add(add(x, x), r2);
      const long long denom4 = top_norm - invariant_form(rs, xs, xs);  // 4 * difference
      long long num = 0;
      for (const auto& a : roots) {
        IVec y = add(x, a);
        while (true) {
          auto it = mult.find(y);
          if (it == mult.end()) break;
          num += it->second * invariant_form(rs, y, a);
          y = add(y, a);
        }
      }
      require(denom4 > 0, "internal: Freudenthal denominator vanished");
      const long long numer = 8 * num;  // 2 * num, scaled by 4
      require(numer % denom4 == 0, "internal: non-integral Freudenthal multiplicity");
      const long long m = numer / denom4;
      if (m > 0) mult[x] = m;
    }
  return mult;
}

/// Character of a Weyl module under a sub-datum, shifted: sum of characters.
inline Character& accumulate(Character& into, const Character& ch, long long sign = 1) {
  for (const auto& [w, m] : ch) {
    into[w] += sign * m;
    if (into[w] == 0) into.erase(w);
  }
  return into;
}

/// An integral weight with <x, a_j^v> = delta_ij for the simple coroots, of
/// minimal L1 norm among small central adjustments; nullopt if none is integral.
inline std::optional<Weight> fundamental_weight(const RootSystem& rs, int i) {
  require(i >= 0 && i < rs.num_simple(), "fundamental weight index out of range");
  const int n = rs.num_simple(), r = rs.rank();
  ZMat a(n, ZVec(r));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < r; ++k) a[j][k] = static_cast<long>(rs.simple_coroot(j)[k]);
  ZVec b(n, 0);
  b[i] = 1;
  auto sol = integer_solve(a, r, b);
  if (!sol) return std::nullopt;
  ZMat ker = integer_kernel(a, r);
  IVec best(r);
  for (int k = 0; k < r; ++k) best[k] = sol->at(k).get_si();
  auto l1 = [](const IVec& v) {
    long long s = 0;
    for (auto x : v) s += std::llabs(x);
    return s;
  };
  const int kd = static_cast<int>(ker.size());
  const int bound = kd <= 3 ? 3 : 1;
  std::vector<int> t(kd, -bound);
  IVec base = best;
  while (kd > 0) {
    IVec v = base;
    for (int k = 0; k < kd; ++k)
      for (int c = 0; c < r; ++c) v[c] += t[k] * ker[k][c].get_si();
    if (l1(v) < l1(best) || (l1(v) == l1(best) && v > best)) best = v;
    int k = 0;
    while (k < kd && t[k] == bound) t[k++] = -bound;
    if (k == kd) break;
    ++t[k];
  }
  return best;
}

/// PEL-type norm |lambda| summed over local factors.
struct NormBlock {
  std::string type;  // "GL" or "Sp"
  IVec lambda;
};

inline long long lambda_norm(const std::vector<NormBlock>& blocks) {
  long long total = 0;
  for (const auto& b : blocks) {
    for (std::size_t k = 1; k < b.lambda.size(); ++k)
      if (b.lambda[k] > b.lambda[k - 1]) throw Error("weight tuple is not weakly decreasing");
    if (b.type == "Sp") {
      if (!b.lambda.empty() && b.lambda.back() < 0) throw Error("Sp block has a negative last entry");
      for (auto x : b.lambda) total += x;
    } else if (b.type == "GL") {
      if (b.lambda.empty()) continue;
      const long long last = b.lambda.back();
      long long e = last - (((last % 2) + 2) % 2);  // the even integer with 0 <= last - e <= 1
      for (auto x : b.lambda) total += x - e;
    } else {
      throw Error("unknown factor type '" + b.type + "'");
    }
  }
  return total;
}

// ---------------------------------------------------------------------------
// Standard data

/// Type A_n: semisimple in fundamental-weight coordinates, or GL_{n+1} in the
/// usual epsilon coordinates when reductive.
inline RootDatum type_A(int n, bool reductive) {
  require(n >= 1, "type A needs n >= 1");
  RootDatum d;
  d.label = (reductive ? "GL" + std::to_string(n + 1) : "A" + std::to_string(n));
  if (reductive) {
    d.rank = n + 1;
    for (int i = 0; i < n; ++i) {
      IVec a(n + 1, 0);
      a[i] = 1;
      a[i + 1] = -1;
      d.simple_roots.push_back(a);
      d.simple_coroots.push_back(a);
    }
  } else {
    d.rank = n;
    for (int i = 0; i < n; ++i) {
      IVec a(n, 0), c(n, 0);
      a[i] = 2;
      if (i > 0) a[i - 1] = -1;
      if (i + 1 < n) a[i + 1] = -1;
      c[i] = 1;
      d.simple_roots.push_back(a);
      d.simple_coroots.push_back(c);
    }
  }
  return d;
}

/// Type C_n: Sp_{2n} in epsilon coordinates, or GSp_{2n} with an extra
/// similitude coordinate (last) when reductive.
inline RootDatum type_C(int n, bool reductive) {
  require(n >= 1, "type C needs n >= 1");
  RootDatum d;
  d.label = (reductive ? "GSp" + std::to_string(2 * n) : "C" + std::to_string(n));
  d.rank = reductive ? n + 1 : n;
  for (int i = 0; i + 1 < n; ++i) {
    IVec a(d.rank, 0);
    a[i] = 1;
    a[i + 1] = -1;
    d.simple_roots.push_back(a);
    d.simple_coroots.push_back(a);
  }
  IVec a(d.rank, 0), c(d.rank, 0);
  a[n - 1] = 2;
  if (reductive) a[n] = -1;
  c[n - 1] = 1;
  d.simple_roots.push_back(a);
  d.simple_coroots.push_back(c);
  return d;
}

/// Direct product of root data (block coordinates).
inline RootDatum product(const RootDatum& x, const RootDatum& y) {
  RootDatum d;
  d.label = x.label + "x" + y.label;
  d.rank = x.rank + y.rank;
  auto pad = [&](const IVec& v, bool first) {
    IVec out(d.rank, 0);
    for (std::size_t k = 0; k < v.size(); ++k) out[(first ? 0 : x.rank) + k] = v[k];
    return out;
  };
  for (std::size_t i = 0; i < x.simple_roots.size(); ++i) {
    d.simple_roots.push_back(pad(x.simple_roots[i], true));
    d.simple_coroots.push_back(pad(x.simple_coroots[i], true));
  }
  for (std::size_t i = 0; i < y.simple_roots.size(); ++i) {
    d.simple_roots.push_back(pad(y.simple_roots[i], false));
    d.simple_coroots.push_back(pad(y.simple_coroots[i], false));
  }
  return d;
}

}  // namespace hodgep
