#pragma once

// Shared fixtures and brute-force oracles for the test suites. The oracles
// here deliberately avoid the library's own algorithms.

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hodgep/rootlattice.hpp"

namespace testing_support {

using hodgep::IVec;
using hodgep::RootDatum;

inline std::mt19937_64 rng(std::uint64_t salt = 0) { return std::mt19937_64(0x5eed0000ULL + salt); }

inline long long uniform(std::mt19937_64& g, long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(g);
}

struct NamedDatum {
  std::string name;
  RootDatum datum;
};

/// Every supported type, semisimple and reductive, plus two products.
inline std::vector<NamedDatum> supported_data() {
  using namespace hodgep;
  std::vector<NamedDatum> out;
  for (int n = 1; n <= 4; ++n) {
    out.push_back({"A" + std::to_string(n), type_A(n, false)});
    out.push_back({"GL" + std::to_string(n + 1), type_A(n, true)});
  }
  for (int n = 1; n <= 3; ++n) {
    out.push_back({"C" + std::to_string(n), type_C(n, false)});
    out.push_back({"GSp" + std::to_string(2 * n), type_C(n, true)});
  }
  out.push_back({"A1xA1", product(type_A(1, true), type_A(1, true))});
  out.push_back({"A1xC2", product(type_A(1, false), type_C(2, false))});
  return out;
}

inline long long dot(const IVec& a, const IVec& b) {
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Roots paired with coroots, closed under simple reflections, found by
/// breadth-first search from the simple pairs.
struct OracleRoots {
  std::vector<std::pair<IVec, IVec>> all;       // (root, coroot)
  std::vector<std::pair<IVec, IVec>> positive;  // positive ones
  IVec two_rho;                                 // sum of positive roots
};

/// Simple-root coordinates of x, by floating-point least squares (roots are tiny integers).
inline std::vector<double> simple_coords(const RootDatum& d, const IVec& x) {
  const std::size_t n = d.simple_roots.size(), r = x.size();
  // normal equations G c = A^T x with A the r x n matrix of simple roots
  std::vector<std::vector<double>> G(n, std::vector<double>(n + 1, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < r; ++k) G[i][j] += double(d.simple_roots[i][k]) * double(d.simple_roots[j][k]);
    for (std::size_t k = 0; k < r; ++k) G[i][n] += double(d.simple_roots[i][k]) * double(x[k]);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t i = c; i < n; ++i)
      if (std::abs(G[i][c]) > std::abs(G[piv][c])) piv = i;
    std::swap(G[c], G[piv]);
    for (std::size_t i = 0; i < n; ++i)
      if (i != c) {
        const double f = G[i][c] / G[c][c];
        for (std::size_t j = c; j <= n; ++j) G[i][j] -= f * G[c][j];
      }
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = G[i][n] / G[i][i];
  return out;
}

inline OracleRoots brute_roots(const RootDatum& d) {
  OracleRoots o;
  std::map<IVec, IVec> seen;
  std::vector<std::pair<IVec, IVec>> queue;
  for (std::size_t i = 0; i < d.simple_roots.size(); ++i) {
    queue.push_back({d.simple_roots[i], d.simple_coroots[i]});
    seen[d.simple_roots[i]] = d.simple_coroots[i];
  }
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (std::size_t i = 0; i < d.simple_roots.size(); ++i) {
      auto [a, c] = queue[q];
      const long long k = dot(a, d.simple_coroots[i]);
      const long long l = dot(d.simple_roots[i], c);
      for (std::size_t t = 0; t < a.size(); ++t) {
        a[t] -= k * d.simple_roots[i][t];
        c[t] -= l * d.simple_coroots[i][t];
      }
      if (seen.emplace(a, c).second) queue.push_back({a, c});
    }
  }
  o.all = queue;
  o.two_rho.assign(d.rank, 0);
  for (const auto& rc : o.all) {
    const auto co = simple_coords(d, rc.first);
    double s = 0;
    for (double x : co) s += x;
    if (s > 0) {
      o.positive.push_back(rc);
      for (int t = 0; t < d.rank; ++t) o.two_rho[t] += rc.first[t];
    }
  }
  return o;
}

/// Dominant and <lambda + rho, a^v> <= p for every positive root a.
inline bool oracle_p_small(const RootDatum& d, const OracleRoots& o, const IVec& lambda, long long p) {
  for (const auto& [a, c] : o.positive) {
    const long long twice = 2 * dot(lambda, c) + dot(o.two_rho, c);
    if (twice > 2 * p) return false;
  }
  (void)d;
  return true;
}

/// A dominant weight with <lambda, a_i^v> in [0, bound] for the simple coroots,
/// found by solving for a weight with prescribed simple pairings.
inline IVec weight_with_pairings(const hodgep::RootSystem& rs, const std::vector<long long>& pairings) {
  IVec x(rs.rank(), 0);
  for (int i = 0; i < rs.num_simple(); ++i) {
    auto w = hodgep::fundamental_weight(rs, i);
    if (!w) return {};
    for (int t = 0; t < rs.rank(); ++t) x[t] += pairings[i] * (*w)[t];
  }
  return x;
}

}  // namespace testing_support
