// Acceptance run: one PASS/FAIL line per criterion, with wall-clock budgets.
// Exit status 0 iff every criterion passes within its budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "complex_matrix.hpp"
#include "hodgep/complexes.hpp"
#include "hodgep/repkit.hpp"
#include "hodgep/zipalgebra.hpp"
#include "support.hpp"
#include "zip_oracle.hpp"

using namespace hodgep;
namespace cm = complex_matrix;
namespace ts = testing_support;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void check(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures.size() < 5) failures.push_back(what);
  }
};

const std::vector<long long> primes{5, 7, 11};
constexpr int dmax_top = 6;

// ---------------------------------------------------------------------------
// 1-3: the complex matrix {A1, A2, C2} x {dim V <= 60} x {Q, F5, F7, F11} x {Dmax <= 6}

struct Instance {
  std::string name;
  ParabolicData pd;
  Weight lambda;
  GModule<Rationals> vq;
};

std::vector<Instance> instances() {
  std::vector<Instance> out;
  for (const auto& sh : cm::shapes()) {
    RootSystem rs(sh.datum);
    auto pd = levi_subset(rs, sh.mu);
    for (const auto& lam : cm::small_weights(rs, 60))
      out.push_back({sh.name, pd, lam, weyl_module(rs, Rationals{}, lam)});
  }
  return out;
}

std::string tag(const Instance& in, const std::string& field, int dmax) {
  return in.name + " lambda=" + to_string(in.lambda) + " " + field + " Dmax=" + std::to_string(dmax);
}

Outcome complex_axioms(const std::vector<Instance>& all) {
  Outcome o;
  std::size_t runs = 0;
  for (const auto& in : all)
    for (int dmax = 0; dmax <= dmax_top; ++dmax) {
      auto cq = std_complex(in.pd, in.vq, dmax);
      o.check(cm::interior_square_zero(cq) && check_complex(cq).square_zero, "d^2 " + tag(in, "Q", dmax));
      ++runs;
      for (long long p : primes) {
        auto V = reduce_mod_p(in.vq, GaloisField(p));
        auto s = std_complex(in.pd, V, dmax);
        auto ps = p_std_complex(in.pd, V, dmax);
        o.check(cm::interior_square_zero(s) && check_complex(s).square_zero, "d^2 " + tag(in, "F_" + std::to_string(p), dmax));
        o.check(cm::interior_square_zero(ps) && check_complex(ps).square_zero,
                "psi^2 " + tag(in, "F_" + std::to_string(p), dmax));
        runs += 2;
      }
    }
  o.detail = std::to_string(all.size()) + " (type, lambda) pairs, " + std::to_string(runs) + " complexes";
  return o;
}

Outcome filtrations(const std::vector<Instance>& all) {
  Outcome o;
  std::size_t runs = 0;
  for (const auto& in : all)
    for (int dmax = 0; dmax <= dmax_top; ++dmax) {
      auto cq = std_complex(in.pd, in.vq, dmax);
      o.check(cm::filtration_preserved(cq) && check_complex(cq).filtration_preserved, "d(C) " + tag(in, "Q", dmax));
      ++runs;
      for (long long p : primes) {
        auto V = reduce_mod_p(in.vq, GaloisField(p));
        auto s = std_complex(in.pd, V, dmax);
        auto ps = p_std_complex(in.pd, V, dmax);
        o.check(cm::filtration_preserved(s) && check_complex(s).filtration_preserved,
                "d(C) " + tag(in, "F_" + std::to_string(p), dmax));
        o.check(cm::filtration_preserved(ps) && check_complex(ps).filtration_preserved,
                "psi(D) " + tag(in, "F_" + std::to_string(p), dmax));
        runs += 2;
      }
    }
  o.detail = std::to_string(runs) + " complexes, C for std and D for p-std";
  return o;
}

Outcome graded(const std::vector<Instance>& all) {
  Outcome o;
  std::size_t runs = 0;
  for (const auto& in : all)
    for (int dmax = 0; dmax <= dmax_top; ++dmax)
      for (long long p : primes) {
        auto V = reduce_mod_p(in.vq, GaloisField(p));
        auto s = std_complex(in.pd, V, dmax);
        auto ps = p_std_complex(in.pd, V, dmax);
        auto rep = graded_compare(s, ps);
        o.check(rep.agree && rep.mismatches.empty() && cm::graded_agree(s, ps),
                "graded " + tag(in, "F_" + std::to_string(p), dmax));
        ++runs;
      }
  o.detail = std::to_string(runs) + " prime-field instances";
  return o;
}

// ---------------------------------------------------------------------------
// 4: char ∧^a(u_-) = sum over ^J W(a) of char W_{w.0}

struct Builtin {
  std::string name;
  RootDatum datum;
  Coweight mu;
};

std::vector<Builtin> builtins() {
  auto gl2 = type_A(1, true);
  return {{"A1-modular", gl2, {1, 0}},
          {"A1xA1-hilbert", product(gl2, gl2), {1, 0, 1, 0}},
          {"C2-siegel", type_C(2, true), {1, 1, 1}},
          {"C3-siegel", type_C(3, true), {1, 1, 1, 1}},
          {"A2-picard-like", type_A(2, true), {1, 1, 0}}};
}

// w.x through simple reflections applied right to left, with rho doubled to stay integral.
Weight manual_dot(const RootSystem& rs, const std::vector<int>& word, const Weight& x) {
  IVec y = x;
  for (auto& c : y) c *= 2;
  y = add(y, rs.rho().doubled);
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    const long long k = ts::dot(y, rs.simple_coroot(*it));
    for (std::size_t t = 0; t < y.size(); ++t) y[t] -= k * rs.simple_root(*it)[t];
  }
  for (std::size_t t = 0; t < y.size(); ++t) y[t] = (y[t] - rs.rho().doubled[t]) / 2;
  return y;
}

Outcome kostant() {
  Outcome o;
  std::size_t degrees = 0;
  for (const auto& b : builtins()) {
    RootSystem rs(b.datum);
    auto pd = levi_subset(rs, b.mu);
    // u_- roots from the brute-force root enumeration
    std::vector<IVec> um;
    for (const auto& [r, c] : ts::brute_roots(b.datum).all)
      if (ts::dot(r, b.mu) < 0) um.push_back(r);
    const int n = static_cast<int>(um.size());
    o.check(n == static_cast<int>(pd.u_minus_roots.size()), b.name + " dim u_-");
    const auto reps = min_coset_reps(rs, pd.J);
    for (int a = 0; a <= n; ++a) {
      Character lhs;
      for (int mask = 0; mask < (1 << n); ++mask) {
        if (__builtin_popcount(mask) != a) continue;
        Weight w(rs.rank(), 0);
        for (int k = 0; k < n; ++k)
          if (mask >> k & 1) w = add(w, um[k]);
        lhs[w] += 1;
      }
      Character rhs;
      for (const auto& w : reps)
        if (w.length == a) hodgep::accumulate(rhs, freudenthal_weights(pd.levi, manual_dot(rs, w.word, Weight(rs.rank(), 0))), 1);
      auto rep = kostant_check(pd, a);
      o.check(lhs == rhs && rep.equal && rep.wedge_character == lhs, b.name + " a=" + std::to_string(a));
      ++degrees;
    }
  }
  o.detail = "5 builtins, " + std::to_string(degrees) + " degrees";
  return o;
}

// ---------------------------------------------------------------------------
// 5: |^J W| |W_J| = |W| for every J; Siegel |^J W| = 2^g

// Group generated by the given simple reflections, as integer matrices on X*, by closure.
std::size_t brute_group_order(const RootDatum& d, const std::vector<int>& gens) {
  using Mat = std::vector<IVec>;  // images of the basis vectors
  const int r = d.rank;
  Mat id(r, IVec(r, 0));
  for (int i = 0; i < r; ++i) id[i][i] = 1;
  std::set<Mat> seen{id};
  std::vector<Mat> queue{id};
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (int g : gens) {
      Mat m = queue[q];
      for (auto& col : m) {
        const long long k = ts::dot(col, d.simple_coroots[g]);
        for (int t = 0; t < r; ++t) col[t] -= k * d.simple_roots[g][t];
      }
      if (seen.insert(m).second) queue.push_back(m);
    }
  return seen.size();
}

Outcome cosets() {
  Outcome o;
  std::size_t subsets = 0;
  for (const auto& [name, d] : ts::supported_data()) {
    RootSystem rs(d);
    const int n = rs.num_simple();
    std::vector<int> all;
    for (int i = 0; i < n; ++i) all.push_back(i);
    const std::size_t w = brute_group_order(d, all);
    o.check(w == rs.weyl_order(), name + " |W|");
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<int> J;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) J.push_back(i);
      const std::size_t wj = brute_group_order(d, J);
      o.check(min_coset_reps(rs, J).size() * wj == w, name + " J mask " + std::to_string(mask));
      ++subsets;
    }
  }
  for (int g = 1; g <= 3; ++g) {
    RootSystem rs(type_C(g, true));
    auto pd = levi_subset(rs, Coweight(g + 1, 1));
    o.check(min_coset_reps(rs, pd.J).size() == (std::size_t{1} << g), "Siegel g=" + std::to_string(g));
  }
  o.detail = std::to_string(ts::supported_data().size()) + " types, " + std::to_string(subsets) + " subsets J, Siegel g=1..3";
  return o;
}

// ---------------------------------------------------------------------------
// 6: BGG page partition, gradings and Euler characteristic over the builtins

Outcome bgg() {
  Outcome o;
  std::size_t pages = 0, pairs = 0;
  for (const auto& b : builtins()) {
    RootSystem rs(b.datum);
    auto pd = levi_subset(rs, b.mu);
    std::vector<Weight> lambdas{Weight(rs.rank(), 0)};
    for (int i = 0; i < rs.num_simple(); ++i)
      if (auto w = fundamental_weight(rs, i)) lambdas.push_back(*w);
    const auto reps = min_coset_reps(rs, pd.J);
    const int dmax = pd.u_minus_roots.size() > 3 ? 3 : 4;
    for (const auto& lam : lambdas) {
      const std::string t = b.name + " lambda=" + to_string(lam);
      auto page = bgg_page(pd, lam);
      std::multiset<std::vector<int>> seen, expected;
      for (const auto& w : reps) expected.insert(w.word);
      for (const auto& row : page.rows)
        for (const auto& e : row.entries) {
          seen.insert(e.w.word);
          const auto x = manual_dot(rs, e.w.word, lam);
          o.check(e.w_dot_lambda == x, t + " dot action");
          o.check(row.a == -ts::dot(x, b.mu), t + " grading");
          o.check(e.levi_dominant, t + " Levi dominance");
        }
      o.check(seen == expected, t + " partition");
      auto cx = std_complex(pd, weyl_module(rs, Rationals{}, lam), dmax);
      auto rep = euler_character_check(cx, page);
      o.check(rep.pass, t + " Euler characteristic");
      pairs += rep.checked;
      ++pages;
    }
  }
  o.detail = std::to_string(pages) + " pages, " + std::to_string(pairs) + " (Sym-degree, weight) pairs";
  return o;
}

// ---------------------------------------------------------------------------
// 7: Casimir-isotypic character against the BGG term list

GradedCharacter term_list(const ParabolicData& pd, const Weight& lambda, int dmax) {
  // Sym^s(u_-) weights by enumerating multisets directly
  const int n = static_cast<int>(pd.u_minus_roots.size());
  std::vector<Character> sym(dmax + 1);
  std::function<void(int, int, Weight)> rec = [&](int start, int deg, Weight w) {
    sym[deg][w] += 1;
    if (deg == dmax) return;
    for (int k = start; k < n; ++k) rec(k, deg + 1, add(w, pd.u_minus_roots[k]));
  };
  rec(0, 0, Weight(pd.rs.rank(), 0));
  GradedCharacter out;
  for (const auto& w : min_coset_reps(pd.rs, pd.J)) {
    const auto ch = freudenthal_weights(pd.levi, manual_dot(pd.rs, w.word, lambda));
    for (int s = 0; s <= dmax; ++s)
      for (const auto& [x, m] : sym[s])
        for (const auto& [y, k] : ch) out[{w.length, s, add(x, y)}] += m * k;
  }
  return out;
}

Outcome casimir() {
  Outcome o;
  std::size_t cases = 0;
  auto run = [&](const ParabolicData& pd, const Weight& lam, int dmax) {
    auto cx = std_complex(pd, weyl_module(pd.rs, Rationals{}, lam), dmax);
    auto iso = casimir_isotypic(cx, lam);
    const auto expected = term_list(pd, lam, dmax);
    o.check(iso.character == expected && iso.character == bgg_term_character(pd, lam, dmax),
            to_string(lam) + " character");
    o.check(iso.commutes && iso.subcomplex, to_string(lam) + " subcomplex");
    ++cases;
  };
  RootSystem gl2(type_A(1, true));
  auto modular = levi_subset(gl2, {1, 0});
  for (long long m = 0; m <= 8; ++m) run(modular, {m, 0}, 4);
  RootSystem gl3(type_A(2, true));
  auto picard = levi_subset(gl3, {1, 1, 0});
  for (const Weight& lam : {Weight{0, 0, 0}, Weight{1, 0, 0}, Weight{1, 1, 0}, Weight{2, 1, 0}}) run(picard, lam, 2);
  RootSystem gsp4(type_C(2, true));
  auto siegel = levi_subset(gsp4, {1, 1, 1});
  for (const Weight& lam : {Weight{0, 0, 0}, Weight{1, 0, 0}, Weight{1, 1, 0}}) run(siegel, lam, 2);
  // collision: GL2, lambda = 5 over F_5
  auto cx = std_complex(modular, weyl_module(gl2, GaloisField(5), {5, 0}), 2);
  bool raised = false;
  try {
    casimir_isotypic(cx, {5, 0});
  } catch (const Error& e) {
    raised = e.kind() == ErrorKind::casimir_collision &&
             std::string(e.what()).find("Casimir does not separate") != std::string::npos;
  }
  o.check(raised, "collision GL2 lambda=5 over F_5");
  o.detail = std::to_string(cases) + " separated cases over Q, 1 collision case";
  return o;
}

// ---------------------------------------------------------------------------
// 8: F-zip algebra

std::map<int, long long> convolve(const std::map<int, long long>& a, const std::map<int, long long>& b) {
  std::map<int, long long> c;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) c[i + j] += x * y;
  return c;
}

Outcome fzips() {
  Outcome o;
  auto g = ts::rng(800);
  const std::vector<GaloisField> fields{GaloisField(2), GaloisField(3), GaloisField(5), GaloisField(7),
                                        GaloisField(2, 2), GaloisField(3, 2), GaloisField(2, 3)};
  auto random_type = [&]() {
    std::map<int, long long> t;
    const auto n = ts::uniform(g, 1, 3);
    for (long long k = 0; k < n; ++k) t[static_cast<int>(ts::uniform(g, -2, 2))] += 1;
    return t;
  };
  for (int k = 0; k < 500; ++k) {
    const auto& F = fields[ts::uniform(g, 0, fields.size() - 1)];
    auto t1 = random_type(), t2 = random_type();
    auto a = random_fzip(F, t1, g), b = random_fzip(F, t2, g);
    auto ab = tensor(a, b);
    o.check(!validate(ab) && zip_type(ab) == convolve(t1, t2), "tensor type law #" + std::to_string(k));
    auto da = dual(a);
    std::map<int, long long> neg;
    for (const auto& [i, d] : t1) neg[-i] = d;
    o.check(!validate(da) && zip_type(da) == neg, "dual type law #" + std::to_string(k));
    if (F.order() <= 9) o.check(is_isomorphic(dual(da), a).isomorphic, "double dual #" + std::to_string(k));
  }
  // equivalence axioms on the exhaustive universes
  std::size_t universe_total = 0;
  for (const auto& F : {GaloisField(2), GaloisField(3)}) {
    const auto u = zip_oracle::universe(F);
    universe_total += u.size();
    const std::size_t n = u.size();
    std::vector<std::vector<char>> iso(n, std::vector<char>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        auto r = is_isomorphic(u[i], u[j]);
        iso[i][j] = r.isomorphic;
        if (r.witness) o.check(zip_oracle::is_morphism(u[i], u[j], *r.witness), F.name() + " witness");
      }
    for (std::size_t i = 0; i < n; ++i) {
      o.check(iso[i][i], F.name() + " reflexive");
      for (std::size_t j = 0; j < n; ++j) {
        o.check(iso[i][j] == iso[j][i], F.name() + " symmetric");
        if (!iso[i][j]) continue;
        for (std::size_t k = 0; k < n; ++k)
          if (iso[j][k]) o.check(iso[i][k], F.name() + " transitive");
      }
    }
    // verdicts against the brute-force GL_n search, on every pair of the same dimension over F_2
    // and a seeded sample over F_3
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (F.order() == 3 && ts::uniform(g, 0, 19) != 0) continue;
        o.check(static_cast<bool>(iso[i][j]) == zip_oracle::brute_isomorphic(u[i], u[j]), F.name() + " oracle");
      }
  }
  // point_fzip is compatible with tensor products within the search bounds
  std::size_t tensor_checks = 0;
  for (long long p : {2, 3, 5, 7}) {
    GaloisField F(p);
    RootSystem gl2(type_A(1, true));
    RootSystem gsp4(type_C(2, true));
    auto v = standard_module(gl2, F);
    auto one = trivial_module(F, gl2, all_nodes(gl2));
    const Coweight mu2{1, 0};
    std::vector<std::pair<GModule<GaloisField>, GModule<GaloisField>>> pairs{{v, v}, {v, one}, {dual(v), v}};
    for (const auto& [x, y] : pairs) {
      auto lhs = point_fzip(tensor(x, y), mu2);
      auto rhs = tensor(point_fzip(x, mu2), point_fzip(y, mu2));
      o.check(is_isomorphic(lhs, rhs).isomorphic, "point_fzip GL2 p=" + std::to_string(p));
      ++tensor_checks;
    }
    auto s = standard_module(gsp4, F);
    auto t = trivial_module(F, gsp4, all_nodes(gsp4));
    const Coweight mu4{1, 1, 1};
    o.check(is_isomorphic(point_fzip(tensor(s, t), mu4), tensor(point_fzip(s, mu4), point_fzip(t, mu4))).isomorphic,
            "point_fzip GSp4 p=" + std::to_string(p));
    ++tensor_checks;
  }
  o.detail = "500 random zips, universe of " + std::to_string(universe_total) + " zips over F_2 and F_3, " +
             std::to_string(tensor_checks) + " point_fzip tensor checks";
  return o;
}

// ---------------------------------------------------------------------------
// 9: p-smallness against root enumeration

bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Outcome p_small() {
  Outcome o;
  auto g = ts::rng(900);
  std::vector<long long> ps;
  for (long long p = 2; p <= 61; ++p)
    if (is_prime(p)) ps.push_back(p);
  std::size_t total = 0, boundary = 0;
  for (const auto& [name, d] : ts::supported_data()) {
    RootSystem rs(d);
    const auto oracle = ts::brute_roots(d);
    for (int k = 0; k < 1000; ++k) {
      IVec x(rs.rank());
      for (auto& c : x) c = ts::uniform(g, -8, 8);
      const auto lam = dominant_conjugate(rs, x);
      const long long p = ps[ts::uniform(g, 0, ps.size() - 1)];
      o.check(is_p_small(rs, lam, p) == ts::oracle_p_small(d, oracle, lam, p), name + " lambda=" + to_string(lam));
      ++total;
    }
    // lambda = 0 is p-small exactly when p >= h - 1; probe every prime up to h + 2
    long long h = 0;
    for (const auto& [r, c] : oracle.positive) h = std::max(h, ts::dot(oracle.two_rho, c) / 2 + 1);
    const Weight zero(rs.rank(), 0);
    for (long long p : ps) {
      if (p > h + 2) break;
      const bool lib = is_p_small(rs, zero, p);
      o.check(lib == ts::oracle_p_small(d, oracle, zero, p) && lib == (p >= h - 1),
              name + " boundary p=" + std::to_string(p));
      ++boundary;
    }
  }
  o.detail = std::to_string(total) + " random pairs over " + std::to_string(ts::supported_data().size()) + " types, " +
             std::to_string(boundary) + " boundary probes";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    double budget;  // seconds; 0 for none
    std::function<Outcome()> run;
  };
  std::vector<Instance> matrix;
  const auto t0 = std::chrono::steady_clock::now();
  matrix = instances();
  const double setup = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::vector<Criterion> criteria{
      {1, "complex axioms d^2 = 0, psi^2 = 0", 120, [&] { return complex_axioms(matrix); }},
      {2, "filtration preservation", 0, [&] { return filtrations(matrix); }},
      {3, "graded comparison gr_C Std vs gr_D p-Std", 0, [&] { return graded(matrix); }},
      {4, "Kostant identity on builtins", 10, kostant},
      {5, "coset combinatorics", 5, cosets},
      {6, "BGG page bookkeeping and Euler characteristic", 60, bgg},
      {7, "Casimir extraction", 60, casimir},
      {8, "F-zip algebra", 60, fzips},
      {9, "p-smallness boundary", 0, p_small},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.id == 1) secs += setup;
    const bool in_budget = c.budget == 0 || secs <= c.budget;
    const bool ok = o.pass && in_budget;
    all = all && ok;
    char timing[64];
    if (c.budget > 0) std::snprintf(timing, sizeof timing, "%.2f s of %.0f s", secs, c.budget);
    else std::snprintf(timing, sizeof timing, "%.2f s", secs);
    std::cout << (ok ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name << ": " << o.detail << " (" << timing << ")\n";
    for (const auto& f : o.failures) std::cout << "        " << f << "\n";
    if (!in_budget) std::cout << "        over the time budget\n";
    std::cout.flush();
  }
  return all ? 0 : 1;
}
