#pragma once

// JSON encodings of root data, F-zips and reports.
//
// Root datum: {"label", "rank", "simple_roots", "simple_coroots"} or the
// shorthand {"type": "A"|"C", "n", "reductive"}; an optional "mu" is ignored
// here and read by the job runner.
// F-zip: {"base": {"p", "e"}, "dim", "C": [{"i", "rows"}], "D": [...],
// "phi": [{"i", "matrix"}]}. Field elements are integers 0 <= x < p^e whose
// base-p digits are the coordinates in the basis 1, x, ..., x^{e-1}.

#include "json.hpp"  // vendored nlohmann/json

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hodgep/complexes.hpp"
#include "hodgep/error.hpp"
#include "hodgep/parabolic.hpp"
#include "hodgep/repkit.hpp"
#include "hodgep/rootlattice.hpp"
#include "hodgep/zipalgebra.hpp"

namespace hodgep::json_io {

using nlohmann::json;

inline void require_keys(const json& j, const std::vector<std::string>& allowed, const std::string& what) {
  if (!j.is_object()) throw Error(what + " must be a JSON object");
  for (const auto& [k, v] : j.items())
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
      throw Error("unknown key \"" + k + "\" in " + what);
}

template <class T>
T get(const json& j, const std::string& key, const std::string& what) {
  if (!j.contains(key)) throw Error(what + " is missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error("\"" + key + "\" in " + what + " has the wrong type");
  }
}

inline json vec(const IVec& v) { return json(v); }

// ---------------------------------------------------------------------------
// Root data

inline RootDatum datum_from_json(const json& j) {
  if (j.contains("type")) {
    require_keys(j, {"type", "n", "reductive", "label", "mu"}, "datum");
    const auto t = get<std::string>(j, "type", "datum");
    const int n = get<int>(j, "n", "datum");
    const bool red = j.value("reductive", true);
    RootDatum d;
    if (t == "A") d = type_A(n, red);
    else if (t == "C") d = type_C(n, red);
    else throw Error("unsupported datum type \"" + t + "\"");
    if (j.contains("label")) d.label = get<std::string>(j, "label", "datum");
    return d;
  }
  require_keys(j, {"label", "rank", "simple_roots", "simple_coroots", "mu"}, "datum");
  RootDatum d;
  d.label = j.value("label", std::string("custom"));
  d.rank = get<int>(j, "rank", "datum");
  d.simple_roots = get<std::vector<IVec>>(j, "simple_roots", "datum");
  d.simple_coroots = get<std::vector<IVec>>(j, "simple_coroots", "datum");
  return d;
}

inline json datum_to_json(const RootDatum& d) {
  return {{"label", d.label}, {"rank", d.rank}, {"simple_roots", d.simple_roots}, {"simple_coroots", d.simple_coroots}};
}

inline json word_json(const std::vector<int>& w) {
  json a = json::array();
  for (int s : w) a.push_back(s + 1);
  return a;
}

inline json weyl_json(const WeylElement& w) { return {{"word", word_json(w.word)}, {"length", w.length}}; }

inline json character_json(const Character& ch) {
  json a = json::array();
  for (const auto& [w, m] : ch) a.push_back({{"weight", w}, {"mult", m}});
  return a;
}

// ---------------------------------------------------------------------------
// F-zips

inline GaloisField field_from_json(const json& base) {
  require_keys(base, {"p", "e"}, "base");
  return GaloisField(get<long long>(base, "p", "base"), base.value("e", 1));
}

inline GFMatrix matrix_from_json(const GaloisField& F, const json& rows, std::size_t cols, const std::string& what) {
  if (!rows.is_array()) throw Error(what + " must be an array of rows");
  GFMatrix m(F, 0, cols);
  for (const auto& r : rows) {
    if (!r.is_array() || r.size() != cols) throw Error(what + " has a row of the wrong length");
    std::vector<GaloisField::value_type> row;
    for (const auto& x : r) {
      if (!x.is_number_integer()) throw Error(what + " has a non-integer entry");
      const long long v = x.get<long long>();
      if (v < 0 || v >= F.order()) throw Error(what + " has an entry outside the field");
      row.push_back(static_cast<GaloisField::value_type>(v));
    }
    m.append_row(row);
  }
  return m;
}

inline json matrix_json(const GFMatrix& m) {
  json a = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    a.push_back(row);
  }
  return a;
}

inline FZip fzip_from_json(const json& j) {
  require_keys(j, {"base", "dim", "C", "D", "phi"}, "F-zip");
  const auto F = field_from_json(j.at("base"));
  const auto dim = get<std::size_t>(j, "dim", "F-zip");
  auto steps = [&](const char* key) {
    std::vector<std::pair<int, GFMatrix>> out;
    if (!j.contains(key) || !j.at(key).is_array()) throw Error(std::string("F-zip needs an array \"") + key + "\"");
    for (const auto& s : j.at(key)) {
      require_keys(s, {"i", "rows"}, std::string("filtration step of ") + key);
      out.emplace_back(get<int>(s, "i", key), matrix_from_json(F, s.at("rows"), dim, std::string(key) + " step"));
    }
    return out;
  };
  auto C = steps("C");
  auto D = steps("D");
  std::map<int, GFMatrix> phi;
  if (j.contains("phi")) {
    for (const auto& s : j.at("phi")) {
      require_keys(s, {"i", "matrix"}, "phi entry");
      const int i = get<int>(s, "i", "phi entry");
      const auto& rows = s.at("matrix");
      const std::size_t n = rows.is_array() ? rows.size() : 0;
      phi.emplace(i, matrix_from_json(F, rows, n, "phi matrix"));
    }
  }
  return make_fzip(F, dim, C, D, std::move(phi));
}

inline json fzip_to_json(const FZip& z) {
  json C = json::array(), D = json::array(), phi = json::array();
  for (const auto& [i, s] : z.C) C.push_back({{"i", i}, {"rows", matrix_json(s.basis())}});
  for (const auto& [i, s] : z.D) D.push_back({{"i", i}, {"rows", matrix_json(s.basis())}});
  for (const auto& [i, m] : z.phi) phi.push_back({{"i", i}, {"matrix", matrix_json(m)}});
  return {{"base", {{"p", z.field.characteristic()}, {"e", z.field.degree()}}},
          {"dim", z.dim},
          {"C", C},
          {"D", D},
          {"phi", phi}};
}

inline json type_json(const std::map<int, long long>& t) {
  json o = json::object();
  for (const auto& [i, d] : t) o[std::to_string(i)] = d;
  return o;
}

// ---------------------------------------------------------------------------
// Reports

inline json page_json(const BGGPage& page) {
  json rows = json::array();
  for (const auto& r : page.rows) {
    json entries = json::array();
    for (const auto& e : r.entries)
      entries.push_back({{"word", word_json(e.w.word)},
                         {"length", e.w.length},
                         {"w_dot_lambda", e.w_dot_lambda},
                         {"levi_dim", e.levi_dim},
                         {"levi_dominant", e.levi_dominant}});
    json row = {{"a", r.a}, {"entries", entries}};
    if (page.i) row["summands"] = r.summands;
    rows.push_back(row);
  }
  auto steps = [](const std::map<long long, std::vector<std::vector<int>>>& m) {
    json a = json::array();
    for (const auto& [i, ws] : m) {
      json words = json::array();
      for (const auto& w : ws) words.push_back(word_json(w));
      a.push_back({{"i", i}, {"words", words}});
    }
    return a;
  };
  json out = {{"lambda", page.lambda}, {"H", page.H}, {"rows", rows}, {"C_steps", steps(page.c_steps)},
              {"D_steps", steps(page.d_steps)}, {"warnings", page.warnings}, {"discrepancies", page.discrepancies}};
  if (page.i) out["i"] = *page.i;
  if (page.prime) {
    out["prime"] = *page.prime;
    out["p_small"] = *page.p_small;
  }
  return out;
}

inline json kostant_json(const KostantReport& r) {
  json terms = json::array();
  for (const auto& [w, x] : r.terms) terms.push_back({{"word", word_json(w)}, {"w_dot_0", x}});
  return {{"a", r.a}, {"equal", r.equal}, {"terms", terms}};
}

}  // namespace hodgep::json_io
