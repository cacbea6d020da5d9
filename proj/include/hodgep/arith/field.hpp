#pragma once

// Exact scalar fields. Arithmetic goes through the field object (F.add(a, b),
// F.mul(a, b), ...) so that element types stay plain values and finite
// fields can carry their tables in one shared place.

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "hodgep/error.hpp"

namespace hodgep {

template <class F>
concept ExactField = requires(const F& f, const typename F::value_type& a, long long n) {
  { f.zero() } -> std::same_as<typename F::value_type>;
  { f.one() } -> std::same_as<typename F::value_type>;
  { f.from_int(n) } -> std::same_as<typename F::value_type>;
  { f.add(a, a) } -> std::same_as<typename F::value_type>;
  { f.sub(a, a) } -> std::same_as<typename F::value_type>;
  { f.mul(a, a) } -> std::same_as<typename F::value_type>;
  { f.div(a, a) } -> std::same_as<typename F::value_type>;
  { f.neg(a) } -> std::same_as<typename F::value_type>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
  { f.equal(a, a) } -> std::convertible_to<bool>;
  { f.characteristic() } -> std::convertible_to<long long>;
  { f.to_string(a) } -> std::convertible_to<std::string>;
};

/// The rational numbers, backed by GMP.
class Rationals {
 public:
  using value_type = mpq_class;

  value_type zero() const { return value_type(0); }
  value_type one() const { return value_type(1); }
  value_type from_int(long long n) const { return value_type(static_cast<long>(n)); }
  value_type from_rational(const mpq_class& q) const { return q; }

  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type div(const value_type& a, const value_type& b) const {
    if (sgn(b) == 0) throw Error("division by zero");
    return a / b;
  }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const { return div(one(), a); }

  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }

  long long characteristic() const { return 0; }
  int degree() const { return 1; }
  long long order() const { return 0; }
  std::string name() const { return "Q"; }
  std::string to_string(const value_type& a) const { return a.get_str(); }

  bool operator==(const Rationals&) const { return true; }
};

namespace detail {

inline bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Polynomials over F_p are coefficient vectors, constant term first.
using PolyP = std::vector<long long>;

inline PolyP poly_mod(PolyP a, const PolyP& m, long long p) {
  // m is monic
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    long long lead = a.back() % p;
    if (lead != 0) {
      const std::size_t shift = a.size() - 1 - dm;
      for (std::size_t i = 0; i <= dm; ++i)
        a[shift + i] = ((a[shift + i] - lead * m[i]) % p + p) % p;
    }
    a.pop_back();
  }
  return a;
}

inline bool poly_is_irreducible(const PolyP& f, long long p) {
  const int e = static_cast<int>(f.size()) - 1;
  for (int d = 1; 2 * d <= e; ++d) {
    long long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long long code = 0; code < count; ++code) {
      PolyP g(d + 1, 0);
      long long c = code;
      for (int i = 0; i < d; ++i) {
        g[i] = c % p;
        c /= p;
      }
      g[d] = 1;
      PolyP r = poly_mod(f, g, p);
      bool zero = true;
      for (auto x : r) zero = zero && (x % p == 0);
      if (zero) return false;
    }
  }
  return true;
}

struct GfTables {
  long long p = 2;
  int e = 1;
  long long q = 2;
  PolyP modulus;                 // monic irreducible of degree e
  std::vector<std::uint32_t> exp_table;  // length 2(q-1)
  std::vector<std::int32_t> log_table;   // log_table[0] unused (-1)
};

inline std::shared_ptr<const GfTables> build_tables(long long p, int e) {
  auto t = std::make_shared<GfTables>();
  t->p = p;
  t->e = e;
  long long q = 1;
  for (int i = 0; i < e; ++i) q *= p;
  t->q = q;
  if (e == 1) {
    t->modulus = {0, 1};
    return t;
  }
  // lexicographically first monic irreducible polynomial of degree e
  long long count = q;
  for (long long code = 0; code < count; ++code) {
    PolyP f(e + 1, 0);
    long long c = code;
    for (int i = 0; i < e; ++i) {
      f[i] = c % p;
      c /= p;
    }
    f[e] = 1;
    if (f[0] == 0) continue;
    if (poly_is_irreducible(f, p)) {
      t->modulus = f;
      break;
    }
  }
  auto to_poly = [&](long long v) {
    PolyP a(e, 0);
    for (int i = 0; i < e; ++i) {
      a[i] = v % p;
      v /= p;
    }
    return a;
  };
  auto to_int = [&](const PolyP& a) {
    long long v = 0;
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) v = v * p + a[i];
    return v;
  };
  auto mulmod = [&](long long x, long long y) {
    PolyP a = to_poly(x), b = to_poly(y);
    PolyP r(2 * e, 0);
    for (int i = 0; i < e; ++i)
      for (int j = 0; j < e; ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    r = poly_mod(r, t->modulus, p);
    r.resize(e, 0);
    return to_int(r);
  };
  for (long long g = 2; g < q; ++g) {
    std::vector<std::uint32_t> ex;
    ex.reserve(q - 1);
    long long x = 1;
    bool primitive = true;
    for (long long k = 0; k < q - 1; ++k) {
      if (k > 0 && x == 1) {
        primitive = false;
        break;
      }
      ex.push_back(static_cast<std::uint32_t>(x));
      x = mulmod(x, g);
    }
    if (!primitive || x != 1) continue;
    t->exp_table.resize(2 * (q - 1));
    t->log_table.assign(q, -1);
    for (long long k = 0; k < q - 1; ++k) {
      t->exp_table[k] = ex[k];
      t->exp_table[k + q - 1] = ex[k];
      t->log_table[ex[k]] = static_cast<std::int32_t>(k);
    }
    break;
  }
  if (t->exp_table.empty()) throw Error("failed to construct finite field tables");
  return t;
}

inline std::shared_ptr<const GfTables> shared_tables(long long p, int e) {
  static std::mutex mu;
  static std::map<std::pair<long long, int>, std::shared_ptr<const GfTables>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, e);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto t = build_tables(p, e);
  cache.emplace(key, t);
  return t;
}

}  // namespace detail

/// The finite field F_q with q = p^e. Elements are integers 0..q-1 read as
/// base-p digit strings of polynomial coefficients modulo a fixed irreducible
/// polynomial (the lexicographically first monic one); F_p is the case e = 1.
class GaloisField {
 public:
  using value_type = std::uint32_t;

  static constexpr long long max_order = 1 << 20;

  GaloisField() : GaloisField(2) {}
  GaloisField(long long p, int e = 1) {
    if (!detail::is_prime(p)) throw Error("field characteristic " + std::to_string(p) + " is not prime");
    if (e < 1) throw Error("field degree must be positive");
    long long q = 1;
    for (int i = 0; i < e; ++i) {
      q *= p;
      if (q > max_order) throw Error("field order too large");
    }
    t_ = detail::shared_tables(p, e);
  }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long long n) const {
    long long r = n % t_->p;
    if (r < 0) r += t_->p;
    return static_cast<value_type>(r);
  }
  /// Reduction of a rational number; fails when p divides the denominator.
  value_type from_rational(const mpq_class& x) const {
    mpz_class den = x.get_den();
    mpz_class pz = static_cast<long>(t_->p);
    mpz_class dr = den % pz;
    if (dr == 0)
      throw Error("denominator " + den.get_str() + " is not invertible modulo " + std::to_string(t_->p));
    mpz_class nr = x.get_num() % pz;
    if (nr < 0) nr += pz;
    return div(from_int(nr.get_si()), from_int(dr.get_si()));
  }

  value_type add(value_type a, value_type b) const {
    if (t_->e == 1) {
      long long s = static_cast<long long>(a) + b;
      return static_cast<value_type>(s >= t_->p ? s - t_->p : s);
    }
    return digitwise(a, b, +1);
  }
  value_type sub(value_type a, value_type b) const {
    if (t_->e == 1) {
      long long s = static_cast<long long>(a) - b;
      return static_cast<value_type>(s < 0 ? s + t_->p : s);
    }
    return digitwise(a, b, -1);
  }
  value_type neg(value_type a) const { return sub(0, a); }
  value_type mul(value_type a, value_type b) const {
    if (a == 0 || b == 0) return 0;
    if (t_->e == 1) return static_cast<value_type>((static_cast<long long>(a) * b) % t_->p);
    return t_->exp_table[t_->log_table[a] + t_->log_table[b]];
  }
  value_type inv(value_type a) const {
    if (a == 0) throw Error("division by zero");
    if (t_->e == 1) return pow_prime(a, t_->p - 2);
    const long long n = t_->q - 1;
    return t_->exp_table[(n - t_->log_table[a]) % n];
  }
  value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }
  value_type pow(value_type a, long long k) const {
    value_type r = 1;
    value_type base = a;
    while (k > 0) {
      if (k & 1) r = mul(r, base);
      base = mul(base, base);
      k >>= 1;
    }
    return r;
  }
  /// Absolute Frobenius x -> x^p.
  value_type frobenius(value_type a) const { return t_->e == 1 ? a : pow(a, t_->p); }

  bool is_zero(value_type a) const { return a == 0; }
  bool equal(value_type a, value_type b) const { return a == b; }

  long long characteristic() const { return t_->p; }
  int degree() const { return t_->e; }
  long long order() const { return t_->q; }
  std::string name() const {
    return t_->e == 1 ? "F_" + std::to_string(t_->p)
                      : "F_" + std::to_string(t_->p) + "^" + std::to_string(t_->e);
  }
  std::string to_string(value_type a) const { return std::to_string(a); }

  /// F_p-coordinates of an element in the basis 1, x, ..., x^{e-1}.
  std::vector<long long> digits(value_type a) const {
    std::vector<long long> d(t_->e, 0);
    long long v = a;
    for (int i = 0; i < t_->e; ++i) {
      d[i] = v % t_->p;
      v /= t_->p;
    }
    return d;
  }
  value_type from_digits(const std::vector<long long>& d) const {
    long long v = 0;
    for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) v = v * t_->p + ((d[i] % t_->p) + t_->p) % t_->p;
    return static_cast<value_type>(v);
  }
  /// The element x^k of the polynomial basis.
  value_type basis_element(int k) const {
    std::vector<long long> d(t_->e, 0);
    d[k] = 1;
    return from_digits(d);
  }

  bool operator==(const GaloisField& o) const { return t_->p == o.t_->p && t_->e == o.t_->e; }

 private:
  value_type pow_prime(value_type a, long long k) const {
    long long r = 1, b = a, p = t_->p;
    while (k > 0) {
      if (k & 1) r = r * b % p;
      b = b * b % p;
      k >>= 1;
    }
    return static_cast<value_type>(r);
  }
  value_type digitwise(value_type a, value_type b, int sign) const {
    long long r = 0, scale = 1, x = a, y = b;
    const long long p = t_->p;
    for (int i = 0; i < t_->e; ++i) {
      long long d = (x % p + sign * (y % p) + p) % p;
      r += d * scale;
      scale *= p;
      x /= p;
      y /= p;
    }
    return static_cast<value_type>(r);
  }

  std::shared_ptr<const detail::GfTables> t_;
};

static_assert(ExactField<Rationals>);
static_assert(ExactField<GaloisField>);

}  // namespace hodgep
