#pragma once

// Word-size prime fields and polynomials over them: primality, resultants,
// squarefree decomposition and distinct/equal-degree factorization.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hurwitz/upoly.hpp"

namespace hurwitz {

using u64 = std::uint64_t;

inline u64 mulmod(u64 a, u64 b, u64 p) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p);
}
inline u64 addmod(u64 a, u64 b, u64 p) {
  u64 s = a + b;
  return (s >= p || s < a) ? s - p : s;
}
inline u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + (p - b); }
inline u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}
inline u64 invmod(u64 a, u64 p) {
  if (a % p == 0) throw std::domain_error("inverse of zero mod p");
  return powmod(a, p - 2, p);
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline u64 next_prime(u64 n) {
  while (!is_prime_u64(n)) ++n;
  return n;
}

inline u64 prev_prime(u64 n) {
  while (!is_prime_u64(n)) --n;
  return n;
}

// Residue of a rational mod p; false when p divides the denominator.
inline bool reduce_mod(const mpq_class& q, u64 p, u64& out) {
  u64 den = mpz_fdiv_ui(q.get_den_mpz_t(), p);
  if (den == 0) return false;
  u64 num = mpz_fdiv_ui(q.get_num_mpz_t(), p);
  out = mulmod(num, invmod(den, p), p);
  return true;
}

// Polynomials over GF(p), low degree first, trimmed.
struct ModPoly {
  std::vector<u64> c;
  u64 p = 2;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  u64 lc() const { return c.back(); }
  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
};

namespace modp {

inline ModPoly make(std::vector<u64> c, u64 p) {
  ModPoly f{std::move(c), p};
  f.trim();
  return f;
}

inline ModPoly x_poly(u64 p) { return make({0, 1}, p); }

inline ModPoly add(const ModPoly& a, const ModPoly& b) {
  std::vector<u64> c(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) c[i] = a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) c[i] = addmod(c[i], b.c[i], a.p);
  return make(std::move(c), a.p);
}

inline ModPoly sub(const ModPoly& a, const ModPoly& b) {
  std::vector<u64> c(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) c[i] = a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) c[i] = submod(c[i], b.c[i], a.p);
  return make(std::move(c), a.p);
}

inline ModPoly mul(const ModPoly& a, const ModPoly& b) {
  if (a.is_zero() || b.is_zero()) return {{}, a.p};
  std::vector<u64> c(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      c[i + j] = addmod(c[i + j], mulmod(a.c[i], b.c[j], a.p), a.p);
    }
  }
  return make(std::move(c), a.p);
}

inline ModPoly scale(const ModPoly& a, u64 k) {
  std::vector<u64> c(a.c.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = mulmod(a.c[i], k, a.p);
  return make(std::move(c), a.p);
}

inline std::pair<ModPoly, ModPoly> divmod(const ModPoly& a, const ModPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero mod p");
  const u64 p = a.p;
  if (a.degree() < b.degree()) return {ModPoly{{}, p}, a};
  std::vector<u64> r = a.c, q(a.c.size() - b.c.size() + 1, 0);
  u64 inv = invmod(b.lc(), p);
  for (std::size_t k = q.size(); k-- > 0;) {
    u64 f = mulmod(r[k + b.c.size() - 1], inv, p);
    q[k] = f;
    if (f == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) r[k + j] = submod(r[k + j], mulmod(f, b.c[j], p), p);
  }
  r.resize(b.c.size() - 1);
  return {make(std::move(q), p), make(std::move(r), p)};
}

inline ModPoly rem(const ModPoly& a, const ModPoly& b) { return divmod(a, b).second; }
inline ModPoly quo(const ModPoly& a, const ModPoly& b) { return divmod(a, b).first; }

inline ModPoly monic(const ModPoly& a) {
  if (a.is_zero()) return a;
  return scale(a, invmod(a.lc(), a.p));
}

inline ModPoly gcd(ModPoly a, ModPoly b) {
  while (!b.is_zero()) {
    ModPoly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

inline ModPoly derivative(const ModPoly& a) {
  if (a.c.size() <= 1) return {{}, a.p};
  std::vector<u64> c(a.c.size() - 1);
  for (std::size_t i = 1; i < a.c.size(); ++i) c[i - 1] = mulmod(a.c[i], i % a.p, a.p);
  return make(std::move(c), a.p);
}

inline ModPoly powmod_poly(ModPoly base, u64 e, const ModPoly& m) {
  ModPoly r = make({1}, m.p);
  base = rem(base, m);
  while (e) {
    if (e & 1) r = rem(mul(r, base), m);
    e >>= 1;
    if (e) base = rem(mul(base, base), m);
  }
  return r;
}

inline u64 eval(const ModPoly& a, u64 x) {
  u64 r = 0;
  for (std::size_t i = a.c.size(); i-- > 0;) r = addmod(mulmod(r, x, a.p), a.c[i], a.p);
  return r;
}

// Resultant by the Euclidean algorithm, with formal degrees equal to the
// actual degrees.
inline u64 resultant(ModPoly a, ModPoly b) {
  const u64 p = a.p;
  if (a.is_zero() || b.is_zero()) return 0;
  u64 res = 1;
  while (b.degree() > 0) {
    int da = a.degree(), db = b.degree();
    ModPoly r = rem(a, b);
    if (r.is_zero()) return 0;
    // res(a,b) = (-1)^(da*db) lc(b)^(da - dr) res(b, r)
    if ((da & 1) && (db & 1)) res = submod(0, res, p);
    res = mulmod(res, powmod(b.lc(), static_cast<u64>(da - r.degree()), p), p);
    a = std::move(b);
    b = std::move(r);
  }
  if (b.is_zero()) return 0;
  return mulmod(res, powmod(b.lc(), static_cast<u64>(a.degree()), p), p);
}

// Reduction of a rational polynomial; false if p divides a denominator or
// the leading coefficient.
inline bool reduce(const QPoly& f, u64 p, ModPoly& out) {
  std::vector<u64> c(f.coeffs().size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!reduce_mod(f.coeffs()[i], p, c[i])) return false;
  }
  out = make(std::move(c), p);
  return out.degree() == f.degree();
}

// Squarefree decomposition of a monic f over GF(p), including the p-th
// power parts that appear when p <= degree.
inline std::vector<std::pair<ModPoly, int>> squarefree(const ModPoly& f) {
  std::vector<std::pair<ModPoly, int>> out;
  if (f.degree() < 1) return out;
  ModPoly c = monic(gcd(f, derivative(f)));
  ModPoly w = quo(f, c);
  for (int i = 1; w.degree() >= 1; ++i) {
    ModPoly y = monic(gcd(w, c));
    ModPoly fac = quo(w, y);
    if (fac.degree() >= 1) out.emplace_back(monic(fac), i);
    w = y;
    c = quo(c, y);
  }
  if (c.degree() >= 1) {
    // c is a polynomial in x^p; over GF(p) its p-th root just spreads the exponents
    std::vector<u64> root;
    for (std::size_t k = 0; k < c.c.size(); k += f.p) root.push_back(c.c[k]);
    for (const auto& [g, e] : squarefree(make(std::move(root), f.p))) {
      out.emplace_back(g, e * static_cast<int>(f.p));
    }
  }
  return out;
}

// Distinct-degree factorization of a monic squarefree polynomial: pairs of
// (degree d, product of all irreducible factors of degree d).
inline std::vector<std::pair<int, ModPoly>> distinct_degree(ModPoly f) {
  std::vector<std::pair<int, ModPoly>> out;
  const u64 p = f.p;
  ModPoly h = x_poly(p);
  ModPoly x = x_poly(p);
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    h = powmod_poly(h, p, f);
    ModPoly g = gcd(f, sub(h, x));
    if (g.degree() > 0) {
      out.emplace_back(d, g);
      f = quo(f, g);
      h = rem(h, f);
    }
  }
  if (f.degree() > 0) out.emplace_back(f.degree(), monic(f));
  return out;
}

// Cantor-Zassenhaus splitting of a product of irreducibles of degree d.
inline void equal_degree(const ModPoly& f, int d, std::mt19937_64& rng, std::vector<ModPoly>& out) {
  if (f.degree() == d) {
    out.push_back(monic(f));
    return;
  }
  const u64 p = f.p;
  for (;;) {
    std::vector<u64> c(static_cast<std::size_t>(f.degree()));
    for (auto& v : c) v = rng() % p;
    ModPoly a = make(std::move(c), p);
    if (a.degree() < 1) continue;
    ModPoly g;
    if (p == 2) {
      // trace map a + a^2 + ... + a^(2^(d-1))
      ModPoly t = a, s = a;
      for (int i = 1; i < d; ++i) {
        t = rem(mul(t, t), f);
        s = add(s, t);
      }
      g = gcd(f, s);
    } else {
      // a^((p^d-1)/2) = (a^(1+p+...+p^(d-1)))^((p-1)/2); avoids overflowing p^d
      ModPoly acc = make({1}, p);
      ModPoly cur = a;
      for (int i = 0; i < d; ++i) {
        acc = rem(mul(acc, cur), f);
        cur = powmod_poly(cur, p, f);
      }
      acc = powmod_poly(acc, (p - 1) / 2, f);
      g = gcd(f, sub(acc, make({1}, p)));
    }
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, rng, out);
      equal_degree(quo(f, g), d, rng, out);
      return;
    }
  }
}

}  // namespace modp

struct ModFactor {
  int degree;
  int multiplicity;
  friend bool operator==(const ModFactor& a, const ModFactor& b) {
    return a.degree == b.degree && a.multiplicity == b.multiplicity;
  }
  friend bool operator<(const ModFactor& a, const ModFactor& b) {
    return a.degree != b.degree ? a.degree > b.degree : a.multiplicity > b.multiplicity;
  }
};

// Degree multiset of the irreducible factors of f mod p.
inline std::vector<ModFactor> factor_mod_p(const ModPoly& f, std::uint64_t seed = 0) {
  std::mt19937_64 rng(seed);
  std::vector<ModFactor> out;
  for (const auto& [g, e] : modp::squarefree(modp::monic(f))) {
    for (const auto& [d, prod] : modp::distinct_degree(g)) {
      std::vector<ModPoly> parts;
      modp::equal_degree(prod, d, rng, parts);
      for (std::size_t i = 0; i < parts.size(); ++i) out.push_back({d, e});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Degrees of the irreducible factors of a squarefree f mod p (DDF only).
inline std::vector<int> factor_degrees_squarefree(const ModPoly& f) {
  std::vector<int> out;
  for (const auto& [d, prod] : modp::distinct_degree(modp::monic(f))) {
    for (int i = 0; i < prod.degree() / d; ++i) out.push_back(d);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

}  // namespace hurwitz
