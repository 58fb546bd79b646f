#pragma once

// Dense univariate polynomials over an exact field K. Coefficients are
// stored low degree first and trimmed so the leading one is nonzero.
//
// K must provide + - * / and a free function is_zero(const K&). A
// default-constructed K must act as zero.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hurwitz/expr.hpp"

namespace hurwitz {

inline bool is_zero(const mpq_class& q) { return sgn(q) == 0; }
inline bool is_zero(const mpz_class& z) { return sgn(z) == 0; }

namespace detail {
// Unqualified call so coefficient types declared later are found by ADL.
template <class K>
bool coeff_zero(const K& k) {
  return is_zero(k);
}
}  // namespace detail

class PolyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <class K>
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<K> c) : c_(std::move(c)) { trim(); }
  UniPoly(std::initializer_list<K> c) : c_(c) { trim(); }

  static UniPoly constant(const K& k) { return UniPoly(std::vector<K>{k}); }
  static UniPoly monomial(const K& k, std::size_t deg) {
    std::vector<K> c(deg + 1);
    c[deg] = k;
    return UniPoly(std::move(c));
  }

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<K>& coeffs() const { return c_; }
  K coeff(std::size_t i) const { return i < c_.size() ? c_[i] : K(); }
  const K& lc() const {
    if (c_.empty()) throw PolyError("leading coefficient of zero polynomial");
    return c_.back();
  }

  UniPoly& operator+=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
    trim();
    return *this;
  }
  UniPoly& operator-=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
    trim();
    return *this;
  }
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator-(const UniPoly& a) { return UniPoly() - a; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<K> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (detail::coeff_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
    }
    return UniPoly(std::move(c));
  }
  friend UniPoly operator*(const K& k, const UniPoly& a) {
    std::vector<K> c(a.c_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = k * a.c_[i];
    return UniPoly(std::move(c));
  }
  friend bool operator==(const UniPoly& a, const UniPoly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (!detail::coeff_zero(a.c_[i] - b.c_[i])) return false;
    }
    return true;
  }
  friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

  // Euclidean division; throws on a zero divisor.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
    if (d.is_zero()) throw PolyError("polynomial division by zero");
    std::vector<K> r = c_;
    if (degree() < d.degree()) return {UniPoly(), *this};
    std::vector<K> q(c_.size() - d.c_.size() + 1);
    K inv_lc = K(1) / d.lc();
    for (std::size_t k = q.size(); k-- > 0;) {
      K f = r[k + d.c_.size() - 1] * inv_lc;
      q[k] = f;
      if (detail::coeff_zero(f)) continue;
      for (std::size_t j = 0; j < d.c_.size(); ++j) r[k + j] = r[k + j] - f * d.c_[j];
    }
    r.resize(d.c_.size() - 1);
    return {UniPoly(std::move(q)), UniPoly(std::move(r))};
  }
  friend UniPoly operator/(const UniPoly& a, const UniPoly& b) { return a.divmod(b).first; }
  friend UniPoly operator%(const UniPoly& a, const UniPoly& b) { return a.divmod(b).second; }

  UniPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<K> c(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = K(static_cast<long>(i)) * c_[i];
    return UniPoly(std::move(c));
  }

  UniPoly monic() const {
    if (is_zero()) return {};
    return (K(1) / lc()) * *this;
  }

  template <class V>
  V eval(const V& v) const {
    V r = V();
    for (std::size_t i = c_.size(); i-- > 0;) r = r * v + V(c_[i]);
    return r;
  }

  // Polynomial composition this(g).
  UniPoly compose(const UniPoly& g) const {
    UniPoly r;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * g + constant(c_[i]);
    return r;
  }

  // x^deg * this(1/x) with deg = degree() unless a larger formal degree is given.
  UniPoly reversed(int formal_degree = -1) const {
    int d = std::max(formal_degree, degree());
    std::vector<K> c(static_cast<std::size_t>(d + 1));
    for (std::size_t i = 0; i < c_.size(); ++i) c[static_cast<std::size_t>(d) - i] = c_[i];
    return UniPoly(std::move(c));
  }

  UniPoly pow(unsigned long e) const {
    UniPoly r = constant(K(1)), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

 private:
  void trim() {
    while (!c_.empty() && detail::coeff_zero(c_.back())) c_.pop_back();
  }
  std::vector<K> c_;
};

using QPoly = UniPoly<mpq_class>;

// Monic gcd by the Euclidean algorithm.
template <class K>
UniPoly<K> poly_gcd(UniPoly<K> a, UniPoly<K> b) {
  while (!b.is_zero()) {
    auto r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// Rational polynomial helpers via primitive integer polynomials, which keep
// Euclidean remainder sequences from swelling.
using ZCoeffs = std::vector<mpz_class>;

inline mpz_class content(const ZCoeffs& a) {
  mpz_class g = 0;
  for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

// Primitive integer multiple with positive leading coefficient.
inline ZCoeffs primitive_part(const QPoly& f) {
  mpz_class den = 1;
  for (const auto& c : f.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  ZCoeffs z;
  z.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) z.push_back(mpz_class(c * den));
  mpz_class g = content(z);
  if (g != 0) {
    if (sgn(z.back()) < 0) g = -g;
    for (auto& c : z) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }
  return z;
}

inline QPoly from_integers(const ZCoeffs& z) {
  std::vector<mpq_class> c(z.begin(), z.end());
  return QPoly(std::move(c));
}

namespace detail {

inline void trim(ZCoeffs& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

// lc(b)^(deg a - deg b + 1) * a mod b, over Z.
inline ZCoeffs pseudo_remainder(ZCoeffs a, const ZCoeffs& b, std::size_t* steps = nullptr) {
  const std::size_t db = b.size();
  while (a.size() >= db && !a.empty()) {
    if (steps) ++*steps;
    mpz_class lead = a.back();
    std::size_t shift = a.size() - db;
    for (auto& c : a) c *= b.back();
    for (std::size_t j = 0; j < db; ++j) a[shift + j] -= lead * b[j];
    trim(a);
  }
  return a;
}

inline void make_primitive(ZCoeffs& a) {
  mpz_class g = content(a);
  if (g == 0) return;
  if (sgn(a.back()) < 0) g = -g;
  for (auto& c : a) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

}  // namespace detail

inline QPoly poly_gcd(const QPoly& a, const QPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  ZCoeffs x = primitive_part(a), y = primitive_part(b);
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    ZCoeffs r = detail::pseudo_remainder(x, y);
    detail::make_primitive(r);
    x = std::move(y);
    y = std::move(r);
  }
  return from_integers(x).monic();
}

// Exact division over Q when the divisor is known to divide.
inline QPoly exact_quotient(const QPoly& a, const QPoly& b) {
  auto [q, r] = a.divmod(b);
  if (!r.is_zero()) throw PolyError("inexact polynomial division");
  return q;
}

// Yun's squarefree decomposition: f = lc * prod_i (factor_i)^(i) with
// monic pairwise coprime squarefree factors. Only nonconstant factors are
// returned, paired with their multiplicity.
template <class K>
std::vector<std::pair<UniPoly<K>, int>> squarefree_decomposition(const UniPoly<K>& f) {
  std::vector<std::pair<UniPoly<K>, int>> out;
  if (f.degree() < 1) return out;
  UniPoly<K> fp = f.derivative();
  UniPoly<K> a0 = poly_gcd(f, fp);
  UniPoly<K> b = f / a0;
  UniPoly<K> c = fp / a0;
  UniPoly<K> d = c - b.derivative();
  for (int i = 1; b.degree() >= 1; ++i) {
    UniPoly<K> a = poly_gcd(b, d);
    if (a.degree() >= 1) out.emplace_back(a.monic(), i);
    b = b / a;
    c = d / a;
    d = c - b.derivative();
  }
  return out;
}

// Multiset of root multiplicities over the algebraic closure, sorted
// descending (e.g. x^2 (x^2+1) gives {2,1,1}).
template <class K>
std::vector<int> root_multiplicities(const UniPoly<K>& f) {
  std::vector<int> m;
  for (const auto& [g, e] : squarefree_decomposition(f)) {
    for (int i = 0; i < g.degree(); ++i) m.push_back(e);
  }
  std::sort(m.rbegin(), m.rend());
  return m;
}

inline QPoly squarefree_part(const QPoly& f) {
  QPoly r = QPoly::constant(1);
  for (const auto& [g, e] : squarefree_decomposition(f)) r = r * g;
  return r;
}

// Parses a polynomial in one variable; other names resolve through `params`.
inline QPoly parse_qpoly(std::string_view text, const std::string& var = "x",
                         const std::vector<std::pair<std::string, mpq_class>>& params = {}) {
  auto e = parse_expr(text);
  return evaluate<QPoly>(
      *e,
      [&](const std::string& n) -> QPoly {
        if (n == var) return QPoly::monomial(1, 1);
        for (const auto& [k, v] : params) {
          if (k == n) return QPoly::constant(v);
        }
        throw ParseError("unknown symbol " + n);
      },
      [](const mpq_class& q) { return QPoly::constant(q); },
      [](const QPoly& a, const QPoly& b) -> QPoly {
        if (b.degree() != 0) throw ParseError("division by a non-constant polynomial");
        return (1 / b.lc()) * a;
      });
}

inline std::string to_string(const QPoly& f, const std::string& var = "x") {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = f.coeffs().size(); i-- > 0;) {
    mpq_class c = f.coeffs()[i];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    if (first && c < 0) os << "-";
    mpq_class a = abs(c);
    if (a != 1 || i == 0) {
      os << a.get_str();
      if (i > 0) os << "*";
    }
    if (i > 0) os << var;
    if (i > 1) os << "^" << i;
    first = false;
  }
  return os.str();
}

}  // namespace hurwitz
