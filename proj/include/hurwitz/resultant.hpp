#pragma once

// Resultants and discriminants over Z[t] by evaluation/interpolation modulo
// many 62-bit primes and Chinese remaindering. The number of primes comes
// from a bound on the coefficients of the Sylvester determinant, so the
// result is exact, not heuristic.

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hurwitz/bipoly.hpp"
#include "hurwitz/modp.hpp"
#include "hurwitz/upoly.hpp"

namespace hurwitz {

// Integer bivariate polynomial: a[j][k] is the coefficient of t^j x^k.
using ZBiCoeffs = std::vector<ZCoeffs>;

namespace detail {

inline ZBiCoeffs to_integer(const BiPoly& f, mpz_class& scale) {
  scale = 1;
  for (const auto& row : f.rows()) {
    for (const auto& c : row.coeffs()) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), c.get_den_mpz_t());
  }
  ZBiCoeffs a;
  for (const auto& row : f.rows()) {
    ZCoeffs r;
    for (const auto& c : row.coeffs()) r.push_back(mpz_class(c * scale));
    a.push_back(std::move(r));
  }
  return a;
}

inline double log2_norm1(const ZBiCoeffs& a) {
  mpz_class s = 0;
  for (const auto& row : a) {
    for (const auto& c : row) s += abs(c);
  }
  if (s == 0) return 0;
  long e = 0;
  double d = mpz_get_d_2exp(&e, s.get_mpz_t());
  return static_cast<double>(e) + std::log2(d);
}

inline ZBiCoeffs derivative_x(const ZBiCoeffs& a) {
  ZBiCoeffs d;
  for (const auto& row : a) {
    ZCoeffs r;
    for (std::size_t k = 1; k < row.size(); ++k) r.push_back(row[k] * static_cast<unsigned long>(k));
    d.push_back(std::move(r));
  }
  return d;
}

inline int deg_x(const ZBiCoeffs& a) {
  int d = -1;
  for (const auto& row : a) {
    for (int k = static_cast<int>(row.size()) - 1; k >= 0; --k) {
      if (sgn(row[static_cast<std::size_t>(k)]) != 0) {
        d = std::max(d, k);
        break;
      }
    }
  }
  return d;
}

// Values of a mod p at t = t0 as a polynomial in x.
inline ModPoly eval_t(const std::vector<std::vector<u64>>& a, u64 t0, u64 p) {
  std::size_t width = 0;
  for (const auto& row : a) width = std::max(width, row.size());
  std::vector<u64> c(width, 0);
  for (std::size_t j = a.size(); j-- > 0;) {
    for (std::size_t k = 0; k < width; ++k) {
      u64 v = k < a[j].size() ? a[j][k] : 0;
      c[k] = addmod(mulmod(c[k], t0, p), v, p);
    }
  }
  return modp::make(std::move(c), p);
}

inline std::vector<std::vector<u64>> reduce_all(const ZBiCoeffs& a, u64 p) {
  std::vector<std::vector<u64>> r(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    r[j].resize(a[j].size());
    for (std::size_t k = 0; k < a[j].size(); ++k) r[j][k] = mpz_fdiv_ui(a[j][k].get_mpz_t(), p);
  }
  return r;
}

// Coefficients of the interpolating polynomial through (xs[i], ys[i]).
inline std::vector<u64> interpolate(const std::vector<u64>& xs, std::vector<u64> ys, u64 p) {
  const std::size_t n = xs.size();
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = n - 1; i >= j; --i) {
      u64 num = submod(ys[i], ys[i - 1], p);
      u64 den = submod(xs[i], xs[i - j], p);
      ys[i] = mulmod(num, invmod(den, p), p);
      if (i == j) break;
    }
  }
  // Newton form to monomial basis.
  std::vector<u64> c(n, 0);
  for (std::size_t i = n; i-- > 0;) {
    // c = c * (x - xs[i]) + ys[i]
    for (std::size_t k = n - 1; k > 0; --k) c[k] = submod(c[k - 1], mulmod(c[k], xs[i], p), p);
    c[0] = submod(0, mulmod(c[0], xs[i], p), p);
    c[0] = addmod(c[0], ys[i], p);
  }
  return c;
}

class Crt {
 public:
  explicit Crt(std::size_t len) : value_(len, 0), modulus_(1) {}

  void add(const std::vector<u64>& residues, u64 p) {
    u64 minv = invmod(mpz_fdiv_ui(modulus_.get_mpz_t(), p), p);
    for (std::size_t i = 0; i < value_.size(); ++i) {
      u64 cur = mpz_fdiv_ui(value_[i].get_mpz_t(), p);
      u64 k = mulmod(submod(residues[i], cur, p), minv, p);
      value_[i] += modulus_ * static_cast<unsigned long>(k);
    }
    modulus_ *= static_cast<unsigned long>(p);
  }
  const mpz_class& modulus() const { return modulus_; }
  double log2_modulus() const { return static_cast<double>(mpz_sizeinbase(modulus_.get_mpz_t(), 2)) - 1; }

  // Symmetric representatives.
  std::vector<mpz_class> symmetric() const {
    mpz_class half = modulus_ / 2;
    std::vector<mpz_class> out = value_;
    for (auto& v : out) {
      if (v > half) v -= modulus_;
    }
    return out;
  }

 private:
  std::vector<mpz_class> value_;
  mpz_class modulus_;
};

}  // namespace detail

// Res_x(f, g) for f, g in Z[t][x], returned in Z[t]. Degrees in x are the
// true degrees of f and g as polynomials over Q(t).
inline ZCoeffs resultant_x(const ZBiCoeffs& f, const ZBiCoeffs& g) {
  const int n = detail::deg_x(f), m = detail::deg_x(g);
  if (n < 0 || m < 0) throw PolyError("resultant of zero polynomial");
  const int dt = static_cast<int>(f.size()) - 1, gt = static_cast<int>(g.size()) - 1;
  const int out_deg = m * std::max(dt, 0) + n * std::max(gt, 0);
  // |coefficients| <= ||f||_1^m ||g||_1^n
  const double bits = m * detail::log2_norm1(f) + n * detail::log2_norm1(g) + 2;
  detail::Crt crt(static_cast<std::size_t>(out_deg + 1));
  u64 p = (1ull << 62);
  while (crt.log2_modulus() < bits) {
    p = prev_prime(p - 1);
    auto fr = detail::reduce_all(f, p), gr = detail::reduce_all(g, p);
    std::vector<u64> xs, ys;
    u64 t0 = 0;
    bool skip_prime = false;
    while (xs.size() < static_cast<std::size_t>(out_deg + 1)) {
      if (t0 > static_cast<u64>(out_deg) + 64) {
        skip_prime = true;  // leading coefficient vanishes too often mod p
        break;
      }
      ModPoly a = detail::eval_t(fr, t0, p), b = detail::eval_t(gr, t0, p);
      if (a.degree() == n && b.degree() == m) {
        xs.push_back(t0);
        ys.push_back(modp::resultant(a, b));
      }
      ++t0;
    }
    if (skip_prime) continue;
    crt.add(detail::interpolate(xs, ys, p), p);
  }
  ZCoeffs out = crt.symmetric();
  detail::trim(out);
  return out;
}

// Resultant of two univariate integer polynomials.
inline mpz_class resultant(const ZCoeffs& f, const ZCoeffs& g) {
  ZCoeffs r = resultant_x(ZBiCoeffs{f}, ZBiCoeffs{g});
  return r.empty() ? mpz_class(0) : r[0];
}

inline mpq_class resultant(const QPoly& f, const QPoly& g) {
  if (f.is_zero() || g.is_zero()) return 0;
  // res(f/a, g/b) = a^(-deg g) b^(-deg f) res(f, g) for integer scalings
  mpz_class a = 1, b = 1;
  for (const auto& c : f.coeffs()) mpz_lcm(a.get_mpz_t(), a.get_mpz_t(), c.get_den_mpz_t());
  for (const auto& c : g.coeffs()) mpz_lcm(b.get_mpz_t(), b.get_mpz_t(), c.get_den_mpz_t());
  ZCoeffs fz, gz;
  for (const auto& c : f.coeffs()) fz.push_back(mpz_class(c * a));
  for (const auto& c : g.coeffs()) gz.push_back(mpz_class(c * b));
  mpq_class r(resultant(fz, gz));
  mpz_class da, db;
  mpz_pow_ui(da.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(g.degree()));
  mpz_pow_ui(db.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(f.degree()));
  r /= mpq_class(da * db);
  r.canonicalize();
  return r;
}

// disc_x f = (-1)^(n(n-1)/2) Res_x(f, f_x) / lc_x(f), as a polynomial in t.
inline QPoly disc_x(const BiPoly& f) {
  if (f.is_zero()) throw PolyError("discriminant of zero polynomial");
  const int n = f.deg_x();
  if (n < 1) throw PolyError("discriminant needs positive x-degree");
  if (n == 1) return QPoly::constant(1);
  mpz_class scale;
  ZBiCoeffs a = detail::to_integer(f, scale);
  ZCoeffs r = resultant_x(a, detail::derivative_x(a));
  QPoly res = from_integers(r);
  ZCoeffs lc;
  for (const auto& row : a) lc.push_back(static_cast<std::size_t>(n) < row.size() ? row[static_cast<std::size_t>(n)] : 0);
  detail::trim(lc);
  QPoly d = exact_quotient(res, from_integers(lc));
  if ((n * (n - 1) / 2) % 2 == 1) d = -d;
  // disc(scale*f) = scale^(2n-2) disc(f)
  mpz_class s;
  mpz_pow_ui(s.get_mpz_t(), scale.get_mpz_t(), static_cast<unsigned long>(2 * n - 2));
  return mpq_class(mpq_class(1) / mpq_class(s)) * d;
}

inline mpq_class discriminant(const QPoly& f) {
  QPoly d = disc_x(BiPoly::from_x(f));
  return d.is_zero() ? mpq_class(0) : d.coeff(0);
}

}  // namespace hurwitz
