#pragma once

// Scalar modes for the deformation solver: truncated p-adic integers
// Z/p^k, complex numbers (double or MPFR with configurable digits),
// truncated power series over either, and dual numbers for exact partial
// derivatives.
//
// Each mode supplies a ScalarTraits specialization with
//   from(q)        lift of a rational
//   negligible(s)  zero to the working precision
//   score(s)       pivot quality (larger is better, -inf for negligible)

#include <gmpxx.h>

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hurwitz {

class ScalarError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<mpq_class> {
  static constexpr bool archimedean = false;
  static mpq_class from(const mpq_class& q) { return q; }
  static bool negligible(const mpq_class& a) { return sgn(a) == 0; }
  static double score(const mpq_class& a) {
    return sgn(a) == 0 ? -std::numeric_limits<double>::infinity() : std::log10(std::fabs(a.get_d()));
  }
  static bool invertible(const mpq_class& a) { return sgn(a) != 0; }
};

// ---------------------------------------------------------------------------
// Z/p^k

class Padic {
 public:
  struct Context {
    mpz_class p, modulus;
    unsigned k = 0;
  };

  static void set_context(const mpz_class& p, unsigned k) {
    Context c;
    c.p = p;
    c.k = k;
    mpz_pow_ui(c.modulus.get_mpz_t(), p.get_mpz_t(), k);
    ctx() = c;
  }
  static const Context& context() { return ctx(); }

  Padic() = default;
  Padic(long v) : v_(v) { reduce(); }  // NOLINT(google-explicit-constructor)
  explicit Padic(mpz_class v) : v_(std::move(v)) { reduce(); }

  static Padic from_rational(const mpq_class& q) {
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), q.get_den_mpz_t(), ctx().modulus.get_mpz_t()) == 0) {
      throw ScalarError("denominator " + q.get_den().get_str() + " is not a p-adic unit");
    }
    return Padic(mpz_class(q.get_num() * inv));
  }

  const mpz_class& value() const { return v_; }

  // p-adic valuation, k for zero.
  unsigned valuation() const {
    if (v_ == 0) return ctx().k;
    return static_cast<unsigned>(mpz_remove(mpz_class().get_mpz_t(), v_.get_mpz_t(), ctx().p.get_mpz_t()));
  }
  bool is_unit() const { return mpz_divisible_p(v_.get_mpz_t(), ctx().p.get_mpz_t()) == 0; }

  Padic operator-() const { return Padic(mpz_class(-v_)); }
  Padic& operator+=(const Padic& o) { v_ += o.v_; return reduce(); }
  Padic& operator-=(const Padic& o) { v_ -= o.v_; return reduce(); }
  Padic& operator*=(const Padic& o) { v_ *= o.v_; return reduce(); }
  Padic& operator/=(const Padic& o) {
    mpz_class inv;
    if (mpz_invert(inv.get_mpz_t(), o.v_.get_mpz_t(), ctx().modulus.get_mpz_t()) == 0) {
      throw ScalarError("division by a non-unit in Z/p^k");
    }
    v_ *= inv;
    return reduce();
  }
  friend Padic operator+(Padic a, const Padic& b) { return a += b; }
  friend Padic operator-(Padic a, const Padic& b) { return a -= b; }
  friend Padic operator*(Padic a, const Padic& b) { return a *= b; }
  friend Padic operator/(Padic a, const Padic& b) { return a /= b; }
  friend bool operator==(const Padic& a, const Padic& b) { return a.v_ == b.v_; }

 private:
  static Context& ctx() {
    static thread_local Context c;
    return c;
  }
  Padic& reduce() {
    if (ctx().modulus == 0) throw ScalarError("p-adic context not set");
    mpz_fdiv_r(v_.get_mpz_t(), v_.get_mpz_t(), ctx().modulus.get_mpz_t());
    return *this;
  }
  mpz_class v_;
};

template <>
struct ScalarTraits<Padic> {
  static constexpr bool archimedean = false;
  static Padic from(const mpq_class& q) { return Padic::from_rational(q); }
  static bool negligible(const Padic& a) { return a.value() == 0; }
  static double score(const Padic& a) {
    if (a.value() == 0) return -std::numeric_limits<double>::infinity();
    return -static_cast<double>(a.valuation());
  }
  static bool invertible(const Padic& a) { return a.is_unit(); }
};

// Rational n/d with |n|, d <= sqrt(m/2) and n = a d mod m, if one exists.
inline std::optional<mpq_class> rational_reconstruct(const mpz_class& a, const mpz_class& m) {
  mpz_class bound;
  mpz_class half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  mpz_class r0 = m, r1 = a % m, s0 = 0, s1 = 1;
  if (r1 < 0) r1 += m;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1, s2 = s0 - q * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  if (s1 == 0 || abs(s1) > bound) return std::nullopt;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), s1.get_mpz_t(), m.get_mpz_t());
  if (g != 1) return std::nullopt;
  mpq_class out(r1, s1);
  out.canonicalize();
  return out;
}

// ---------------------------------------------------------------------------
// complex, double or MPFR

using Mpfr = boost::multiprecision::mpfr_float;

inline void set_working_digits(unsigned digits) { Mpfr::default_precision(digits); }
inline unsigned working_digits() { return Mpfr::default_precision(); }

inline Mpfr mpfr_from(const mpq_class& q) {
  Mpfr out;
  mpfr_set_q(out.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return out;
}

struct MpComplex {
  Mpfr re, im;

  MpComplex() : re(0), im(0) {}
  MpComplex(long v) : re(v), im(0) {}  // NOLINT(google-explicit-constructor)
  MpComplex(Mpfr r, Mpfr i) : re(std::move(r)), im(std::move(i)) {}

  MpComplex operator-() const { return {-re, -im}; }
  MpComplex& operator+=(const MpComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  MpComplex& operator-=(const MpComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend MpComplex operator+(MpComplex a, const MpComplex& b) { return a += b; }
  friend MpComplex operator-(MpComplex a, const MpComplex& b) { return a -= b; }
  friend MpComplex operator*(const MpComplex& a, const MpComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  MpComplex& operator*=(const MpComplex& o) { return *this = *this * o; }
  friend MpComplex operator/(const MpComplex& a, const MpComplex& b) {
    Mpfr d = b.re * b.re + b.im * b.im;
    if (d == 0) throw ScalarError("complex division by zero");
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  MpComplex& operator/=(const MpComplex& o) { return *this = *this / o; }

  Mpfr abs() const { return boost::multiprecision::sqrt(re * re + im * im); }
  std::complex<double> to_cd() const { return {re.convert_to<double>(), im.convert_to<double>()}; }
  static MpComplex polar(const Mpfr& r, const Mpfr& theta) {
    return {r * boost::multiprecision::cos(theta), r * boost::multiprecision::sin(theta)};
  }
  static MpComplex sqrt(const MpComplex& z) {
    Mpfr r = z.abs();
    Mpfr a = boost::multiprecision::sqrt((r + z.re) / 2);
    Mpfr b = boost::multiprecision::sqrt((r - z.re) / 2);
    if (z.im < 0) b = -b;
    return {a, b};
  }
};

template <>
struct ScalarTraits<MpComplex> {
  static constexpr bool archimedean = true;
  static double digits() { return working_digits(); }
  static MpComplex from(const mpq_class& q) { return {mpfr_from(q), Mpfr(0)}; }
  static double log10_abs(const MpComplex& a) {
    Mpfr r = a.abs();
    if (r == 0) return -std::numeric_limits<double>::infinity();
    return boost::multiprecision::log10(r).convert_to<double>();
  }
  static bool negligible(const MpComplex& a) {
    return log10_abs(a) < -static_cast<double>(working_digits()) + 8;
  }
  static double score(const MpComplex& a) { return negligible(a) ? -std::numeric_limits<double>::infinity() : log10_abs(a); }
  static bool invertible(const MpComplex& a) { return !negligible(a); }
};

using cd = std::complex<double>;

template <>
struct ScalarTraits<cd> {
  static constexpr bool archimedean = true;
  static double digits() { return 15; }
  static cd from(const mpq_class& q) { return {q.get_d(), 0.0}; }
  static bool negligible(const cd& a) { return std::abs(a) < 1e-13; }
  static double score(const cd& a) { return negligible(a) ? -std::numeric_limits<double>::infinity() : std::log10(std::abs(a)); }
  static bool invertible(const cd& a) { return !negligible(a); }
};

// ---------------------------------------------------------------------------
// Truncated power series in one variable over S (coefficient i of eps^i).

template <class S>
class Series {
 public:
  static void set_order(std::size_t n) { order_ref() = n; }
  static std::size_t order() { return order_ref(); }

  Series() : c_(order(), S(0)) {}
  Series(long v) : c_(order(), S(0)) { c_[0] = S(v); }  // NOLINT(google-explicit-constructor)
  explicit Series(S v) : c_(order(), S(0)) { c_[0] = std::move(v); }
  static Series variable(S constant) {
    Series s(std::move(constant));
    if (s.c_.size() > 1) s.c_[1] = S(1);
    return s;
  }

  // Copy truncated or zero-padded to the current order.
  Series resized() const {
    Series r;
    for (std::size_t i = 0; i < r.c_.size() && i < c_.size(); ++i) r.c_[i] = c_[i];
    return r;
  }

  const S& operator[](std::size_t i) const { return c_[i]; }
  S& operator[](std::size_t i) { return c_[i]; }
  std::size_t size() const { return c_.size(); }

  Series operator-() const {
    Series r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  Series& operator+=(const Series& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Series& operator-=(const Series& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(const Series& a, const Series& b) {
    Series r;
    const std::size_t n = r.c_.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (ScalarTraits<S>::negligible(a.c_[i])) continue;
      for (std::size_t j = 0; i + j < n; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
  }
  Series& operator*=(const Series& o) { return *this = *this * o; }
  friend Series operator/(const Series& a, const Series& b) {
    if (!ScalarTraits<S>::invertible(b.c_[0])) throw ScalarError("series division by a non-unit");
    Series q;
    const std::size_t n = q.c_.size();
    for (std::size_t i = 0; i < n; ++i) {
      S acc = a.c_[i];
      for (std::size_t j = 1; j <= i; ++j) acc -= b.c_[j] * q.c_[i - j];
      q.c_[i] = acc / b.c_[0];
    }
    return q;
  }
  Series& operator/=(const Series& o) { return *this = *this / o; }

  // Value at eps = e (Horner).
  S eval(const S& e) const {
    S acc(0);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * e + c_[i];
    return acc;
  }

 private:
  static std::size_t& order_ref() {
    static thread_local std::size_t n = 1;
    return n;
  }
  std::vector<S> c_;
};

template <class S>
struct ScalarTraits<Series<S>> {
  static constexpr bool archimedean = false;
  static Series<S> from(const mpq_class& q) { return Series<S>(ScalarTraits<S>::from(q)); }
  static bool negligible(const Series<S>& a) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!ScalarTraits<S>::negligible(a[i])) return false;
    }
    return true;
  }
  static double score(const Series<S>& a) { return ScalarTraits<S>::score(a[0]); }
  static bool invertible(const Series<S>& a) { return ScalarTraits<S>::invertible(a[0]); }
};

// ---------------------------------------------------------------------------
// Dual numbers v + d*eps, eps^2 = 0.

template <class S>
struct Dual {
  S v, d;
  Dual() : v(0), d(0) {}
  Dual(long x) : v(x), d(0) {}  // NOLINT(google-explicit-constructor)
  Dual(S value, S deriv) : v(std::move(value)), d(std::move(deriv)) {}

  Dual operator-() const { return {-v, -d}; }
  Dual& operator+=(const Dual& o) {
    v += o.v;
    d += o.d;
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    v -= o.v;
    d -= o.d;
    return *this;
  }
  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(const Dual& a, const Dual& b) { return {a.v * b.v, a.v * b.d + a.d * b.v}; }
  Dual& operator*=(const Dual& o) { return *this = *this * o; }
};

template <class S>
struct ScalarTraits<Dual<S>> {
  static constexpr bool archimedean = false;
  static Dual<S> from(const mpq_class& q) { return {ScalarTraits<S>::from(q), S(0)}; }
  static bool negligible(const Dual<S>& a) { return ScalarTraits<S>::negligible(a.v) && ScalarTraits<S>::negligible(a.d); }
};

}  // namespace hurwitz
