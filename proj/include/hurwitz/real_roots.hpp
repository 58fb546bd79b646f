#pragma once

// Real roots of rational polynomials: Sturm sequences over Z (primitive
// pseudo-remainders with sign correction), counting and isolation by
// bisection with exact rational endpoints.

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <vector>

#include "hurwitz/upoly.hpp"

namespace hurwitz {

struct RootInterval {
  mpq_class lo, hi;  // lo == hi for an exact rational root
  double approx() const { return (lo.get_d() + hi.get_d()) / 2; }
};

namespace detail {

inline int sign_at(const ZCoeffs& f, const mpq_class& a) {
  // sign of den^n f(num/den), Horner with den powers folded in
  if (f.empty()) return 0;
  const mpz_class& num = a.get_num();
  const mpz_class& den = a.get_den();
  mpz_class acc = f.back(), dpow = 1;
  for (std::size_t i = f.size() - 1; i-- > 0;) {
    dpow *= den;
    acc = acc * num + f[i] * dpow;
  }
  return sgn(acc);
}

inline int sign_at_infinity(const ZCoeffs& f, bool positive) {
  if (f.empty()) return 0;
  int s = sgn(f.back());
  if (!positive && (f.size() - 1) % 2 == 1) s = -s;
  return s;
}

}  // namespace detail

class SturmSequence {
 public:
  explicit SturmSequence(const QPoly& f) {
    if (f.is_zero()) return;
    seq_.push_back(primitive_part(f));
    if (f.degree() == 0) return;
    seq_.push_back(primitive_part(f.derivative()));
    for (;;) {
      const ZCoeffs& a = seq_[seq_.size() - 2];
      const ZCoeffs& b = seq_.back();
      if (b.size() <= 1) break;
      std::size_t steps = 0;
      ZCoeffs r = detail::pseudo_remainder(a, b, &steps);
      if (r.empty()) break;
      // r = lc(b)^steps * rem; the next Sturm term is -rem up to a positive factor
      bool negate = !(sgn(b.back()) < 0 && steps % 2 == 1);
      mpz_class g = content(r);
      if (negate) g = -g;
      for (auto& c : r) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
      seq_.push_back(std::move(r));
    }
  }

  // Number of sign changes at a (nullopt with `positive` marks +/- infinity).
  int variations(const std::optional<mpq_class>& a, bool positive_infinity = true) const {
    int prev = 0, count = 0;
    for (const auto& p : seq_) {
      int s = a ? detail::sign_at(p, *a) : detail::sign_at_infinity(p, positive_infinity);
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++count;
      prev = s;
    }
    return count;
  }

  // Distinct real roots in (a, b]; nullopt bounds mean infinity.
  int count(const std::optional<mpq_class>& a, const std::optional<mpq_class>& b) const {
    if (seq_.empty()) return 0;
    return variations(a, false) - variations(b, true);
  }

 private:
  std::vector<ZCoeffs> seq_;
};

// Distinct real roots in (a, b] (whole line by default).
inline int sturm_count(const QPoly& f, const std::optional<mpq_class>& a = std::nullopt,
                       const std::optional<mpq_class>& b = std::nullopt) {
  return SturmSequence(f).count(a, b);
}

// Real roots counted with multiplicity.
inline int real_root_count(const QPoly& f) {
  int total = 0;
  for (const auto& [g, e] : squarefree_decomposition(f)) total += e * sturm_count(g);
  return total;
}

inline bool totally_real(const QPoly& f) { return real_root_count(f) == f.degree(); }

inline mpq_class cauchy_bound(const QPoly& f) {
  mpq_class m = 0;
  for (std::size_t i = 0; i + 1 < f.coeffs().size(); ++i) {
    mpq_class r = abs(f.coeffs()[i] / f.lc());
    if (r > m) m = r;
  }
  mpz_class b = 1;
  while (b <= m + 1) b *= 2;
  return mpq_class(b);
}

// Disjoint isolating intervals for the distinct real roots, sorted.
inline std::vector<RootInterval> real_root_isolate(const QPoly& f) {
  std::vector<RootInterval> out;
  if (f.degree() < 1) return out;
  QPoly g = squarefree_part(f);
  SturmSequence s(g);
  ZCoeffs gz = primitive_part(g);
  mpq_class b = cauchy_bound(g);
  struct Job {
    mpq_class lo, hi;
    int n;
  };
  std::vector<Job> stack{{-b, b, s.count(-b, b)}};
  while (!stack.empty()) {
    Job j = stack.back();
    stack.pop_back();
    if (j.n == 0) continue;
    if (j.n == 1) {
      if (detail::sign_at(gz, j.hi) == 0) {
        out.push_back({j.hi, j.hi});
      } else {
        out.push_back({j.lo, j.hi});
      }
      continue;
    }
    mpq_class mid = (j.lo + j.hi) / 2;
    int left = s.count(j.lo, mid);
    stack.push_back({mid, j.hi, j.n - left});
    stack.push_back({j.lo, mid, left});
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) { return a.hi < b.hi; });
  return out;
}

// Shrinks an isolating interval (lo, hi] of a root of squarefree-part g
// until hi - lo <= width.
inline RootInterval refine(const QPoly& f, RootInterval r, const mpq_class& width) {
  if (r.lo == r.hi) return r;
  ZCoeffs gz = primitive_part(squarefree_part(f));
  int shi = detail::sign_at(gz, r.hi);
  if (shi == 0) return {r.hi, r.hi};
  while (r.hi - r.lo > width) {
    mpq_class mid = (r.lo + r.hi) / 2;
    int sm = detail::sign_at(gz, mid);
    if (sm == 0) return {mid, mid};
    if (sm == shi) {
      r.hi = mid;
    } else {
      r.lo = mid;
    }
  }
  return r;
}

// Refine until hi - lo <= rel * max(1, min(|lo|, |hi|)).
inline RootInterval refine_relative(const QPoly& f, RootInterval r, const mpq_class& rel) {
  for (;;) {
    mpq_class scale = std::min<mpq_class>(abs(r.lo), abs(r.hi));
    if (scale < 1) scale = 1;
    mpq_class w = scale * rel;
    if (r.hi - r.lo <= w) return r;
    mpq_class coarse = (r.hi - r.lo) / 1024;
    r = refine(f, r, std::max(w, coarse));
  }
}

}  // namespace hurwitz
