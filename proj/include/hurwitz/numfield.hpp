#pragma once

// Arithmetic in Q[u]/(h) for a squarefree h that is treated as if it were
// irreducible. Inverting a zero divisor throws ZeroDivisor carrying a proper
// factor of h, so callers can split h and retry on each part.

#include <gmpxx.h>

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

#include "hurwitz/upoly.hpp"

namespace hurwitz {

class ZeroDivisor : public std::runtime_error {
 public:
  explicit ZeroDivisor(QPoly factor)
      : std::runtime_error("zero divisor in number field"), factor_(std::move(factor)) {}
  const QPoly& factor() const { return factor_; }

 private:
  QPoly factor_;
};

struct NumFieldData {
  QPoly modulus;  // monic
};

class NumElem {
 public:
  NumElem() = default;
  NumElem(long v) : v_(QPoly::constant(v)) {}  // NOLINT(google-explicit-constructor)
  NumElem(const mpq_class& v) : v_(QPoly::constant(v)) {}  // NOLINT
  NumElem(std::shared_ptr<const NumFieldData> f, QPoly v) : f_(std::move(f)), v_(std::move(v)) {
    if (f_ && v_.degree() >= f_->modulus.degree()) v_ = v_ % f_->modulus;
  }

  const QPoly& value() const { return v_; }
  const std::shared_ptr<const NumFieldData>& field() const { return f_; }

  friend NumElem operator+(const NumElem& a, const NumElem& b) { return {pick(a, b), a.v_ + b.v_}; }
  friend NumElem operator-(const NumElem& a, const NumElem& b) { return {pick(a, b), a.v_ - b.v_}; }
  friend NumElem operator*(const NumElem& a, const NumElem& b) { return {pick(a, b), a.v_ * b.v_}; }
  friend NumElem operator/(const NumElem& a, const NumElem& b) { return a * b.inverse(); }
  friend bool operator==(const NumElem& a, const NumElem& b) { return (a.v_ - b.v_).is_zero(); }

  NumElem inverse() const {
    if (v_.is_zero()) throw PolyError("number field inverse of zero");
    if (!f_ || v_.degree() == 0) return {f_, QPoly::constant(1 / v_.lc())};
    // Extended Euclid: s*v + t*h = g.
    QPoly r0 = f_->modulus, r1 = v_, s0, s1 = QPoly::constant(1);
    while (!r1.is_zero()) {
      auto [q, r] = r0.divmod(r1);
      QPoly s = s0 - q * s1;
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s);
    }
    if (r0.degree() > 0) throw ZeroDivisor(r0.monic());
    return {f_, (1 / r0.lc()) * s0};
  }

 private:
  static std::shared_ptr<const NumFieldData> pick(const NumElem& a, const NumElem& b) {
    return a.f_ ? a.f_ : b.f_;
  }
  std::shared_ptr<const NumFieldData> f_;
  QPoly v_;
};

inline bool is_zero(const NumElem& a) { return a.value().is_zero(); }

class NumberField {
 public:
  explicit NumberField(const QPoly& h) : d_(std::make_shared<NumFieldData>(NumFieldData{h.monic()})) {
    if (h.degree() < 1) throw PolyError("number field modulus must be nonconstant");
  }
  const QPoly& modulus() const { return d_->modulus; }
  int degree() const { return d_->modulus.degree(); }
  NumElem generator() const { return {d_, QPoly::monomial(1, 1)}; }
  NumElem embed(const mpq_class& q) const { return {d_, QPoly::constant(q)}; }
  NumElem element(const QPoly& v) const { return {d_, v}; }

 private:
  std::shared_ptr<const NumFieldData> d_;
};

using NumPoly = UniPoly<NumElem>;

inline NumPoly embed(const NumberField& k, const QPoly& f) {
  std::vector<NumElem> c;
  c.reserve(f.coeffs().size());
  for (const auto& q : f.coeffs()) c.push_back(k.embed(q));
  return NumPoly(std::move(c));
}

}  // namespace hurwitz
