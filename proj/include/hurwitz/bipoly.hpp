#pragma once

// Polynomials f(t, x) over Q, stored as a list of x-polynomials indexed by
// the power of t. The genus-zero model p(x) - t*q(x) is the case deg_t = 1.

#include <gmpxx.h>

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "hurwitz/expr.hpp"
#include "hurwitz/numfield.hpp"
#include "hurwitz/upoly.hpp"

namespace hurwitz {

class BiPoly {
 public:
  BiPoly() = default;
  explicit BiPoly(std::vector<QPoly> rows) : rows_(std::move(rows)) { trim(); }

  // p(x) - t*q(x)
  static BiPoly model(const QPoly& p, const QPoly& q) { return BiPoly({p, -q}); }
  static BiPoly from_x(const QPoly& f) { return BiPoly({f}); }
  static BiPoly t_var() { return BiPoly({QPoly(), QPoly::constant(1)}); }
  static BiPoly x_var() { return BiPoly({QPoly::monomial(1, 1)}); }
  static BiPoly constant(const mpq_class& c) { return BiPoly({QPoly::constant(c)}); }

  int deg_t() const { return static_cast<int>(rows_.size()) - 1; }
  int deg_x() const {
    int d = -1;
    for (const auto& r : rows_) d = std::max(d, r.degree());
    return d;
  }
  bool is_zero() const { return rows_.empty(); }
  bool is_model() const { return deg_t() == 1; }
  const std::vector<QPoly>& rows() const { return rows_; }
  QPoly row(int j) const { return j >= 0 && j <= deg_t() ? rows_[static_cast<std::size_t>(j)] : QPoly(); }

  // Model parts; only meaningful when is_model().
  QPoly p() const { return row(0); }
  QPoly q() const { return -row(1); }

  mpq_class coeff(int j, int k) const { return row(j).coeff(static_cast<std::size_t>(k)); }

  // Coefficient of x^k as a polynomial in t.
  QPoly x_coeff(int k) const {
    std::vector<mpq_class> c(rows_.size());
    for (std::size_t j = 0; j < rows_.size(); ++j) c[j] = rows_[j].coeff(static_cast<std::size_t>(k));
    return QPoly(std::move(c));
  }
  QPoly lc_x() const { return x_coeff(deg_x()); }

  QPoly at(const mpq_class& t0) const {
    QPoly r;
    for (std::size_t j = rows_.size(); j-- > 0;) r = t0 * r + rows_[j];
    return r;
  }
  NumPoly at(const NumElem& t0, const NumberField& k) const {
    NumPoly r;
    for (std::size_t j = rows_.size(); j-- > 0;) r = t0 * r + embed(k, rows_[j]);
    return r;
  }

  BiPoly dx() const {
    std::vector<QPoly> r;
    for (const auto& row : rows_) r.push_back(row.derivative());
    return BiPoly(std::move(r));
  }
  BiPoly dt() const {
    std::vector<QPoly> r;
    for (std::size_t j = 1; j < rows_.size(); ++j) r.push_back(mpq_class(static_cast<long>(j)) * rows_[j]);
    return BiPoly(std::move(r));
  }

  // t^deg_t * f(1/t, x): the chart at t = infinity.
  BiPoly reversed_t() const {
    std::vector<QPoly> r(rows_.rbegin(), rows_.rend());
    return BiPoly(std::move(r));
  }
  // x^deg_x * f(t, 1/x): the chart at x = infinity.
  BiPoly reversed_x() const {
    int n = deg_x();
    std::vector<QPoly> r;
    for (const auto& row : rows_) r.push_back(row.is_zero() ? QPoly() : row.reversed(n));
    return BiPoly(std::move(r));
  }

  friend BiPoly operator+(const BiPoly& a, const BiPoly& b) {
    std::vector<QPoly> r(std::max(a.rows_.size(), b.rows_.size()));
    for (std::size_t j = 0; j < r.size(); ++j) r[j] = a.row(static_cast<int>(j)) + b.row(static_cast<int>(j));
    return BiPoly(std::move(r));
  }
  friend BiPoly operator-(const BiPoly& a, const BiPoly& b) {
    std::vector<QPoly> r(std::max(a.rows_.size(), b.rows_.size()));
    for (std::size_t j = 0; j < r.size(); ++j) r[j] = a.row(static_cast<int>(j)) - b.row(static_cast<int>(j));
    return BiPoly(std::move(r));
  }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<QPoly> r(a.rows_.size() + b.rows_.size() - 1);
    for (std::size_t i = 0; i < a.rows_.size(); ++i) {
      for (std::size_t j = 0; j < b.rows_.size(); ++j) r[i + j] += a.rows_[i] * b.rows_[j];
    }
    return BiPoly(std::move(r));
  }
  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.rows_ == b.rows_; }

  // Constant polynomial value, or throws.
  mpq_class as_constant() const {
    if (is_zero()) return 0;
    if (deg_t() != 0 || rows_[0].degree() != 0) throw ParseError("expected a constant");
    return rows_[0].lc();
  }

 private:
  void trim() {
    while (!rows_.empty() && rows_.back().is_zero()) rows_.pop_back();
  }
  std::vector<QPoly> rows_;
};

// Parses f(t, x); `tvar` and `xvar` name the two variables (e.g. "s", "y"),
// other symbols resolve through `params`.
inline BiPoly parse_bipoly(std::string_view text, const std::string& tvar = "t",
                           const std::string& xvar = "x",
                           const std::vector<std::pair<std::string, mpq_class>>& params = {}) {
  auto e = parse_expr(text);
  return evaluate<BiPoly>(
      *e,
      [&](const std::string& n) -> BiPoly {
        if (n == tvar) return BiPoly::t_var();
        if (n == xvar) return BiPoly::x_var();
        for (const auto& [k, v] : params) {
          if (k == n) return BiPoly::constant(v);
        }
        throw ParseError("unknown symbol " + n);
      },
      [](const mpq_class& q) { return BiPoly::constant(q); },
      [](const BiPoly& a, const BiPoly& b) -> BiPoly {
        mpq_class c = b.as_constant();
        if (c == 0) throw ParseError("division by zero");
        return a * BiPoly::constant(1 / c);
      });
}

}  // namespace hurwitz
