#pragma once

// Arithmetic expressions over the rationals: integers, named variables,
// + - * / ^ (non-negative integer exponents) and parentheses. Parsed once
// into a tree and evaluated in any ring through caller-supplied leaves.

#include <gmpxx.h>

#include <cctype>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hurwitz {

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Expr {
  enum class Kind { Number, Variable, Add, Sub, Mul, Div, Pow, Neg };
  Kind kind = Kind::Number;
  mpq_class number;
  std::string name;
  unsigned long exponent = 0;
  std::shared_ptr<Expr> lhs, rhs;
};

using ExprPtr = std::shared_ptr<Expr>;

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  ExprPtr parse() {
    auto e = sum();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at offset " + std::to_string(i_) + " in '" + std::string(s_) + "'");
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  static ExprPtr node(Expr::Kind k, ExprPtr a, ExprPtr b = nullptr) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
  }
  ExprPtr sum() {
    auto e = product();
    for (;;) {
      if (eat('+')) {
        e = node(Expr::Kind::Add, e, product());
      } else if (eat('-')) {
        e = node(Expr::Kind::Sub, e, product());
      } else {
        return e;
      }
    }
  }
  ExprPtr product() {
    auto e = unary();
    for (;;) {
      if (eat('*')) {
        e = node(Expr::Kind::Mul, e, unary());
      } else if (eat('/')) {
        e = node(Expr::Kind::Div, e, unary());
      } else {
        skip();
        // implicit multiplication: "2x", "3(x+1)", ")("
        if (i_ < s_.size() && (s_[i_] == '(' || std::isalpha(static_cast<unsigned char>(s_[i_])))) {
          e = node(Expr::Kind::Mul, e, unary());
        } else {
          return e;
        }
      }
    }
  }
  ExprPtr unary() {
    if (eat('-')) return node(Expr::Kind::Neg, unary());
    if (eat('+')) return unary();
    return power();
  }
  ExprPtr power() {
    auto base = atom();
    if (eat('^')) {
      skip();
      std::size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (start == i_) fail("expected integer exponent");
      auto e = node(Expr::Kind::Pow, base);
      e->exponent = std::stoul(std::string(s_.substr(start, i_ - start)));
      return e;
    }
    return base;
  }
  ExprPtr atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of expression");
    if (eat('(')) {
      auto e = sum();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Number;
      e->number = mpq_class(mpz_class(std::string(s_.substr(start, i_ - start))));
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Variable;
      e->name = std::string(s_.substr(start, i_ - start));
      return e;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace detail

inline ExprPtr parse_expr(std::string_view text) { return detail::ExprParser(text).parse(); }

// Evaluates in ring R. `leaf_var` maps names, `leaf_num` embeds rationals,
// `divide` implements division (typically only by constants).
template <class R>
R evaluate(const Expr& e, const std::function<R(const std::string&)>& leaf_var,
           const std::function<R(const mpq_class&)>& leaf_num,
           const std::function<R(const R&, const R&)>& divide) {
  auto rec = [&](const Expr& x) { return evaluate<R>(x, leaf_var, leaf_num, divide); };
  switch (e.kind) {
    case Expr::Kind::Number:
      return leaf_num(e.number);
    case Expr::Kind::Variable:
      return leaf_var(e.name);
    case Expr::Kind::Add:
      return rec(*e.lhs) + rec(*e.rhs);
    case Expr::Kind::Sub:
      return rec(*e.lhs) - rec(*e.rhs);
    case Expr::Kind::Mul:
      return rec(*e.lhs) * rec(*e.rhs);
    case Expr::Kind::Div:
      return divide(rec(*e.lhs), rec(*e.rhs));
    case Expr::Kind::Neg:
      return leaf_num(mpq_class(0)) - rec(*e.lhs);
    case Expr::Kind::Pow: {
      R base = rec(*e.lhs);
      R out = leaf_num(mpq_class(1));
      unsigned long k = e.exponent;
      while (k) {
        if (k & 1) out = out * base;
        k >>= 1;
        if (k) base = base * base;
      }
      return out;
    }
  }
  throw ParseError("corrupt expression tree");
}

// Parses a plain rational such as "-413/4114" or a rational expression
// without variables such as "3^3*5^2*7*11/4".
inline mpq_class parse_rational(std::string_view text) {
  auto e = parse_expr(text);
  return evaluate<mpq_class>(
      *e, [](const std::string& n) -> mpq_class { throw ParseError("unexpected variable " + n); },
      [](const mpq_class& q) { return q; },
      [](const mpq_class& a, const mpq_class& b) {
        if (b == 0) throw ParseError("division by zero");
        return mpq_class(a / b);
      });
}

}  // namespace hurwitz
