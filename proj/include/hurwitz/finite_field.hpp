#pragma once

// Small finite fields GF(p^k) with elements encoded as integers 0..q-1 in a
// polynomial basis (digit i of the base-p expansion is the coefficient of
// X^i). All operations go through precomputed tables.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hurwitz {

class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class FiniteField {
 public:
  using Elem = int;

  // Supported orders: primes below 64 and 4, 8, 9.
  static FiniteField make(int q) {
    if (q >= 2 && q < 64 && is_prime(q)) return FiniteField(q, 1, {});
    if (q == 4) return FiniteField(2, 2, {1, 1});     // X^2 + X + 1
    if (q == 8) return FiniteField(2, 3, {1, 1, 0});  // X^3 + X + 1
    if (q == 9) return FiniteField(3, 2, {2, 2});     // X^2 + 2X + 2
    throw FieldError("unsupported field order " + std::to_string(q));
  }

  int characteristic() const { return p_; }
  int extension_degree() const { return k_; }
  int order() const { return q_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem add(Elem a, Elem b) const { return add_[idx(a, b)]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem mul(Elem a, Elem b) const { return mul_[idx(a, b)]; }
  Elem inv(Elem a) const {
    if (a == 0) throw FieldError("inverse of zero");
    return inv_[a];
  }
  Elem frobenius(Elem a) const {
    Elem r = 1;
    for (int i = 0; i < p_; ++i) r = mul(r, a);
    return r;
  }
  Elem pow(Elem a, long long e) const {
    if (e < 0) return pow(inv(a), -e);
    Elem r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  Elem primitive_element() const { return primitive_; }

 private:
  // `modulus` holds the low coefficients of the monic defining polynomial.
  FiniteField(int p, int k, std::vector<int> modulus) : p_(p), k_(k), q_(1) {
    for (int i = 0; i < k; ++i) q_ *= p;
    add_.resize(static_cast<std::size_t>(q_ * q_));
    mul_.resize(static_cast<std::size_t>(q_ * q_));
    neg_.resize(static_cast<std::size_t>(q_));
    inv_.assign(static_cast<std::size_t>(q_), 0);
    auto digits = [&](int a) {
      std::vector<int> d(static_cast<std::size_t>(k_));
      for (int i = 0; i < k_; ++i) {
        d[static_cast<std::size_t>(i)] = a % p_;
        a /= p_;
      }
      return d;
    };
    auto encode = [&](const std::vector<int>& d) {
      int a = 0;
      for (int i = k_ - 1; i >= 0; --i) a = a * p_ + d[static_cast<std::size_t>(i)];
      return a;
    };
    for (int a = 0; a < q_; ++a) {
      auto da = digits(a);
      std::vector<int> dn(da.size());
      for (std::size_t i = 0; i < da.size(); ++i) dn[i] = (p_ - da[i]) % p_;
      neg_[static_cast<std::size_t>(a)] = encode(dn);
      for (int b = 0; b < q_; ++b) {
        auto db = digits(b);
        std::vector<int> s(da.size());
        for (std::size_t i = 0; i < da.size(); ++i) s[i] = (da[i] + db[i]) % p_;
        add_[idx(a, b)] = encode(s);
        std::vector<int> prod(static_cast<std::size_t>(2 * k_ - 1), 0);
        for (int i = 0; i < k_; ++i) {
          for (int j = 0; j < k_; ++j) {
            auto& c = prod[static_cast<std::size_t>(i + j)];
            c = (c + da[static_cast<std::size_t>(i)] * db[static_cast<std::size_t>(j)]) % p_;
          }
        }
        for (int d = 2 * k_ - 2; d >= k_; --d) {
          int c = prod[static_cast<std::size_t>(d)];
          if (c == 0) continue;
          prod[static_cast<std::size_t>(d)] = 0;
          for (int i = 0; i < k_; ++i) {
            auto& t = prod[static_cast<std::size_t>(d - k_ + i)];
            t = ((t - c * modulus[static_cast<std::size_t>(i)]) % p_ + p_) % p_;
          }
        }
        prod.resize(static_cast<std::size_t>(k_));
        mul_[idx(a, b)] = encode(prod);
      }
    }
    for (int a = 1; a < q_; ++a) {
      for (int b = 1; b < q_; ++b) {
        if (mul(a, b) == 1) inv_[static_cast<std::size_t>(a)] = b;
      }
    }
    for (int a = 1; a < q_; ++a) {
      int ord = 1;
      for (Elem x = a; x != 1; x = mul(x, a)) ++ord;
      if (ord == q_ - 1) {
        primitive_ = a;
        break;
      }
    }
  }

  static bool is_prime(int n) {
    for (int d = 2; d * d <= n; ++d) {
      if (n % d == 0) return false;
    }
    return n >= 2;
  }

  std::size_t idx(Elem a, Elem b) const { return static_cast<std::size_t>(a * q_ + b); }

  int p_, k_, q_;
  Elem primitive_ = 1;
  std::vector<Elem> add_, mul_, neg_, inv_;
};

}  // namespace hurwitz
