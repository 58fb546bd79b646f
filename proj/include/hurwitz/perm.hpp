#pragma once

// Permutations on {0,...,n-1} acting on the right, and their cycle types.
//
// Products are read left to right: (p * q)(x) = q(p(x)). With this
// convention a branch cycle description s_1 ... s_r = 1 is evaluated in the
// order it is written.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hurwitz {

using Point = std::uint16_t;

class PermError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::size_t degree) : img_(degree) {
    std::iota(img_.begin(), img_.end(), Point{0});
  }

  // Throws PermError unless images is a bijection on {0,...,n-1}.
  explicit Permutation(std::vector<Point> images) : img_(std::move(images)) {
    std::vector<bool> seen(img_.size(), false);
    for (Point p : img_) {
      if (p >= img_.size() || seen[p]) {
        throw PermError("image list is not a bijection");
      }
      seen[p] = true;
    }
  }

  static Permutation identity(std::size_t degree) { return Permutation(degree); }

  // Builds a permutation from 1-based disjoint cycles, e.g. {{1,2},{3,4,5}}.
  static Permutation from_cycles(std::size_t degree,
                                 const std::vector<std::vector<int>>& cycles) {
    std::vector<Point> img(degree);
    std::iota(img.begin(), img.end(), Point{0});
    std::vector<bool> touched(degree, false);
    for (const auto& c : cycles) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        int a = c[i];
        int b = c[(i + 1) % c.size()];
        if (a < 1 || b < 1 || static_cast<std::size_t>(a) > degree ||
            static_cast<std::size_t>(b) > degree) {
          throw PermError("cycle point out of range: " + std::to_string(a));
        }
        if (touched[a - 1]) throw PermError("cycles are not disjoint");
        touched[a - 1] = true;
        img[a - 1] = static_cast<Point>(b - 1);
      }
    }
    return Permutation(std::move(img));
  }

  // Parses "(1,2)(3,4,5)"; "()" is the identity. Spaces are also accepted as
  // separators inside a cycle.
  static Permutation parse(std::string_view text, std::size_t degree) {
    std::vector<std::vector<int>> cycles;
    std::size_t i = 0;
    auto skip_ws = [&] {
      while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    };
    skip_ws();
    while (i < text.size()) {
      if (text[i] != '(') throw PermError("expected '(' in permutation text");
      ++i;
      std::vector<int> cyc;
      for (;;) {
        skip_ws();
        if (i >= text.size()) throw PermError("unterminated cycle");
        if (text[i] == ')') {
          ++i;
          break;
        }
        if (text[i] == ',') {
          ++i;
          continue;
        }
        if (text[i] < '0' || text[i] > '9') {
          throw PermError("unexpected character in permutation text");
        }
        int v = 0;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
          v = v * 10 + (text[i] - '0');
          ++i;
        }
        cyc.push_back(v);
      }
      if (cyc.size() > 1) cycles.push_back(std::move(cyc));
      skip_ws();
    }
    return from_cycles(degree, cycles);
  }

  std::size_t degree() const { return img_.size(); }
  Point operator()(Point x) const { return img_[x]; }
  Point operator[](std::size_t x) const { return img_[x]; }
  std::span<const Point> images() const { return img_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < img_.size(); ++i) {
      if (img_[i] != i) return false;
    }
    return true;
  }

  Permutation inverse() const {
    std::vector<Point> inv(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) inv[img_[i]] = static_cast<Point>(i);
    Permutation r;
    r.img_ = std::move(inv);
    return r;
  }

  // Left-to-right product: first *this, then q.
  Permutation operator*(const Permutation& q) const {
    if (q.degree() != degree()) throw PermError("degree mismatch in product");
    Permutation r;
    r.img_.resize(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) r.img_[i] = q.img_[img_[i]];
    return r;
  }

  Permutation& operator*=(const Permutation& q) { return *this = *this * q; }

  // q^-1 * this * q
  Permutation conjugate(const Permutation& q) const {
    if (q.degree() != degree()) throw PermError("degree mismatch in conjugation");
    Permutation r;
    r.img_.resize(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) r.img_[q.img_[i]] = q.img_[img_[i]];
    return r;
  }

  Permutation pow(long long e) const {
    Permutation base = e < 0 ? inverse() : *this;
    unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e)
                                 : static_cast<unsigned long long>(e);
    Permutation r(degree());
    while (k) {
      if (k & 1) r = r * base;
      base = base * base;
      k >>= 1;
    }
    return r;
  }

  // Cycles with 0-based points, each starting at its smallest point;
  // fixed points omitted.
  std::vector<std::vector<Point>> cycles() const {
    std::vector<std::vector<Point>> out;
    std::vector<bool> seen(img_.size(), false);
    for (std::size_t i = 0; i < img_.size(); ++i) {
      if (seen[i] || img_[i] == i) continue;
      std::vector<Point> c;
      for (Point j = static_cast<Point>(i); !seen[j]; j = img_[j]) {
        seen[j] = true;
        c.push_back(j);
      }
      out.push_back(std::move(c));
    }
    return out;
  }

  std::size_t num_cycles() const {
    std::vector<bool> seen(img_.size(), false);
    std::size_t n = 0;
    for (std::size_t i = 0; i < img_.size(); ++i) {
      if (seen[i]) continue;
      ++n;
      for (Point j = static_cast<Point>(i); !seen[j]; j = img_[j]) seen[j] = true;
    }
    return n;
  }

  // Element order (lcm of cycle lengths).
  unsigned long long order() const {
    unsigned long long o = 1;
    for (const auto& c : cycles()) o = std::lcm(o, static_cast<unsigned long long>(c.size()));
    return o;
  }

  std::string to_string() const {
    std::string s;
    for (const auto& c : cycles()) {
      s += '(';
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (k) s += ',';
        s += std::to_string(c[k] + 1);
      }
      s += ')';
    }
    return s.empty() ? "()" : s;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.img_ <=> b.img_;
  }

 private:
  std::vector<Point> img_;
};

inline std::size_t hash_images(std::span<const Point> img) {
  std::size_t h = 1469598103934665603ull;
  for (Point p : img) {
    h ^= p;
    h *= 1099511628211ull;
  }
  return h;
}

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const { return hash_images(p.images()); }
};

// n minus the number of cycles (fixed points included).
inline std::size_t index(const Permutation& p) { return p.degree() - p.num_cycles(); }

inline int parity_sign(const Permutation& p) { return index(p) % 2 == 0 ? 1 : -1; }

// Multiset of cycle lengths, stored as (length, multiplicity) pairs sorted
// by decreasing length. Text form "8^2.4^3.2.1".
class CycleType {
 public:
  CycleType() = default;

  static CycleType from_lengths(std::vector<std::size_t> lengths) {
    std::sort(lengths.begin(), lengths.end(), std::greater<>());
    CycleType ct;
    for (std::size_t len : lengths) {
      if (len == 0) throw PermError("cycle length must be positive");
      if (!ct.parts_.empty() && ct.parts_.back().first == len) {
        ++ct.parts_.back().second;
      } else {
        ct.parts_.emplace_back(len, 1);
      }
    }
    return ct;
  }

  static CycleType of(const Permutation& p) {
    std::vector<std::size_t> lens;
    std::vector<bool> seen(p.degree(), false);
    for (std::size_t i = 0; i < p.degree(); ++i) {
      if (seen[i]) continue;
      std::size_t len = 0;
      for (Point j = static_cast<Point>(i); !seen[j]; j = p(j)) {
        seen[j] = true;
        ++len;
      }
      lens.push_back(len);
    }
    return from_lengths(std::move(lens));
  }

  // Accepts "8^2.4^3.2.1" and the identity spelled "1^n".
  static CycleType parse(std::string_view text) {
    std::vector<std::size_t> lens;
    std::size_t i = 0;
    auto read_int = [&]() -> std::size_t {
      if (i >= text.size() || text[i] < '0' || text[i] > '9') {
        throw PermError("malformed cycle type: " + std::string(text));
      }
      std::size_t v = 0;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        v = v * 10 + static_cast<std::size_t>(text[i] - '0');
        ++i;
      }
      return v;
    };
    while (i < text.size()) {
      std::size_t len = read_int();
      std::size_t mult = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        mult = read_int();
      }
      if (len == 0 || mult == 0) throw PermError("malformed cycle type: " + std::string(text));
      lens.insert(lens.end(), mult, len);
      if (i < text.size()) {
        if (text[i] != '.') throw PermError("malformed cycle type: " + std::string(text));
        ++i;
        if (i == text.size()) throw PermError("malformed cycle type: " + std::string(text));
      }
    }
    if (lens.empty()) throw PermError("empty cycle type");
    return from_lengths(std::move(lens));
  }

  const std::vector<std::pair<std::size_t, std::size_t>>& parts() const { return parts_; }

  std::size_t degree() const {
    std::size_t n = 0;
    for (auto [len, mult] : parts_) n += len * mult;
    return n;
  }

  std::size_t num_cycles() const {
    std::size_t n = 0;
    for (auto [len, mult] : parts_) n += mult;
    return n;
  }

  std::size_t index() const { return degree() - num_cycles(); }

  std::size_t fixed_points() const {
    for (auto [len, mult] : parts_) {
      if (len == 1) return mult;
    }
    return 0;
  }

  unsigned long long order() const {
    unsigned long long o = 1;
    for (auto [len, mult] : parts_) o = std::lcm(o, static_cast<unsigned long long>(len));
    return o;
  }

  std::vector<std::size_t> lengths() const {
    std::vector<std::size_t> out;
    for (auto [len, mult] : parts_) out.insert(out.end(), mult, len);
    return out;
  }

  std::string to_string() const {
    std::string s;
    for (auto [len, mult] : parts_) {
      if (!s.empty()) s += '.';
      s += std::to_string(len);
      if (mult > 1) s += '^' + std::to_string(mult);
    }
    return s;
  }

  friend bool operator==(const CycleType&, const CycleType&) = default;
  friend auto operator<=>(const CycleType&, const CycleType&) = default;

 private:
  std::vector<std::pair<std::size_t, std::size_t>> parts_;
};

inline CycleType cycle_type(const Permutation& p) { return CycleType::of(p); }

}  // namespace hurwitz

template <>
struct std::hash<hurwitz::Permutation> {
  std::size_t operator()(const hurwitz::Permutation& p) const {
    return hurwitz::hash_images(p.images());
  }
};
