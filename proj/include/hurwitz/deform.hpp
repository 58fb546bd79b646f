#pragma once

// Continuation of genus-zero families p(x) - t q(x) with one moving pair of
// branch points, the roots of t^2 + a t + lambda.
//
// A FamilyShape fixes the factor structure of p and q (which encodes the
// fibers over t = 0 and t = infinity), the multiplicity pattern over every
// other branch point, and normalization pins. The unknowns are the free
// coefficients of the monic factors of p and q, the monic factors of
// p - t q over each moving branch point and optionally a. Over the moving
// pair everything lives in the ring S[u]/(u^2 + a u + lambda), so both
// conjugate points are matched at once and the system stays defined over
// the base field.

#include <gmpxx.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hurwitz/bipoly.hpp"
#include "hurwitz/catalog.hpp"
#include "hurwitz/numfield.hpp"
#include "hurwitz/perm.hpp"
#include "hurwitz/scalars.hpp"
#include "json.hpp"

namespace hurwitz {

class DeformError : public std::runtime_error {
 public:
  enum class Kind { Shape, Seed, Singular, Divergence, StepUnderflow, Nullspace, Reconstruction, Precondition };
  DeformError(Kind k, const std::string& what) : std::runtime_error(what), kind_(k) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct FactorSpec {
  std::string name;
  int degree = 0;
  std::map<int, mpq_class> pins;  // coefficient index -> value
};

// One factor of p or q: a named unknown factor or a fixed polynomial.
struct ShapeTerm {
  std::string factor;
  QPoly fixed;
  int power = 1;
};

struct ShapeSlot {
  enum class Kind { Zero, Infinity, Rational, Quadratic };
  Kind kind = Kind::Rational;
  mpq_class t;                   // Rational
  std::optional<mpq_class> a;    // Quadratic: fixed linear coefficient, or unknown
  CycleType pattern;

  // (multiplicity, number of points) sorted by decreasing multiplicity.
  std::vector<std::pair<int, int>> groups() const {
    std::vector<std::pair<int, int>> g;
    for (auto [len, mult] : pattern.parts()) g.emplace_back(static_cast<int>(len), static_cast<int>(mult));
    return g;
  }
};

struct FamilyShape {
  std::string name;
  int degree = 0;
  std::vector<FactorSpec> factors;
  std::vector<ShapeTerm> p, q;
  std::vector<ShapeSlot> slots;
  std::pair<std::string, int> observe_x{"", -1}, observe_y{"", -1};
  nlohmann::json raw;

  // Expected relation between the two observed coefficients, if recorded.
  std::optional<BiPoly> relation() const {
    if (!raw.contains("relation")) return std::nullopt;
    return parse_bipoly(raw["relation"].at("poly").get<std::string>(), "y", "x");
  }

  static FamilyShape from_json(const nlohmann::json& j) {
    FamilyShape s;
    s.raw = j;
    s.name = j.value("name", "");
    s.degree = j.at("degree").get<int>();
    for (const auto& f : j.at("factors")) {
      FactorSpec fs;
      fs.name = f.at("name").get<std::string>();
      fs.degree = f.at("degree").get<int>();
      if (f.contains("pins")) {
        for (const auto& [k, v] : f["pins"].items()) fs.pins[std::stoi(k)] = parse_rational(v.get<std::string>());
      }
      s.factors.push_back(std::move(fs));
    }
    auto terms = [](const nlohmann::json& arr) {
      std::vector<ShapeTerm> out;
      for (const auto& t : arr) {
        ShapeTerm st;
        if (t.contains("factor")) {
          st.factor = t["factor"].get<std::string>();
        } else {
          st.fixed = parse_qpoly(t.at("poly").get<std::string>());
        }
        st.power = t.value("power", 1);
        out.push_back(std::move(st));
      }
      return out;
    };
    s.p = terms(j.at("p"));
    s.q = terms(j.at("q"));
    for (const auto& sl : j.at("slots")) {
      ShapeSlot slot;
      std::string at = sl.at("at").get<std::string>();
      slot.pattern = CycleType::parse(sl.at("pattern").get<std::string>());
      if (at == "0") {
        slot.kind = ShapeSlot::Kind::Zero;
      } else if (at == "inf") {
        slot.kind = ShapeSlot::Kind::Infinity;
      } else if (at == "quadratic") {
        slot.kind = ShapeSlot::Kind::Quadratic;
        std::string a = sl.value("a", "free");
        if (a != "free") slot.a = parse_rational(a);
      } else {
        slot.kind = ShapeSlot::Kind::Rational;
        slot.t = parse_rational(at);
      }
      s.slots.push_back(std::move(slot));
    }
    if (j.contains("observe")) {
      const auto& o = j["observe"];
      s.observe_x = {o.at(0).at(0).get<std::string>(), o.at(0).at(1).get<int>()};
      s.observe_y = {o.at(1).at(0).get<std::string>(), o.at(1).at(1).get<int>()};
    }
    return s;
  }

  static FamilyShape load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DeformError(DeformError::Kind::Shape, "cannot open shape file " + path.string());
    return from_json(nlohmann::json::parse(in));
  }
};

// Coefficient vectors indexed by power of x, not trimmed.
template <class T>
using TPoly = std::vector<T>;

template <class T>
TPoly<T> tmul(const TPoly<T>& a, const TPoly<T>& b) {
  if (a.empty() || b.empty()) return {};
  TPoly<T> r(a.size() + b.size() - 1, T(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

template <class T>
TPoly<T> tsub(TPoly<T> a, const TPoly<T>& b) {
  if (a.size() < b.size()) a.resize(b.size(), T(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  return a;
}

template <class T>
TPoly<T> tadd(TPoly<T> a, const TPoly<T>& b) {
  if (a.size() < b.size()) a.resize(b.size(), T(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

template <class T>
TPoly<T> tscale(TPoly<T> a, const T& c) {
  for (auto& v : a) v = v * c;
  return a;
}

template <class T>
TPoly<T> tpow(const TPoly<T>& a, int e) {
  TPoly<T> r{T(1)};
  for (int i = 0; i < e; ++i) r = tmul(r, a);
  return r;
}

template <class T>
T lift(const mpq_class& q) {
  return ScalarTraits<T>::from(q);
}

// Element A0 + u A1 of T[x][u]/(u^2 + a u + lambda).
template <class T>
struct QuadPoly {
  TPoly<T> c0, c1;
};

template <class T>
QuadPoly<T> qmul(const QuadPoly<T>& A, const QuadPoly<T>& B, const T& a, const T& lambda) {
  TPoly<T> hh = tmul(A.c1, B.c1);
  QuadPoly<T> r;
  r.c0 = tsub(tmul(A.c0, B.c0), tscale(hh, lambda));
  r.c1 = tsub(tadd(tmul(A.c0, B.c1), tmul(A.c1, B.c0)), tscale(hh, a));
  return r;
}

class DeformSystem {
 public:
  explicit DeformSystem(FamilyShape shape) : shape_(std::move(shape)) { layout(); }

  const FamilyShape& shape() const { return shape_; }
  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  bool has_quadratic() const { return quad_ >= 0; }
  std::size_t slot_offset(std::size_t slot) const { return slot_offset_.at(slot); }
  const ShapeSlot& quadratic_slot() const {
    if (quad_ < 0) throw DeformError(DeformError::Kind::Shape, "shape has no quadratic slot");
    return shape_.slots[static_cast<std::size_t>(quad_)];
  }

  // Unknown index of coefficient `index` of factor `name`.
  std::size_t unknown_of(const std::string& name, int index) const {
    auto it = factor_index_.find(name + "[" + std::to_string(index) + "]");
    if (it == factor_index_.end()) {
      throw DeformError(DeformError::Kind::Shape, "no unknown for " + name + "[" + std::to_string(index) + "]");
    }
    return it->second;
  }
  std::size_t observe_x() const { return unknown_of(shape_.observe_x.first, shape_.observe_x.second); }
  std::size_t observe_y() const { return unknown_of(shape_.observe_y.first, shape_.observe_y.second); }

  // Linear coefficient a of the moving pair at x.
  template <class T>
  T quadratic_a(const std::vector<T>& x) const {
    const auto& s = quadratic_slot();
    return s.a ? lift<T>(*s.a) : x[a_index_];
  }

  // Monic factor `name` with unknowns from x and pins filled in.
  template <class T>
  TPoly<T> factor_poly(const std::vector<T>& x, const std::string& name) const {
    for (const auto& f : shape_.factors) {
      if (f.name != name) continue;
      TPoly<T> c(static_cast<std::size_t>(f.degree) + 1, T(0));
      c.back() = T(1);
      for (int i = 0; i < f.degree; ++i) {
        auto pin = f.pins.find(i);
        c[static_cast<std::size_t>(i)] = pin != f.pins.end() ? lift<T>(pin->second) : x[unknown_of(name, i)];
      }
      return c;
    }
    throw DeformError(DeformError::Kind::Shape, "unknown factor " + name);
  }

  template <class T>
  TPoly<T> product(const std::vector<T>& x, const std::vector<ShapeTerm>& terms) const {
    TPoly<T> r{T(1)};
    for (const auto& t : terms) {
      TPoly<T> base;
      if (t.factor.empty()) {
        for (const auto& c : t.fixed.coeffs()) base.push_back(lift<T>(c));
      } else {
        base = factor_poly(x, t.factor);
      }
      r = tmul(r, tpow(base, t.power));
    }
    r.resize(static_cast<std::size_t>(shape_.degree) + 1, T(0));
    return r;
  }

  // Coefficient matchings of p - t_b q = c_b prod F^m over every slot with
  // unknown factors, x^0 ... x^(n-1).
  template <class T>
  std::vector<T> residual(const std::vector<T>& x, const T& lambda) const {
    if (x.size() != size()) throw DeformError(DeformError::Kind::Shape, "coefficient vector has the wrong length");
    const std::size_t n = static_cast<std::size_t>(shape_.degree);
    TPoly<T> P = product(x, shape_.p), Q = product(x, shape_.q);
    std::vector<T> out;
    out.reserve(size());
    for (std::size_t si = 0; si < shape_.slots.size(); ++si) {
      const auto& s = shape_.slots[si];
      if (s.kind == ShapeSlot::Kind::Rational) {
        TPoly<T> F = tsub(P, tscale(Q, lift<T>(s.t)));
        TPoly<T> prod{F[n]};
        std::size_t k = slot_offset_[si];
        for (auto [m, d] : s.groups()) {
          TPoly<T> h(static_cast<std::size_t>(d) + 1, T(1));
          for (int i = 0; i < d; ++i) h[static_cast<std::size_t>(i)] = x[k++];
          prod = tmul(prod, tpow(h, m));
        }
        for (std::size_t i = 0; i < n; ++i) out.push_back(F[i] - prod[i]);
      } else if (s.kind == ShapeSlot::Kind::Quadratic) {
        T a = quadratic_a(x);
        QuadPoly<T> F{P, tscale(Q, T(-1))};
        QuadPoly<T> prod{{F.c0[n]}, {F.c1[n]}};
        std::size_t k = slot_offset_[si];
        for (auto [m, d] : s.groups()) {
          QuadPoly<T> h{TPoly<T>(static_cast<std::size_t>(d) + 1, T(0)), TPoly<T>(static_cast<std::size_t>(d) + 1, T(0))};
          h.c0[static_cast<std::size_t>(d)] = T(1);
          for (int i = 0; i < d; ++i) {
            h.c0[static_cast<std::size_t>(i)] = x[k++];
            h.c1[static_cast<std::size_t>(i)] = x[k++];
          }
          QuadPoly<T> hp{{T(1)}, {T(0)}};
          for (int e = 0; e < m; ++e) hp = qmul(hp, h, a, lambda);
          prod = qmul(prod, hp, a, lambda);
        }
        prod.c0.resize(n + 1, T(0));
        prod.c1.resize(n + 1, T(0));
        for (std::size_t i = 0; i < n; ++i) {
          out.push_back(F.c0[i] - prod.c0[i]);
          out.push_back(F.c1[i] - prod.c1[i]);
        }
      }
    }
    return out;
  }

  // Exact partials by forward-mode differentiation, one unknown at a time.
  template <class S>
  std::vector<std::vector<S>> jacobian(const std::vector<S>& x, const S& lambda) const {
    const std::size_t N = size();
    std::vector<std::vector<S>> J(N, std::vector<S>(N, S(0)));
    std::vector<Dual<S>> xd(N);
    for (std::size_t i = 0; i < N; ++i) xd[i] = Dual<S>(x[i], S(0));
    Dual<S> ld(lambda, S(0));
    for (std::size_t j = 0; j < N; ++j) {
      xd[j].d = S(1);
      auto r = residual(xd, ld);
      xd[j].d = S(0);
      for (std::size_t i = 0; i < N; ++i) J[i][j] = r[i].d;
    }
    return J;
  }

  template <class S>
  std::vector<S> dlambda(const std::vector<S>& x, const S& lambda) const {
    std::vector<Dual<S>> xd;
    xd.reserve(x.size());
    for (const auto& v : x) xd.emplace_back(v, S(0));
    auto r = residual(xd, Dual<S>(lambda, S(1)));
    std::vector<S> out;
    out.reserve(r.size());
    for (auto& v : r) out.push_back(v.d);
    return out;
  }

 private:
  void fail(const std::string& m) const { throw DeformError(DeformError::Kind::Shape, m); }

  int term_degree(const ShapeTerm& t) const {
    if (t.factor.empty()) return t.fixed.degree();
    for (const auto& f : shape_.factors) {
      if (f.name == t.factor) return f.degree;
    }
    fail("term references unknown factor " + t.factor);
    return 0;
  }

  std::vector<std::size_t> term_pattern(const std::vector<ShapeTerm>& terms) const {
    std::vector<std::size_t> lens;
    for (const auto& t : terms) lens.insert(lens.end(), static_cast<std::size_t>(term_degree(t)), static_cast<std::size_t>(t.power));
    return lens;
  }

  void layout() {
    const int n = shape_.degree;
    if (n < 1) fail("degree must be positive");
    for (const auto& f : shape_.factors) {
      if (f.degree < 1) fail("factor " + f.name + " must have positive degree");
      for (int i = 0; i < f.degree; ++i) {
        if (f.pins.count(i)) continue;
        factor_index_[f.name + "[" + std::to_string(i) + "]"] = labels_.size();
        labels_.push_back(f.name + "[" + std::to_string(i) + "]");
      }
      for (const auto& [i, v] : f.pins) {
        if (i < 0 || i >= f.degree) fail("pin index out of range in " + f.name);
      }
    }
    int dp = 0, dq = 0;
    for (const auto& t : shape_.p) dp += term_degree(t) * t.power;
    for (const auto& t : shape_.q) dq += term_degree(t) * t.power;
    if (dp != n || dq > n) fail("p must have degree n and q degree at most n");
    for (const auto& t : shape_.p) {
      if (t.factor.empty() && t.fixed.lc() != 1) fail("fixed factors must be monic");
    }
    for (const auto& t : shape_.q) {
      if (t.factor.empty() && t.fixed.lc() != 1) fail("fixed factors must be monic");
    }
    std::size_t equations = 0;
    slot_offset_.assign(shape_.slots.size(), 0);
    for (std::size_t si = 0; si < shape_.slots.size(); ++si) {
      const auto& s = shape_.slots[si];
      if (s.pattern.degree() != static_cast<std::size_t>(n)) fail("slot pattern does not have degree n");
      if (s.kind == ShapeSlot::Kind::Zero) {
        if (CycleType::from_lengths(term_pattern(shape_.p)) != s.pattern) fail("p does not realize the pattern over 0");
        continue;
      }
      if (s.kind == ShapeSlot::Kind::Infinity) {
        auto lens = term_pattern(shape_.q);
        if (dq < n) lens.push_back(static_cast<std::size_t>(n - dq));
        if (CycleType::from_lengths(lens) != s.pattern) fail("q does not realize the pattern over infinity");
        continue;
      }
      const bool quad = s.kind == ShapeSlot::Kind::Quadratic;
      if (quad) {
        if (quad_ >= 0) fail("at most one quadratic slot is supported");
        quad_ = static_cast<int>(si);
      }
      slot_offset_[si] = labels_.size();
      const std::string tag = quad ? "@pair" : "@" + s.t.get_str();
      for (auto [m, d] : s.groups()) {
        for (int i = 0; i < d; ++i) {
          const std::string base = "F" + std::to_string(m) + tag + "[" + std::to_string(i) + "]";
          if (quad) {
            labels_.push_back(base + ".0");
            labels_.push_back(base + ".1");
          } else {
            labels_.push_back(base);
          }
        }
      }
      equations += static_cast<std::size_t>(n) * (quad ? 2 : 1);
    }
    if (quad_ >= 0 && !shape_.slots[static_cast<std::size_t>(quad_)].a) {
      a_index_ = labels_.size();
      labels_.push_back("a");
    }
    if (equations != labels_.size()) {
      fail("non-square system: " + std::to_string(labels_.size()) + " unknowns, " + std::to_string(equations) +
           " equations");
    }
  }

  FamilyShape shape_;
  std::vector<std::string> labels_;
  std::map<std::string, std::size_t> factor_index_;
  std::vector<std::size_t> slot_offset_;
  std::size_t a_index_ = 0;
  int quad_ = -1;
};

inline std::filesystem::path shapes_dir() { return std::filesystem::path(data_dir()) / "shapes"; }

// Bundled shape by key (data/shapes/<key>.json) or by path.
inline FamilyShape load_shape(const std::string& key_or_path) {
  std::filesystem::path p(key_or_path);
  if (!std::filesystem::exists(p)) p = shapes_dir() / (key_or_path + ".json");
  return FamilyShape::load(p);
}

inline nlohmann::json load_json_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw DeformError(DeformError::Kind::Shape, "cannot open " + p.string());
  return nlohmann::json::parse(in);
}

// Exact solution recovered from a published cover.
struct Seed {
  std::vector<mpq_class> x;
  mpq_class lambda;
};

// seed JSON: {"factors": {"f1": "x^2+x-...", ...}, "a": "...", "lambda": "..."}.
// The factors of p - t q over the moving slots are recovered by squarefree
// decomposition, over Q(u) for the quadratic pair, and the result is
// checked to solve the system exactly.
inline Seed seed_from_cover(const DeformSystem& sys, const nlohmann::json& j) {
  const auto& shape = sys.shape();
  auto fail = [](const std::string& m) { throw DeformError(DeformError::Kind::Seed, m); };
  Seed seed;
  seed.x.assign(sys.size(), mpq_class(0));
  for (const auto& f : shape.factors) {
    if (!j.at("factors").contains(f.name)) fail("seed lacks factor " + f.name);
    QPoly g = parse_qpoly(j["factors"][f.name].get<std::string>());
    if (g.degree() != f.degree || g.lc() != 1) fail("seed factor " + f.name + " is not monic of the shape degree");
    for (int i = 0; i < f.degree; ++i) {
      auto pin = f.pins.find(i);
      if (pin != f.pins.end()) {
        if (g.coeff(static_cast<std::size_t>(i)) != pin->second) fail("seed factor " + f.name + " violates a pin");
      } else {
        seed.x[sys.unknown_of(f.name, i)] = g.coeff(static_cast<std::size_t>(i));
      }
    }
  }
  auto P = sys.product(seed.x, shape.p), Q = sys.product(seed.x, shape.q);
  QPoly p(P), q(Q);
  for (std::size_t si = 0; si < shape.slots.size(); ++si) {
    const auto& s = shape.slots[si];
    if (s.kind == ShapeSlot::Kind::Zero || s.kind == ShapeSlot::Kind::Infinity) continue;
    std::size_t k = sys.slot_offset(si);
    if (s.kind == ShapeSlot::Kind::Rational) {
      auto dec = squarefree_decomposition(p - s.t * q);
      for (auto [m, d] : s.groups()) {
        auto it = std::find_if(dec.begin(), dec.end(), [&](const auto& g) { return g.second == m; });
        if (it == dec.end() || it->first.degree() != d) fail("seed does not realize the pattern over " + s.t.get_str());
        for (int i = 0; i < d; ++i) seed.x[k++] = it->first.coeff(static_cast<std::size_t>(i));
      }
      continue;
    }
    mpq_class a = s.a ? *s.a : parse_rational(j.at("a").get<std::string>());
    if (s.a && j.contains("a") && parse_rational(j["a"].get<std::string>()) != a) fail("seed a differs from the shape");
    seed.lambda = parse_rational(j.at("lambda").get<std::string>());
    NumberField K(QPoly({seed.lambda, a, mpq_class(1)}));
    NumPoly F = embed(K, p) - NumPoly::constant(K.generator()) * embed(K, q);
    std::vector<std::pair<NumPoly, int>> dec;
    try {
      dec = squarefree_decomposition(F);
    } catch (const ZeroDivisor&) {
      fail("t^2 + a t + lambda is reducible at the seed");
    }
    for (auto [m, d] : s.groups()) {
      auto it = std::find_if(dec.begin(), dec.end(), [&](const auto& g) { return g.second == m; });
      if (it == dec.end() || it->first.degree() != d) fail("seed does not realize the pattern over the moving pair");
      for (int i = 0; i < d; ++i) {
        QPoly v = it->first.coeff(static_cast<std::size_t>(i)).value();
        seed.x[k++] = v.coeff(0);
        seed.x[k++] = v.coeff(1);
      }
    }
    if (!s.a) seed.x[sys.size() - 1] = a;
  }
  for (const auto& r : sys.residual(seed.x, seed.lambda)) {
    if (r != 0) fail("seed does not solve the shape system");
  }
  return seed;
}

template <class S>
std::vector<S> lift_vector(const std::vector<mpq_class>& v) {
  std::vector<S> out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(lift<S>(q));
  return out;
}

// ---------------------------------------------------------------------------
// Linear algebra and Newton

template <class S>
double max_score(const std::vector<S>& v) {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& s : v) m = std::max(m, ScalarTraits<S>::score(s));
  return m;
}

template <class S>
bool all_negligible(const std::vector<S>& v) {
  return std::all_of(v.begin(), v.end(), [](const S& s) { return ScalarTraits<S>::negligible(s); });
}

// Gaussian elimination with pivoting by ScalarTraits::score.
template <class S>
std::vector<S> solve_linear(std::vector<std::vector<S>> A, std::vector<S> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    double best = ScalarTraits<S>::score(A[c][c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      double sc = ScalarTraits<S>::score(A[r][c]);
      if (sc > best) {
        best = sc;
        piv = r;
      }
    }
    if (!ScalarTraits<S>::invertible(A[piv][c])) {
      throw DeformError(DeformError::Kind::Singular, "singular Jacobian (degenerate configuration)");
    }
    std::swap(A[piv], A[c]);
    std::swap(b[piv], b[c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (ScalarTraits<S>::negligible(A[r][c])) continue;
      S f = A[r][c] / A[c][c];
      for (std::size_t k = c; k < n; ++k) A[r][k] -= f * A[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<S> x(n, S(0));
  for (std::size_t i = n; i-- > 0;) {
    S acc = b[i];
    for (std::size_t k = i + 1; k < n; ++k) acc -= A[i][k] * x[k];
    x[i] = acc / A[i][i];
  }
  return x;
}

struct NewtonOptions {
  int max_iterations = 60;
  int max_halvings = 20;
};

// Damped Newton in archimedean modes (a step is halved while the residual
// grows); plain Newton in p-adic and series modes, where each step doubles
// the precision. Throws Singular or Divergence.
template <class S>
std::vector<S> newton_solve(const DeformSystem& sys, std::vector<S> x, const S& lambda, NewtonOptions opt = {},
                            int* iterations = nullptr) {
  using Tr = ScalarTraits<S>;
  auto r = sys.residual(x, lambda);
  for (int it = 0; it < opt.max_iterations; ++it) {
    if (iterations) *iterations = it;
    if (all_negligible(r)) return x;
    std::vector<S> minus_r;
    minus_r.reserve(r.size());
    for (const auto& v : r) minus_r.push_back(-v);
    auto dx = solve_linear(sys.jacobian(x, lambda), minus_r);
    if constexpr (Tr::archimedean) {
      double before = max_score(r);
      double scale = std::max(0.0, max_score(x));
      bool tiny = max_score(dx) < scale - Tr::digits() / 2;
      S factor(1);
      for (int h = 0;; ++h) {
        std::vector<S> xn = x;
        for (std::size_t i = 0; i < x.size(); ++i) xn[i] += factor * dx[i];
        auto rn = sys.residual(xn, lambda);
        if (max_score(rn) <= before || all_negligible(rn) || tiny) {
          x = std::move(xn);
          r = std::move(rn);
          break;
        }
        if (h == opt.max_halvings) throw DeformError(DeformError::Kind::Divergence, "Newton diverged (no descent after damping)");
        factor = factor * lift<S>(mpq_class(1, 2));
      }
      if (tiny) {
        if (iterations) *iterations = it + 1;
        return x;
      }
    } else {
      for (std::size_t i = 0; i < x.size(); ++i) x[i] += dx[i];
      r = sys.residual(x, lambda);
    }
  }
  if (all_negligible(r)) return x;
  throw DeformError(DeformError::Kind::Divergence, "Newton did not converge");
}

struct ContinuationOptions {
  int max_depth = 40;              // step halvings before underflow
  int corrector_iterations = 10;
};

// Predictor-corrector along `path`, one solved cover per entry. Each
// segment is split into 2^depth equal steps; the predictor follows the
// tangent dx/dlambda = -J^{-1} dR/dlambda, a failed corrector increments
// depth for the rest of the segment, and a clean segment decrements it.
template <class S>
std::vector<std::vector<S>> continue_lambda(const DeformSystem& sys, std::vector<S> x, S lambda,
                                            const std::vector<S>& path, ContinuationOptions opt = {}) {
  std::vector<std::vector<S>> out;
  out.reserve(path.size());
  NewtonOptions nopt{opt.corrector_iterations, 4};
  int depth = 0;
  auto step = [&](const S& next) {
    S h = next - lambda;
    std::vector<S> pred = x;
    if (!ScalarTraits<S>::negligible(h)) {
      auto dr = sys.dlambda(x, lambda);
      for (auto& v : dr) v = -v;
      auto tangent = solve_linear(sys.jacobian(x, lambda), dr);
      for (std::size_t i = 0; i < x.size(); ++i) pred[i] += tangent[i] * h;
    }
    x = newton_solve(sys, std::move(pred), next, nopt);
    lambda = next;
  };
  for (const auto& target : path) {
    bool clean = true;
    for (bool done = false; !done;) {
      const mpz_class pieces = mpz_class(1) << static_cast<mp_bitcnt_t>(depth);
      const S h = (target - lambda) * lift<S>(mpq_class(mpz_class(1), pieces));
      S base = lambda;
      done = true;
      for (mpz_class i = 1; i <= pieces; ++i) {
        try {
          step(i == pieces ? target : base + h * lift<S>(mpq_class(i)));
        } catch (const DeformError& e) {
          if (e.kind() != DeformError::Kind::Singular && e.kind() != DeformError::Kind::Divergence) throw;
          if (++depth > opt.max_depth) {
            throw DeformError(DeformError::Kind::StepUnderflow, "continuation step underflow near a degenerate lambda");
          }
          clean = false;
          done = false;
          break;
        }
      }
    }
    if (clean && depth > 0) --depth;
    out.push_back(x);
  }
  return out;
}

inline cd to_cd(const MpComplex& z) { return z.to_cd(); }
inline MpComplex to_mp(const cd& z) { return {Mpfr(z.real()), Mpfr(z.imag())}; }

// continue_lambda in double precision, each output then polished by Newton
// at the working MPFR precision at the exact path point.
inline std::vector<std::vector<MpComplex>> continue_lambda_polished(const DeformSystem& sys,
                                                                    const std::vector<MpComplex>& x,
                                                                    const MpComplex& lambda,
                                                                    const std::vector<MpComplex>& path,
                                                                    ContinuationOptions opt = {}) {
  std::vector<cd> xd, pd;
  for (const auto& v : x) xd.push_back(to_cd(v));
  for (const auto& v : path) pd.push_back(to_cd(v));
  auto coarse = continue_lambda(sys, xd, to_cd(lambda), pd, opt);
  std::vector<std::vector<MpComplex>> out;
  out.reserve(coarse.size());
  for (std::size_t k = 0; k < coarse.size(); ++k) {
    std::vector<MpComplex> start;
    for (const auto& v : coarse[k]) start.push_back(to_mp(v));
    out.push_back(newton_solve(sys, std::move(start), path[k]));
  }
  return out;
}

// Power series x(lambda0 + eps) mod eps^order by Newton on series,
// doubling the number of correct terms per step.
template <class S>
std::vector<Series<S>> series_lift(const DeformSystem& sys, const std::vector<S>& start, const S& lambda0,
                                   std::size_t order) {
  const std::size_t k = std::max<std::size_t>(order, 1);
  Series<S>::set_order(1);
  std::vector<Series<S>> x;
  for (const auto& v : start) x.emplace_back(v);
  if (!all_negligible(sys.residual(x, Series<S>(lambda0)))) {
    throw DeformError(DeformError::Kind::Divergence, "series_lift start does not solve the system");
  }
  std::size_t m = 1;
  while (m < k) {
    m = std::min(2 * m, k);
    Series<S>::set_order(m);
    for (auto& v : x) v = v.resized();
    auto lam = Series<S>::variable(lambda0);
    auto r = sys.residual(x, lam);
    for (auto& v : r) v = -v;
    auto dx = solve_linear(sys.jacobian(x, lam), r);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += dx[i];
  }
  if (!all_negligible(sys.residual(x, Series<S>::variable(lambda0)))) {
    throw DeformError(DeformError::Kind::Divergence, "series Newton did not reach the requested order");
  }
  return x;
}

// ---------------------------------------------------------------------------
// Relations between two observed coefficients

namespace detail {

inline std::optional<mpq_class> reconstruct(const Padic& v) {
  return rational_reconstruct(v.value(), Padic::context().modulus);
}

inline std::optional<mpq_class> continued_fraction(const Mpfr& x, const Mpfr& tol, const mpz_class& max_den) {
  mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  Mpfr r = x;
  for (int it = 0; it < 400; ++it) {
    Mpfr fl = boost::multiprecision::floor(r);
    mpz_class a;
    mpfr_get_z(a.get_mpz_t(), fl.backend().data(), MPFR_RNDD);
    mpz_class h2 = a * h1 + h0, k2 = a * k1 + k0;
    if (k2 > max_den) return std::nullopt;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    mpq_class c(h1, k1);
    c.canonicalize();
    if (boost::multiprecision::abs(x - mpfr_from(c)) <= tol) return c;
    Mpfr frac = r - fl;
    if (frac == 0) return std::nullopt;
    r = 1 / frac;
  }
  return std::nullopt;
}

inline std::optional<mpq_class> reconstruct(const MpComplex& v) {
  const double d = working_digits();
  Mpfr tol = boost::multiprecision::pow(Mpfr(10), static_cast<long>(-0.6 * d)) * std::max(Mpfr(1), v.abs());
  if (boost::multiprecision::abs(v.im) > tol) return std::nullopt;
  mpz_class bound;
  mpz_ui_pow_ui(bound.get_mpz_t(), 10, static_cast<unsigned long>(d / 4));
  return continued_fraction(v.re, tol, bound);
}

inline std::optional<mpq_class> reconstruct(const cd& v) {
  if (std::abs(v.imag()) > 1e-8 * std::max(1.0, std::abs(v))) return std::nullopt;
  return continued_fraction(Mpfr(v.real()), Mpfr(1e-9 * std::max(1.0, std::abs(v))), mpz_class(10000));
}

// Zero relative to a reference magnitude (log10) in the mode's precision.
template <class S>
bool rank_zero(const S& s, double ref) {
  if constexpr (ScalarTraits<S>::archimedean) {
    return ScalarTraits<S>::score(s) < ref - ScalarTraits<S>::digits() / 2;
  } else {
    return ScalarTraits<S>::score(s) <= -static_cast<double>(Padic::context().k) / 2;
  }
}

template <class S>
std::vector<S> powers(const S& v, int d) {
  std::vector<S> p{S(1)};
  for (int i = 0; i < d; ++i) p.push_back(p.back() * v);
  return p;
}

}  // namespace detail

struct RelationFit {
  BiPoly relation;  // in x (first coordinate) and t (second coordinate)
  int d1 = 0, d2 = 0;
  std::size_t fitted = 0, held_out = 0;
};

namespace detail {

// Nullspace of the rows of A (columns ordered x^i y^j, i major), which must
// be one-dimensional; the vector is normalized at its first nonzero entry,
// rationalized, and must annihilate every row of `check` (given with a
// per-row magnitude reference for archimedean modes).
template <class S>
RelationFit relation_from_rows(std::vector<std::vector<S>> A, const std::vector<std::vector<S>>& check, int d1,
                               int d2) {
  const std::size_t cols = static_cast<std::size_t>((d1 + 1) * (d2 + 1));
  const std::size_t rows = A.size();
  double ref = -std::numeric_limits<double>::infinity();
  for (const auto& r : A) ref = std::max(ref, max_score(r));
  std::vector<std::size_t> pivot_cols;
  std::size_t pr = 0;
  for (std::size_t c = 0; c < cols && pr < rows; ++c) {
    std::size_t piv = pr;
    double best = ScalarTraits<S>::score(A[pr][c]);
    for (std::size_t r = pr + 1; r < rows; ++r) {
      double sc = ScalarTraits<S>::score(A[r][c]);
      if (sc > best) {
        best = sc;
        piv = r;
      }
    }
    if (rank_zero(A[piv][c], ref)) continue;
    if (!ScalarTraits<S>::invertible(A[piv][c])) {
      throw DeformError(DeformError::Kind::Reconstruction, "non-unit pivot: samples too close p-adically or unlucky prime");
    }
    std::swap(A[piv], A[pr]);
    S inv = S(1) / A[pr][c];
    for (auto& v : A[pr]) v = v * inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == pr || ScalarTraits<S>::negligible(A[r][c])) continue;
      S f = A[r][c];
      for (std::size_t k = c; k < cols; ++k) A[r][k] -= f * A[pr][k];
    }
    pivot_cols.push_back(c);
    ++pr;
  }
  const std::size_t nullity = cols - pivot_cols.size();
  if (nullity != 1) {
    throw DeformError(DeformError::Kind::Nullspace, "nullspace dimension " + std::to_string(nullity) + " at degrees (" +
                                                        std::to_string(d1) + "," + std::to_string(d2) + ")");
  }
  std::size_t free_col = 0;
  while (std::find(pivot_cols.begin(), pivot_cols.end(), free_col) != pivot_cols.end()) ++free_col;
  std::vector<S> v(cols, S(0));
  v[free_col] = S(1);
  for (std::size_t r = 0; r < pivot_cols.size(); ++r) v[pivot_cols[r]] = -A[r][free_col];

  double vref = max_score(v);
  std::size_t norm = 0;
  while (rank_zero(v[norm], vref)) ++norm;
  S inv = S(1) / v[norm];
  std::vector<std::vector<mpq_class>> coeff(static_cast<std::size_t>(d2) + 1,
                                            std::vector<mpq_class>(static_cast<std::size_t>(d1) + 1));
  std::vector<mpq_class> flat(cols);
  for (std::size_t c = 0; c < cols; ++c) {
    if (rank_zero(v[c], vref)) continue;
    auto q = reconstruct(S(v[c] * inv));
    if (!q) throw DeformError(DeformError::Kind::Reconstruction, "rational reconstruction failed");
    flat[c] = *q;
    coeff[c % static_cast<std::size_t>(d2 + 1)][c / static_cast<std::size_t>(d2 + 1)] = *q;
  }
  for (const auto& row : check) {
    S acc(0);
    double scale = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < cols; ++c) {
      if (flat[c] == 0) continue;
      S term = lift<S>(flat[c]) * row[c];
      scale = std::max(scale, ScalarTraits<S>::score(term));
      acc += term;
    }
    bool ok;
    if constexpr (ScalarTraits<S>::archimedean) {
      ok = ScalarTraits<S>::score(acc) < scale - ScalarTraits<S>::digits() / 2;
    } else {
      ok = ScalarTraits<S>::negligible(acc);
    }
    if (!ok) throw DeformError(DeformError::Kind::Reconstruction, "fitted relation fails on held-out data");
  }
  std::vector<QPoly> rowsy;
  for (auto& c : coeff) rowsy.emplace_back(c);
  return {BiPoly(rowsy), d1, d2, rows, check.size()};
}

template <class S>
std::vector<S> monomial_row(const S& x, const S& y, int d1, int d2) {
  auto px = powers(x, d1), py = powers(y, d2);
  std::vector<S> row;
  for (int i = 0; i <= d1; ++i) {
    for (int j = 0; j <= d2; ++j) row.push_back(px[static_cast<std::size_t>(i)] * py[static_cast<std::size_t>(j)]);
  }
  return row;
}

}  // namespace detail

// Relation sum c_ij x^i y^j = 0 with deg_x <= d1, deg_y <= d2 through
// sample points, normalized so the first nonzero coefficient (constant term
// first) is 1. The last `held_out` samples only verify.
//
// In p-adic mode the samples must be p-adically spread out: points from one
// residue disc make the monomial matrix lose about C(N,2) digits, so
// relations from a single p-adic seed go through fit_relation_series.
template <class S>
RelationFit fit_relation(const std::vector<std::pair<S, S>>& samples, int d1, int d2, std::size_t held_out = 20) {
  const std::size_t cols = static_cast<std::size_t>((d1 + 1) * (d2 + 1));
  if (samples.size() < cols + held_out) {
    throw DeformError(DeformError::Kind::Nullspace, "need at least " + std::to_string(cols + held_out) + " samples");
  }
  std::vector<std::vector<S>> A, check;
  for (std::size_t r = 0; r < samples.size(); ++r) {
    auto row = detail::monomial_row(samples[r].first, samples[r].second, d1, d2);
    (r + held_out < samples.size() ? A : check).push_back(std::move(row));
  }
  return detail::relation_from_rows(std::move(A), check, d1, d2);
}

// Relation satisfied by two power series x(eps), y(eps): the coefficients
// of eps^0 ... eps^(K-1) of every monomial give the linear system, the
// last `held_out` orders only verify.
template <class S>
RelationFit fit_relation_series(const Series<S>& x, const Series<S>& y, int d1, int d2, std::size_t held_out = 20) {
  const std::size_t cols = static_cast<std::size_t>((d1 + 1) * (d2 + 1));
  const std::size_t K = x.size();
  if (K < cols + held_out || y.size() != K) {
    throw DeformError(DeformError::Kind::Nullspace, "series order " + std::to_string(K) + " is too low for " +
                                                        std::to_string(cols) + " monomials");
  }
  Series<S>::set_order(K);
  auto mono = detail::monomial_row(x, y, d1, d2);
  std::vector<std::vector<S>> A, check;
  for (std::size_t m = 0; m < K; ++m) {
    std::vector<S> row;
    for (const auto& s : mono) row.push_back(s[m]);
    (m + held_out < K ? A : check).push_back(std::move(row));
  }
  return detail::relation_from_rows(std::move(A), check, d1, d2);
}

// Tries degree pairs (e1, e2) >= (d1, d2) by increasing monomial count up to
// `max_monomials` and returns the first with a one-dimensional nullspace.
template <class Fit>
RelationFit search_degrees(Fit fit, int d1, int d2, std::size_t max_monomials, std::vector<std::string>* tried) {
  std::vector<std::pair<int, int>> pairs;
  for (int e1 = d1; static_cast<std::size_t>((e1 + 1) * (d2 + 1)) <= max_monomials; ++e1) {
    for (int e2 = d2; static_cast<std::size_t>((e1 + 1) * (e2 + 1)) <= max_monomials; ++e2) pairs.emplace_back(e1, e2);
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](auto a, auto b) {
    int ma = (a.first + 1) * (a.second + 1), mb = (b.first + 1) * (b.second + 1);
    return ma != mb ? ma < mb : a.first + a.second < b.first + b.second;
  });
  for (auto [e1, e2] : pairs) {
    try {
      auto r = fit(e1, e2);
      if (tried) tried->push_back("(" + std::to_string(e1) + "," + std::to_string(e2) + "): relation");
      return r;
    } catch (const DeformError& e) {
      if (e.kind() != DeformError::Kind::Nullspace) throw;
      if (tried) tried->push_back("(" + std::to_string(e1) + "," + std::to_string(e2) + "): " + e.what());
    }
  }
  throw DeformError(DeformError::Kind::Nullspace, "no degree pair within the budget gives a relation");
}

template <class S>
RelationFit fit_relation_search(const std::vector<std::pair<S, S>>& samples, int d1, int d2, std::size_t held_out = 20,
                                std::vector<std::string>* tried = nullptr) {
  std::size_t budget = samples.size() > held_out ? samples.size() - held_out : 0;
  return search_degrees([&](int e1, int e2) { return fit_relation(samples, e1, e2, held_out); }, d1, d2, budget, tried);
}

template <class S>
RelationFit fit_relation_series_search(const Series<S>& x, const Series<S>& y, int d1, int d2,
                                       std::size_t held_out = 20, std::vector<std::string>* tried = nullptr) {
  std::size_t budget = x.size() > held_out ? x.size() - held_out : 0;
  return search_degrees([&](int e1, int e2) { return fit_relation_series(x, y, e1, e2, held_out); }, d1, d2, budget,
                        tried);
}

// True if a and b agree up to a nonzero rational factor.
inline bool same_up_to_scalar(const BiPoly& a, const BiPoly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  if (a.deg_t() != b.deg_t()) return false;
  std::optional<mpq_class> ratio;
  for (int j = 0; j <= a.deg_t(); ++j) {
    const QPoly ra = a.row(j), rb = b.row(j);
    std::size_t len = std::max(ra.coeffs().size(), rb.coeffs().size());
    for (std::size_t i = 0; i < len; ++i) {
      mpq_class ca = ra.coeff(i), cb = rb.coeff(i);
      if ((ca == 0) != (cb == 0)) return false;
      if (ca == 0) continue;
      mpq_class r = ca / cb;
      if (ratio && *ratio != r) return false;
      ratio = r;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Braid transport of the moving pair

inline double cabs(const cd& z) { return std::abs(z); }
inline double cabs(const MpComplex& z) { return z.abs().convert_to<double>(); }
inline cd csqrt(const cd& z) { return std::sqrt(z); }
inline MpComplex csqrt(const MpComplex& z) { return MpComplex::sqrt(z); }
// e^{2 pi i k / n}
inline cd unit_root(int k, int n, const cd*) { return std::polar(1.0, 2 * 3.14159265358979323846 * k / n); }
inline MpComplex unit_root(int k, int n, const MpComplex*) {
  Mpfr pi = boost::multiprecision::acos(Mpfr(-1));
  return MpComplex::polar(Mpfr(1), 2 * pi * Mpfr(k) / n);
}

// Exchanges the two roots of t^2 + a t + lambda by a half turn about their
// midpoint, i.e. lambda(phi) = (a^2 - D e^{i phi}) / 4 for phi in [0, 2 pi]
// with D = a^2 - 4 lambda. Requires a fixed linear coefficient and no other
// finite branch point in the closed disc swept by the pair.
template <class S>
std::vector<S> braid_transport(const DeformSystem& sys, const std::vector<S>& x, const S& lambda, int steps = 64,
                               ContinuationOptions opt = {}) {
  static_assert(ScalarTraits<S>::archimedean, "braid transport needs complex mode");
  const auto& slot = sys.quadratic_slot();
  if (!slot.a) throw DeformError(DeformError::Kind::Precondition, "braid transport needs a fixed linear coefficient");
  S a = lift<S>(*slot.a);
  S D = a * a - S(4) * lambda;
  S mid = S(0) - a * lift<S>(mpq_class(1, 2));
  double radius = cabs(csqrt(D)) / 2;
  std::vector<S> others;
  for (const auto& s : sys.shape().slots) {
    if (s.kind == ShapeSlot::Kind::Zero) others.push_back(S(0));
    if (s.kind == ShapeSlot::Kind::Rational) others.push_back(lift<S>(s.t));
  }
  for (const auto& t : others) {
    if (cabs(t - mid) <= radius * (1 + 1e-9)) {
      throw DeformError(DeformError::Kind::Precondition, "another branch point lies inside the half-turn disc");
    }
  }
  std::vector<S> path;
  for (int k = 1; k <= steps; ++k) {
    S w = unit_root(k, steps, static_cast<const S*>(nullptr));
    path.push_back((a * a - D * w) * lift<S>(mpq_class(1, 4)));
  }
  path.back() = lambda;
  return continue_lambda(sys, x, lambda, path, opt).back();
}

// ---------------------------------------------------------------------------
// Paths and text forms

// Lambda path text: "r1,r2,..." (rationals), "line:N:h" (lambda0 + j h,
// j = 1..N) or "circle:N:r" (lambda0 + r e^{2 pi i j/N}, j = 0..N-1; complex
// modes only).
struct PathSpec {
  enum class Kind { List, Line, Circle } kind = Kind::List;
  std::vector<mpq_class> values;
  int count = 0;
  mpq_class step;
};

inline PathSpec parse_path(const std::string& text) {
  PathSpec p;
  auto fields = [&](const std::string& rest) {
    auto c = rest.find(':');
    if (c == std::string::npos) throw DeformError(DeformError::Kind::Shape, "malformed path " + text);
    p.count = std::stoi(rest.substr(0, c));
    p.step = parse_rational(rest.substr(c + 1));
    if (p.count < 1) throw DeformError(DeformError::Kind::Shape, "path needs at least one point");
  };
  if (text.rfind("line:", 0) == 0) {
    p.kind = PathSpec::Kind::Line;
    fields(text.substr(5));
  } else if (text.rfind("circle:", 0) == 0) {
    p.kind = PathSpec::Kind::Circle;
    fields(text.substr(7));
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) p.values.push_back(parse_rational(item));
    if (p.values.empty()) throw DeformError(DeformError::Kind::Shape, "empty path");
  }
  return p;
}

template <class S>
std::vector<S> path_points(const PathSpec& p, const mpq_class& lambda0) {
  std::vector<S> out;
  switch (p.kind) {
    case PathSpec::Kind::List:
      for (const auto& v : p.values) out.push_back(lift<S>(v));
      break;
    case PathSpec::Kind::Line:
      for (int j = 1; j <= p.count; ++j) out.push_back(lift<S>(lambda0 + p.step * j));
      break;
    case PathSpec::Kind::Circle:
      if constexpr (ScalarTraits<S>::archimedean) {
        for (int j = 0; j < p.count; ++j) {
          out.push_back(lift<S>(lambda0) + lift<S>(p.step) * unit_root(j, p.count, static_cast<const S*>(nullptr)));
        }
      } else {
        throw DeformError(DeformError::Kind::Shape, "circle paths need complex mode");
      }
      break;
  }
  return out;
}

inline nlohmann::json scalar_json(const Padic& v) { return v.value().get_str(); }
inline nlohmann::json scalar_json(const cd& v) { return nlohmann::json::array({v.real(), v.imag()}); }
inline nlohmann::json scalar_json(const MpComplex& v) {
  auto d = static_cast<std::streamsize>(working_digits());
  return nlohmann::json::array({v.re.str(d, std::ios_base::scientific), v.im.str(d, std::ios_base::scientific)});
}

inline MpComplex mp_from_json(const nlohmann::json& j) {
  if (j.is_array()) return {Mpfr(j.at(0).get<std::string>()), Mpfr(j.at(1).get<std::string>())};
  return {Mpfr(j.get<std::string>()), Mpfr(0)};
}

inline std::string relation_string(const BiPoly& r) {
  std::string out;
  for (int j = r.deg_t(); j >= 0; --j) {
    QPoly row = r.row(j);
    if (row.is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + to_string(row, "x") + ")";
    if (j > 0) out += "*y" + (j > 1 ? "^" + std::to_string(j) : std::string());
  }
  return out.empty() ? "0" : out;
}

}  // namespace hurwitz
