#pragma once

// Catalog of the permutation groups used by the Hurwitz-family computations:
// projective linear groups over small fields acting on projective points,
// bundled generator data for sporadic and exceptional actions, and class
// selectors (cycle type plus an optional inner/outer discriminator).

#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hurwitz/finite_field.hpp"
#include "hurwitz/perm.hpp"
#include "hurwitz/perm_group.hpp"
#include "json.hpp"

#ifndef HURWITZ_DATA_DIR
#define HURWITZ_DATA_DIR "data"
#endif

namespace hurwitz {

class CatalogError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string data_dir() {
  if (const char* env = std::getenv("HURWITZ_DATA_DIR")) return env;
  return HURWITZ_DATA_DIR;
}

using Matrix = std::vector<std::vector<int>>;

// Points of PG(d-1, q) as row vectors whose first nonzero coordinate is 1,
// numbered in lexicographic order of their coordinate codes.
class ProjectiveSpace {
 public:
  ProjectiveSpace(int q, int d) : field_(FiniteField::make(q)), d_(d) {
    int total = 1;
    for (int i = 0; i < d; ++i) total *= q;
    code_to_point_.assign(static_cast<std::size_t>(total), -1);
    for (int code = 1; code < total; ++code) {
      auto v = decode(code);
      int lead = 0;
      for (int x : v) {
        if (x != 0) {
          lead = x;
          break;
        }
      }
      if (lead != 1) continue;
      code_to_point_[static_cast<std::size_t>(code)] = static_cast<int>(points_.size());
      points_.push_back(std::move(v));
    }
  }

  const FiniteField& field() const { return field_; }
  int dimension() const { return d_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<int>& point(std::size_t i) const { return points_[i]; }

  std::size_t index_of(std::vector<int> v) const {
    int lead = 0;
    for (int x : v) {
      if (x != 0) {
        lead = x;
        break;
      }
    }
    if (lead == 0) throw CatalogError("zero vector has no projective point");
    int s = field_.inv(lead);
    for (int& x : v) x = field_.mul(x, s);
    return static_cast<std::size_t>(code_to_point_[static_cast<std::size_t>(encode(v))]);
  }

  // Permutation v -> v*M on points.
  Permutation matrix_permutation(const Matrix& m) const {
    std::vector<Point> img(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) img[i] = static_cast<Point>(index_of(apply(points_[i], m)));
    return Permutation(std::move(img));
  }

  // Coordinatewise Frobenius.
  Permutation frobenius_permutation() const {
    std::vector<Point> img(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
      auto v = points_[i];
      for (int& x : v) x = field_.frobenius(x);
      img[i] = static_cast<Point>(index_of(v));
    }
    return Permutation(std::move(img));
  }

  std::vector<int> apply(const std::vector<int>& v, const Matrix& m) const {
    std::vector<int> w(static_cast<std::size_t>(d_), 0);
    for (int j = 0; j < d_; ++j) {
      int acc = 0;
      for (int i = 0; i < d_; ++i) {
        acc = field_.add(acc, field_.mul(v[static_cast<std::size_t>(i)],
                                         m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
      }
      w[static_cast<std::size_t>(j)] = acc;
    }
    return w;
  }

  Matrix identity() const {
    Matrix m(static_cast<std::size_t>(d_), std::vector<int>(static_cast<std::size_t>(d_), 0));
    for (int i = 0; i < d_; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    return m;
  }

  Matrix multiply(const Matrix& a, const Matrix& b) const {
    Matrix c(a.size(), std::vector<int>(b.front().size(), 0));
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = apply(a[i], b);
    return c;
  }

  // Elementary transvections I + c E_ij (c running over an additive basis of
  // the field) generate SL_d(q).
  std::vector<Matrix> sl_generators() const {
    std::vector<Matrix> out;
    int p = field_.characteristic();
    for (int i = 0; i < d_; ++i) {
      for (int j = 0; j < d_; ++j) {
        if (i == j) continue;
        int c = 1;
        for (int b = 0; b < field_.extension_degree(); ++b, c *= p) {
          Matrix m = identity();
          m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = c;
          out.push_back(std::move(m));
        }
      }
    }
    return out;
  }

  Matrix primitive_diagonal() const {
    Matrix m = identity();
    m[0][0] = field_.primitive_element();
    return m;
  }

 private:
  std::vector<int> decode(int code) const {
    std::vector<int> v(static_cast<std::size_t>(d_));
    for (int i = d_ - 1; i >= 0; --i) {
      v[static_cast<std::size_t>(i)] = code % field_.order();
      code /= field_.order();
    }
    return v;
  }
  int encode(const std::vector<int>& v) const {
    int code = 0;
    for (int x : v) code = code * field_.order() + x;
    return code;
  }

  FiniteField field_;
  int d_;
  std::vector<std::vector<int>> points_;
  std::vector<int> code_to_point_;
};

// Cycle type plus an optional inner/outer flag relative to the normal
// subgroup carried by the catalog entry.
struct ClassSelector {
  CycleType type;
  std::optional<bool> outer;

  std::string to_string() const {
    std::string s = type.to_string();
    if (outer) s += *outer ? " outer" : " inner";
    return s;
  }
  friend bool operator==(const ClassSelector&, const ClassSelector&) = default;
  friend auto operator<=>(const ClassSelector&, const ClassSelector&) = default;
};

struct ClassEntry {
  std::string label;
  unsigned long long element_order;
  ClassSelector selector;
};

struct GroupSpec {
  std::string name;
  std::string kind;  // matrix-projective | semilinear-projective | explicit-data | coset-induced
  std::size_t degree = 0;
  mpz_class expected_order;
  std::vector<ClassEntry> classes;
};

struct CatalogGroup {
  PermGroup group;
  GroupSpec spec;
  std::optional<PermGroup> normal;

  bool is_outer(const Permutation& p) const {
    if (!normal) throw CatalogError(spec.name + " has no designated normal subgroup");
    return !normal->contains(p);
  }

  bool matches(const Permutation& p, const ClassSelector& sel) const {
    if (cycle_type(p) != sel.type) return false;
    if (sel.outer && is_outer(p) != *sel.outer) return false;
    return true;
  }

  // Accepts a class label from the table ("2A") or a cycle-type string,
  // optionally followed by " outer" / " inner".
  ClassSelector resolve(const std::string& text) const {
    std::string body = text;
    std::optional<bool> outer;
    for (auto [suffix, flag] : {std::pair{" outer", true}, std::pair{" inner", false}}) {
      std::string sfx = suffix;
      if (body.size() > sfx.size() && body.compare(body.size() - sfx.size(), sfx.size(), sfx) == 0) {
        body.resize(body.size() - sfx.size());
        outer = flag;
      }
    }
    for (const auto& c : spec.classes) {
      if (c.label == body) {
        ClassSelector sel = c.selector;
        if (outer) sel.outer = outer;
        return sel;
      }
    }
    CycleType ct;
    try {
      ct = CycleType::parse(body);
    } catch (const PermError&) {
      throw CatalogError("unknown class label '" + text + "' for " + spec.name);
    }
    if (ct.degree() != group.degree()) {
      throw CatalogError("cycle type " + body + " has wrong degree for " + spec.name);
    }
    return {ct, outer};
  }
};

// Random elements of a class: a representative found by random search, then
// uniformly random conjugates of it. Not thread-safe; one per thread.
class ClassSampler {
 public:
  ClassSampler(const CatalogGroup& g, ClassSelector sel, std::uint64_t seed,
               std::size_t trial_bound = 1'000'000)
      : g_(&g), sel_(std::move(sel)), rng_(seed) {
    for (std::size_t t = 0; t < trial_bound; ++t) {
      Permutation x = g.group.random_element(rng_);
      if (g.matches(x, sel_)) {
        rep_ = std::move(x);
        return;
      }
      // Powers of random elements hit small classes much more often.
      for (unsigned long long k = 2; k <= x.order() && k <= 64; ++k) {
        if (x.order() % k != 0) continue;
        Permutation y = x.pow(static_cast<long long>(k));
        if (g.matches(y, sel_)) {
          rep_ = std::move(y);
          return;
        }
      }
    }
    throw CatalogError("no element of class " + sel_.to_string() + " found in " + g.spec.name);
  }

  const Permutation& representative() const { return rep_; }
  const ClassSelector& selector() const { return sel_; }

  Permutation next() { return rep_.conjugate(g_->group.random_element(rng_)); }

  std::mt19937_64& rng() { return rng_; }

 private:
  const CatalogGroup* g_;
  ClassSelector sel_;
  std::mt19937_64 rng_;
  Permutation rep_;
};

inline std::vector<std::string> catalog_names() {
  return {"PSL2_11@11", "PGL2_11@12", "PGL2_11@22",    "PSL3_3@13",   "PSL3_4@21", "PGL3_4@21",
          "PGammaL3_4@21", "PSL5_2@31", "AutPSL5_2@62", "M22@22", "AutM22@22"};
}

namespace detail {

inline std::vector<Permutation> parse_generators(const nlohmann::json& arr, std::size_t degree) {
  std::vector<Permutation> out;
  for (const auto& s : arr) out.push_back(Permutation::parse(s.get<std::string>(), degree));
  return out;
}

inline CatalogGroup load_data_group(const std::string& name) {
  std::string path = data_dir() + "/groups/" + name + ".json";
  std::ifstream in(path);
  if (!in) throw CatalogError("missing group data file " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  CatalogGroup cg;
  std::size_t n = j.at("degree").get<std::size_t>();
  cg.group = PermGroup(parse_generators(j.at("generators"), n));
  cg.spec.name = name;
  cg.spec.kind = "explicit-data";
  cg.spec.degree = n;
  cg.spec.expected_order = mpz_class(j.at("expected_order").get<unsigned long>());
  if (cg.group.order() != cg.spec.expected_order) {
    throw CatalogError("order validation failed for " + name + ": got " + cg.group.order().get_str());
  }
  if (j.contains("normal_subgroup_generators")) {
    cg.normal = PermGroup(parse_generators(j.at("normal_subgroup_generators"), n));
  }
  return cg;
}

inline std::vector<Permutation> matrix_perms(const ProjectiveSpace& ps, const std::vector<Matrix>& ms) {
  std::vector<Permutation> out;
  for (const auto& m : ms) out.push_back(ps.matrix_permutation(m));
  return out;
}

// A subgroup isomorphic to A5, found as <a, b> with a^2 = b^3 = (ab)^5 = 1.
inline PermGroup find_a5(const PermGroup& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int t = 0; t < 1'000'000; ++t) {
    Permutation a = g.random_element(rng);
    Permutation b = g.random_element(rng);
    if (a.order() % 2 != 0 || b.order() % 3 != 0) continue;
    a = a.pow(static_cast<long long>(a.order() / 2));
    b = b.pow(static_cast<long long>(b.order() / 3));
    if ((a * b).order() != 5) continue;
    PermGroup h({a, b});
    if (h.order() == 60) return h;
  }
  throw CatalogError("no A5 subgroup found");
}

inline ClassEntry entry(const char* label, unsigned long long ord, const char* type,
                        std::optional<bool> outer = std::nullopt) {
  return {label, ord, {CycleType::parse(type), outer}};
}

}  // namespace detail

inline CatalogGroup make_group(const std::string& name) {
  using detail::entry;
  CatalogGroup cg;
  auto finish = [&](std::vector<Permutation> gens, const char* kind, std::size_t deg,
                    mpz_class order) {
    cg.group = PermGroup(std::move(gens));
    cg.spec.name = name;
    cg.spec.kind = kind;
    cg.spec.degree = deg;
    cg.spec.expected_order = order;
    if (cg.group.order() != order) {
      throw CatalogError("order validation failed for " + name + ": got " + cg.group.order().get_str());
    }
  };

  if (name == "PSL2_11@11" || name == "M22@22" || name == "AutM22@22") {
    cg = detail::load_data_group(name);
    if (name == "PSL2_11@11") {
      cg.spec.classes = {entry("2A", 2, "2^4.1^3"), entry("3A", 3, "3^3.1^2"),
                         entry("5A", 5, "5^2.1"), entry("6A", 6, "6.3.2"),
                         entry("11A", 11, "11")};
    } else if (name == "M22@22") {
      cg.spec.classes = {entry("2A", 2, "2^8.1^6"), entry("3A", 3, "3^6.1^4"),
                         entry("4A", 4, "4^4.2^2.1^2"), entry("5A", 5, "5^4.1^2"),
                         entry("6A", 6, "6^2.3^2.2^2"), entry("7A", 7, "7^3.1"),
                         entry("8A", 8, "8^2.4.2")};
    } else {
      cg.spec.classes = {entry("2A", 2, "2^8.1^6", false), entry("2B", 2, "2^7.1^8", true),
                         entry("2C", 2, "2^11", true),     entry("6A", 6, "6^2.3^2.2^2", false)};
    }
    return cg;
  }
  if (name == "PGL2_11@12" || name == "PGL2_11@22") {
    ProjectiveSpace ps(11, 2);
    auto sl = detail::matrix_perms(ps, ps.sl_generators());
    auto gens = sl;
    gens.push_back(ps.matrix_permutation(ps.primitive_diagonal()));
    if (name == "PGL2_11@12") {
      finish(gens, "matrix-projective", 12, 1320);
      cg.normal = PermGroup(sl);
      cg.spec.classes = {entry("2A", 2, "2^6", false), entry("2B", 2, "2^5.1^2", true),
                         entry("3A", 3, "3^4"), entry("4A", 4, "4^3"),
                         entry("5A", 5, "5^2.1^2"), entry("6A", 6, "6^2"),
                         entry("10A", 10, "10.1^2"), entry("11A", 11, "11.1"),
                         entry("12A", 12, "12")};
      return cg;
    }
    PermGroup g12(gens);
    PermGroup psl12(sl);
    PermGroup a5 = detail::find_a5(psl12, 5);
    auto act = coset_action(g12, a5, 100);
    // Generators were listed as sl..., diag: the first |sl| images generate PSL.
    std::vector<Permutation> psl22(act.begin(), act.begin() + static_cast<std::ptrdiff_t>(sl.size()));
    finish(act, "coset-induced", 22, 1320);
    cg.normal = PermGroup(psl22);
    cg.spec.classes = {entry("2A", 2, "2^8.1^6", false), entry("2B", 2, "2^11", true),
                       entry("3A", 3, "3^6.1^4"), entry("4A", 4, "4^4.2^3"),
                       entry("5A", 5, "5^4.1^2"), entry("6A", 6, "6^2.3^2.2^2"),
                       entry("11A", 11, "11^2")};
    return cg;
  }
  if (name == "PSL3_3@13") {
    ProjectiveSpace ps(3, 3);
    finish(detail::matrix_perms(ps, ps.sl_generators()), "matrix-projective", 13, 5616);
    cg.spec.classes = {entry("2A", 2, "2^4.1^5"), entry("3A", 3, "3^3.1^4"),
                       entry("3B", 3, "3^4.1"), entry("4A", 4, "4^2.2^2.1"),
                       entry("6A", 6, "6.3.2.1^2"), entry("8A", 8, "8.4.1"),
                       entry("13A", 13, "13")};
    return cg;
  }
  if (name == "PSL3_4@21" || name == "PGL3_4@21" || name == "PGammaL3_4@21") {
    ProjectiveSpace ps(4, 3);
    auto sl = detail::matrix_perms(ps, ps.sl_generators());
    auto gens = sl;
    if (name == "PSL3_4@21") {
      finish(gens, "matrix-projective", 21, 20160);
      return cg;
    }
    gens.push_back(ps.matrix_permutation(ps.primitive_diagonal()));
    if (name == "PGL3_4@21") {
      finish(gens, "matrix-projective", 21, 60480);
      cg.normal = PermGroup(sl);
      return cg;
    }
    gens.push_back(ps.frobenius_permutation());
    finish(gens, "semilinear-projective", 21, 120960);
    cg.normal = PermGroup(sl);
    return cg;
  }
  if (name == "PSL5_2@31" || name == "AutPSL5_2@62") {
    ProjectiveSpace ps(2, 5);
    auto mats = ps.sl_generators();
    if (name == "PSL5_2@31") {
      finish(detail::matrix_perms(ps, mats), "matrix-projective", 31, 9999360);
      cg.spec.classes = {entry("2A", 2, "2^8.1^15"), entry("2B", 2, "2^12.1^7"),
                         entry("3A", 3, "3^8.1^7"),  entry("3B", 3, "3^10.1"),
                         entry("8A", 8, "8^2.4^3.2.1")};
      return cg;
    }
    // Points 0..30, hyperplanes 31..61 (hyperplane with normal vector h).
    // A matrix M maps point v to vM and hyperplane h to h M^{-T}; the
    // polarity swaps point v with hyperplane v.
    auto inverse_transpose = [&](const Matrix& m) {
      // For elementary transvections I + E_ij over GF(2): inverse is itself,
      // transpose is I + E_ji.
      Matrix t = ps.identity();
      for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) t[i][j] = m[j][i];
      }
      return t;
    };
    std::vector<Permutation> inner;
    for (const auto& m : mats) {
      std::vector<Point> img(62);
      auto pm = ps.matrix_permutation(m);
      auto hm = ps.matrix_permutation(inverse_transpose(m));
      for (Point i = 0; i < 31; ++i) {
        img[i] = pm(i);
        img[31 + i] = static_cast<Point>(31 + hm(i));
      }
      inner.emplace_back(std::move(img));
    }
    std::vector<Point> pol(62);
    for (Point i = 0; i < 31; ++i) {
      pol[i] = static_cast<Point>(31 + i);
      pol[31 + i] = i;
    }
    auto gens = inner;
    gens.emplace_back(std::move(pol));
    finish(gens, "matrix-projective", 62, 19998720);
    cg.normal = PermGroup(inner);
    // Labels of the outer classes are not pinned by any published cycle
    // data; the braid search records which combination realizes the orbit.
    cg.spec.classes = {entry("2A", 2, "2^16.1^30", false), entry("2B", 2, "2^24.1^14", false),
                       entry("2C", 2, "2^31", true), entry("6A", 6, "6^10.2", true)};
    return cg;
  }
  throw CatalogError("unknown group name '" + name + "'");
}

// Cycle types split by the inner/outer discriminator, with element counts:
// enumerates the normal subgroup and each of its cosets.
inline std::map<ClassSelector, unsigned long> selector_counts(const CatalogGroup& cg) {
  std::map<ClassSelector, unsigned long> out;
  if (!cg.normal) {
    cg.group.for_each_element([&](const Permutation& p) { ++out[{cycle_type(p), std::nullopt}]; });
    return out;
  }
  mpz_class index = cg.group.order() / cg.normal->order();
  std::vector<Permutation> reps{Permutation(cg.group.degree())};
  std::mt19937_64 rng(0);
  while (reps.size() < index.get_ui()) {
    Permutation r = cg.group.random_element(rng);
    bool fresh = true;
    for (const auto& q : reps) {
      if (cg.normal->contains(r * q.inverse())) {
        fresh = false;
        break;
      }
    }
    if (fresh) reps.push_back(r);
  }
  for (std::size_t k = 0; k < reps.size(); ++k) {
    cg.normal->for_each_element(
        [&](const Permutation& p) { ++out[{cycle_type(p * reps[k]), k != 0}]; });
  }
  return out;
}

}  // namespace hurwitz
