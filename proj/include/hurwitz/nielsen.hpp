#pragma once

// Nielsen classes and the Hurwitz braid action on them.
//
// A tuple (s_1, ..., s_r) with s_1 ... s_r = 1 is acted on by the braid
// generator b_i through
//   (s_i, s_{i+1}) -> (s_i s_{i+1} s_i^-1, s_i),
// and braid words act left to right. Tuples are identified up to
// simultaneous conjugation by the group G.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "hurwitz/blocks.hpp"
#include "hurwitz/catalog.hpp"
#include "hurwitz/perm.hpp"
#include "hurwitz/perm_group.hpp"

namespace hurwitz {

class NielsenError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Tuple = std::vector<Permutation>;

// Signed 1-based generator indices, applied left to right.
using BraidWord = std::vector<int>;

inline Permutation tuple_product(const Tuple& t) {
  Permutation p(t.front().degree());
  for (const auto& s : t) p = p * s;
  return p;
}

inline Tuple braid_apply(const Tuple& t, int i, int sign = 1) {
  if (i < 1 || static_cast<std::size_t>(i) >= t.size()) {
    throw NielsenError("braid generator index out of range: " + std::to_string(i));
  }
  Tuple out = t;
  std::size_t k = static_cast<std::size_t>(i - 1);
  if (sign > 0) {
    out[k] = t[k] * t[k + 1] * t[k].inverse();
    out[k + 1] = t[k];
  } else {
    out[k] = t[k + 1];
    out[k + 1] = t[k + 1].inverse() * t[k] * t[k + 1];
  }
  return out;
}

inline Tuple braid_apply(const Tuple& t, const BraidWord& w) {
  Tuple out = t;
  for (int g : w) {
    if (g == 0) throw NielsenError("braid word letter 0");
    out = braid_apply(out, g > 0 ? g : -g, g > 0 ? 1 : -1);
  }
  return out;
}

struct GenusResult {
  long genus = 0;
  bool realizable = true;  // false when the value is negative
};

// Riemann-Hurwitz: g = -(n-1) + (1/2) sum ind.
inline GenusResult tuple_genus(const std::vector<CycleType>& types, std::size_t n) {
  long sum = 0;
  for (const auto& c : types) {
    if (c.degree() != n) throw NielsenError("cycle type " + c.to_string() + " has wrong degree");
    sum += static_cast<long>(c.index());
  }
  if (sum % 2 != 0) throw NielsenError("index sum is odd");
  long g = -(static_cast<long>(n) - 1) + sum / 2;
  return {g, g >= 0};
}

inline GenusResult tuple_genus(const Tuple& t) {
  std::vector<CycleType> types;
  for (const auto& s : t) types.push_back(cycle_type(s));
  return tuple_genus(types, t.front().degree());
}

// Per-position class selectors for one group.
struct ClassTupleSpec {
  std::string group;
  std::vector<ClassSelector> classes;
};

inline bool generates(const PermGroup& g, const Tuple& t) {
  return PermGroup(t).order() == g.order();
}

inline bool is_straight(const CatalogGroup& cg, const Tuple& t, const ClassTupleSpec& spec) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!cg.matches(t[i], spec.classes[i])) return false;
  }
  return true;
}

// Random search: s_1..s_{r-1} from class samplers, s_r = (s_1...s_{r-1})^-1,
// accepted when s_r is in C_r and the tuple generates G.
inline Tuple find_tuple(const CatalogGroup& cg, const ClassTupleSpec& spec, std::uint64_t seed,
                        std::size_t budget = 10'000'000) {
  const std::size_t r = spec.classes.size();
  if (r < 3) throw NielsenError("need r >= 3");
  std::vector<ClassSampler> samplers;
  for (std::size_t i = 0; i + 1 < r; ++i) samplers.emplace_back(cg, spec.classes[i], seed * 1000003 + i);
  for (std::size_t trial = 0; trial < budget; ++trial) {
    Tuple t;
    Permutation prod(cg.group.degree());
    for (auto& s : samplers) {
      t.push_back(s.next());
      prod = prod * t.back();
    }
    Permutation last = prod.inverse();
    if (!cg.matches(last, spec.classes.back())) continue;
    t.push_back(std::move(last));
    if (generates(cg.group, t)) return t;
  }
  throw NielsenError("find_tuple: trial budget exhausted");
}

namespace detail {

// Relabels points breadth-first from `start`, visiting images under the
// tuple entries in order. Returns the relabeling (old -> new) when the
// tuple moves `start` transitively, else an empty vector.
inline std::vector<Point> bfs_labels(const Tuple& t, Point start) {
  const std::size_t n = t.front().degree();
  std::vector<Point> label(n, static_cast<Point>(n));
  std::vector<Point> queue{start};
  label[start] = 0;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (const auto& s : t) {
      Point y = s(queue[q]);
      if (label[y] == n) {
        label[y] = static_cast<Point>(queue.size());
        queue.push_back(y);
      }
    }
  }
  if (queue.size() != n) return {};
  return label;
}

inline bool is_transitive_tuple(const Tuple& t) { return !bfs_labels(t, 0).empty(); }

// Canonical form of a transitive tuple under simultaneous conjugation by the
// full symmetric group: lexicographically least relabeled image list.
inline std::vector<Point> symmetric_canonical_key(const Tuple& t) {
  const std::size_t n = t.front().degree();
  std::vector<Point> best;
  std::vector<Point> cur(n * t.size());
  for (std::size_t s = 0; s < n; ++s) {
    auto label = bfs_labels(t, static_cast<Point>(s));
    for (std::size_t k = 0; k < t.size(); ++k) {
      for (std::size_t x = 0; x < n; ++x) cur[k * n + label[x]] = label[t[k](static_cast<Point>(x))];
    }
    if (best.empty() || cur < best) best = cur;
  }
  return best;
}

// Conjugation-invariant fingerprint for tuples that are not transitive:
// cycle types of all entries and of adjacent products.
inline std::vector<Point> fingerprint_key(const Tuple& t) {
  std::vector<Point> key;
  auto push = [&](const Permutation& p) {
    for (std::size_t len : cycle_type(p).lengths()) key.push_back(static_cast<Point>(len));
    key.push_back(0);
  };
  for (std::size_t i = 0; i < t.size(); ++i) {
    push(t[i]);
    if (i + 1 < t.size()) push(t[i] * t[i + 1]);
  }
  return key;
}

struct KeyHash {
  std::size_t operator()(const std::vector<Point>& v) const { return hash_images(v); }
};

}  // namespace detail

// True iff some g in G conjugates a to b entrywise. For transitive tuples
// the conjugator in the symmetric group is fixed by the image of one point,
// so all candidates are enumerated and tested for membership in G;
// otherwise a backtrack transporter search runs.
inline bool inner_equivalent(const PermGroup& g, const Tuple& a, const Tuple& b) {
  if (a.size() != b.size()) throw NielsenError("tuples of different length");
  const std::size_t n = g.degree();
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (cycle_type(a[k]) != cycle_type(b[k])) return false;
  }
  if (!detail::is_transitive_tuple(a)) return transporter(g, a, b).has_value();
  std::vector<Point> img(n);
  std::vector<char> set(n);
  for (std::size_t y = 0; y < n; ++y) {
    std::fill(set.begin(), set.end(), 0);
    std::vector<char> used(n, 0);
    img[0] = static_cast<Point>(y);
    set[0] = 1;
    used[y] = 1;
    std::vector<Point> queue{0};
    bool ok = true;
    for (std::size_t q = 0; q < queue.size() && ok; ++q) {
      Point x = queue[q];
      for (std::size_t k = 0; k < a.size() && ok; ++k) {
        Point ax = a[k](x);
        Point target = b[k](img[x]);
        if (set[ax]) {
          ok = img[ax] == target;
        } else if (used[target]) {
          ok = false;
        } else {
          set[ax] = 1;
          used[target] = 1;
          img[ax] = target;
          queue.push_back(ax);
        }
      }
    }
    if (!ok || queue.size() != n) continue;
    Permutation c(img);
    if (g.contains(c)) return true;
  }
  return false;
}

// Store of tuples up to inner equivalence: hashed by a symmetric-group
// canonical form (or an invariant fingerprint for intransitive tuples),
// with exact inner_equivalent on collisions.
class TupleStore {
 public:
  explicit TupleStore(const PermGroup& g) : g_(&g) {}

  std::optional<std::size_t> find(const Tuple& t) const {
    auto it = buckets_.find(key(t));
    if (it == buckets_.end()) return std::nullopt;
    for (std::size_t idx : it->second) {
      if (inner_equivalent(*g_, items_[idx], t)) return idx;
    }
    return std::nullopt;
  }

  // Returns (index, inserted).
  std::pair<std::size_t, bool> insert(const Tuple& t) {
    auto k = key(t);
    auto& bucket = buckets_[k];
    for (std::size_t idx : bucket) {
      if (inner_equivalent(*g_, items_[idx], t)) return {idx, false};
    }
    items_.push_back(t);
    bucket.push_back(items_.size() - 1);
    return {items_.size() - 1, true};
  }

  std::size_t size() const { return items_.size(); }
  const Tuple& operator[](std::size_t i) const { return items_[i]; }
  const std::vector<Tuple>& items() const { return items_; }

 private:
  static std::vector<Point> key(const Tuple& t) {
    if (detail::is_transitive_tuple(t)) return detail::symmetric_canonical_key(t);
    auto k = detail::fingerprint_key(t);
    k.push_back(static_cast<Point>(0xffff));
    return k;
  }

  const PermGroup* g_;
  std::vector<Tuple> items_;
  std::unordered_map<std::vector<Point>, std::vector<std::size_t>, detail::KeyHash> buckets_;
};

// Orbit of inner classes under a set of braid words (default: all b_i),
// with the permutation each word induces on the orbit.
struct OrbitGraph {
  std::vector<Tuple> tuples;
  std::vector<BraidWord> words;
  std::vector<Permutation> actions;  // actions[w] acts on tuple indices

  std::size_t size() const { return tuples.size(); }
};

inline std::vector<BraidWord> standard_generators(std::size_t r) {
  std::vector<BraidWord> w;
  for (std::size_t i = 1; i < r; ++i) w.push_back({static_cast<int>(i)});
  return w;
}

inline OrbitGraph orbit_closure(const PermGroup& g, const Tuple& start,
                                std::vector<BraidWord> words = {}, std::size_t cap = 100'000) {
  if (words.empty()) words = standard_generators(start.size());
  if (!tuple_product(start).is_identity()) throw NielsenError("tuple product is not 1");
  TupleStore store(g);
  store.insert(start);
  std::vector<std::vector<Point>> images(words.size());
  for (std::size_t i = 0; i < store.size(); ++i) {
    for (std::size_t w = 0; w < words.size(); ++w) {
      Tuple next = braid_apply(store[i], words[w]);
      auto [idx, fresh] = store.insert(next);
      if (fresh && store.size() > cap) throw NielsenError("orbit exceeds cap");
      if (idx >= 0xffff) throw NielsenError("orbit too large for point type");
      images[w].push_back(static_cast<Point>(idx));
    }
  }
  OrbitGraph og;
  og.tuples = store.items();
  og.words = words;
  for (auto& im : images) {
    try {
      og.actions.emplace_back(std::move(im));
    } catch (const PermError&) {
      throw NielsenError("braid word does not act bijectively on the orbit");
    }
  }
  return og;
}

inline std::vector<std::size_t> straight_indices(const CatalogGroup& cg, const OrbitGraph& og,
                                                 const ClassTupleSpec& spec) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < og.size(); ++i) {
    if (is_straight(cg, og.tuples[i], spec)) out.push_back(i);
  }
  return out;
}

inline std::size_t straight_count(const CatalogGroup& cg, const OrbitGraph& og,
                                  const ClassTupleSpec& spec) {
  return straight_indices(cg, og, spec).size();
}

// Permutation induced by a braid word on the straight elements of an orbit.
// Throws if the word leaves the straight set.
inline Permutation straight_action(const OrbitGraph& og, const std::vector<std::size_t>& straight,
                                   const BraidWord& word) {
  std::vector<int> pos(og.size(), -1);
  for (std::size_t k = 0; k < straight.size(); ++k) pos[straight[k]] = static_cast<int>(k);
  std::vector<Point> img(straight.size());
  for (std::size_t k = 0; k < straight.size(); ++k) {
    std::size_t cur = straight[k];
    for (int letter : word) {
      std::size_t gi = static_cast<std::size_t>(std::abs(letter) - 1);
      const Permutation& a = og.actions.at(gi);
      if (og.words.at(gi) != BraidWord{static_cast<int>(gi + 1)}) {
        throw NielsenError("straight_action needs an orbit built from the standard generators");
      }
      cur = letter > 0 ? a(static_cast<Point>(cur)) : a.inverse()(static_cast<Point>(cur));
    }
    if (pos[cur] < 0) throw NielsenError("braid word leaves the straight Nielsen class");
    img[k] = static_cast<Point>(pos[cur]);
  }
  return Permutation(std::move(img));
}

struct ReducedGenus {
  long genus = 0;
  std::size_t points = 0;
  std::vector<Permutation> braids;  // gamma_0, gamma_1, gamma_inf on straight classes
  std::vector<CycleType> structures;
  bool symmetrized = false;
};

// Braid words for the three distinguished loops on the parameter line.
// Unsymmetrized: b_1^2 and b_2^2 (the second point circling its neighbours);
// symmetrized (classes 1 and 2 equal): b_1 and b_2^2. The third loop is the
// inverse of the product of the first two.
inline std::vector<BraidWord> reduced_braid_words(bool symmetrized) {
  if (symmetrized) return {{1}, {2, 2}, {-2, -2, -1}};
  return {{1, 1}, {2, 2}, {-2, -2, -1, -1}};
}

inline ReducedGenus reduced_genus_r4(const CatalogGroup& cg, const OrbitGraph& og,
                                     const ClassTupleSpec& spec, bool symmetrize) {
  if (spec.classes.size() != 4) throw NielsenError("reduced genus needs r = 4");
  bool sym = symmetrize && spec.classes[0] == spec.classes[1];
  auto straight = straight_indices(cg, og, spec);
  ReducedGenus out;
  out.symmetrized = sym;
  out.points = straight.size();
  for (const auto& w : reduced_braid_words(sym)) out.braids.push_back(straight_action(og, straight, w));
  if (!(out.braids[0] * out.braids[1] * out.braids[2]).is_identity()) {
    throw NielsenError("distinguished braids do not multiply to 1");
  }
  long sum = 0;
  for (const auto& b : out.braids) {
    out.structures.push_back(cycle_type(b));
    sum += static_cast<long>(index(b));
  }
  long twice = -2 * static_cast<long>(out.points) + sum;  // 2g - 2
  if ((twice + 2) % 2 != 0) throw NielsenError("odd index sum on reduced classes");
  out.genus = (twice + 2) / 2;
  return out;
}

inline std::vector<BlockSystem> braid_cycle_blocks(const ReducedGenus& rg) {
  return detect_blocks(rg.braids, rg.points);
}

// Permutation induced by a group action on a block system.
inline Permutation block_action(const Permutation& p, const BlockSystem& sys) {
  std::size_t n = 0;
  for (const auto& b : sys) n += b.size();
  std::vector<Point> label(n);
  for (std::size_t i = 0; i < sys.size(); ++i) {
    for (Point x : sys[i]) label[x] = static_cast<Point>(i);
  }
  std::vector<Point> img(sys.size());
  for (std::size_t i = 0; i < sys.size(); ++i) img[i] = label[p(sys[i].front())];
  return Permutation(std::move(img));
}

struct SubgroupOrbits {
  std::vector<std::size_t> lengths;  // sorted
  std::size_t straight_total = 0;
  std::size_t full_orbits = 0;       // distinct full-braid orbits met
  std::size_t seeds_tried = 0;
};

// Decomposes the straight Nielsen class (as far as reachable from random
// seeds) into orbits under the given words. Seeding stops after `patience`
// consecutive seeds that land in an already known full-braid orbit.
inline SubgroupOrbits subgroup_orbits(const CatalogGroup& cg, const ClassTupleSpec& spec,
                                      const std::vector<BraidWord>& words, std::uint64_t seed,
                                      std::size_t patience = 200, std::size_t cap = 100'000) {
  std::vector<OrbitGraph> orbits;
  std::vector<TupleStore> stores;
  SubgroupOrbits out;
  std::size_t quiet = 0;
  for (std::uint64_t s = seed; quiet < patience; ++s) {
    ++out.seeds_tried;
    Tuple t = find_tuple(cg, spec, s);
    bool known = false;
    for (const auto& st : stores) {
      if (st.find(t)) {
        known = true;
        break;
      }
    }
    if (known) {
      ++quiet;
      continue;
    }
    quiet = 0;
    orbits.push_back(orbit_closure(cg.group, t, {}, cap));
    TupleStore st(cg.group);
    for (const auto& x : orbits.back().tuples) st.insert(x);
    stores.push_back(std::move(st));
  }
  out.full_orbits = orbits.size();
  for (const auto& og : orbits) {
    auto straight = straight_indices(cg, og, spec);
    out.straight_total += straight.size();
    std::vector<Permutation> acts;
    for (const auto& w : words) acts.push_back(straight_action(og, straight, w));
    for (const auto& orb : PermGroup::orbits_of(acts, straight.size())) out.lengths.push_back(orb.size());
  }
  std::sort(out.lengths.begin(), out.lengths.end());
  return out;
}

}  // namespace hurwitz
