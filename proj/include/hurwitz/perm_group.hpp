#pragma once

// Permutation groups given by generators, backed by a deterministic
// Schreier-Sims stabilizer chain.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "hurwitz/perm.hpp"

namespace hurwitz {

class GroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PermGroup {
 public:
  PermGroup() = default;

  // Base points are taken in natural order (first moved point of the first
  // generator that fixes the current base), so the chain is reproducible.
  explicit PermGroup(std::vector<Permutation> gens) : gens_(std::move(gens)) {
    if (gens_.empty()) throw GroupError("cannot build a group from an empty generator list");
    degree_ = gens_.front().degree();
    for (const auto& g : gens_) {
      if (g.degree() != degree_) throw GroupError("generators have different degrees");
    }
    build();
  }

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return gens_; }

  std::vector<Point> base() const {
    std::vector<Point> b;
    for (const auto& l : levels_) b.push_back(l.base);
    return b;
  }

  std::vector<Permutation> strong_generators() const {
    std::vector<Permutation> s;
    for (const auto& l : levels_) {
      for (const auto& g : l.gens) {
        if (std::find(s.begin(), s.end(), g) == s.end()) s.push_back(g);
      }
    }
    return s;
  }

  std::vector<std::size_t> fundamental_orbit_sizes() const {
    std::vector<std::size_t> out;
    for (const auto& l : levels_) out.push_back(l.orbit.size());
    return out;
  }

  mpz_class order() const {
    mpz_class o = 1;
    for (const auto& l : levels_) o *= static_cast<unsigned long>(l.orbit.size());
    return o;
  }

  unsigned long long order_u64() const {
    unsigned long long o = 1;
    for (const auto& l : levels_) o *= l.orbit.size();
    return o;
  }

  // Sifts p through the chain. Returns the residue and the level at which
  // sifting stopped (== number of levels when it went all the way through).
  std::pair<Permutation, std::size_t> strip(Permutation p, std::size_t from = 0) const {
    for (std::size_t i = from; i < levels_.size(); ++i) {
      const Level& l = levels_[i];
      Point beta = p(l.base);
      int idx = l.slot[beta];
      if (idx < 0) return {std::move(p), i};
      p = p * l.trans_inv[idx];
    }
    return {std::move(p), levels_.size()};
  }

  bool contains(const Permutation& p) const {
    if (p.degree() != degree_) return false;
    auto [res, lvl] = strip(p);
    return lvl == levels_.size() && res.is_identity();
  }

  // Uniformly distributed element (product of random coset representatives).
  template <class Rng>
  Permutation random_element(Rng& rng) const {
    Permutation g(degree_);
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      const Level& l = levels_[i];
      std::uniform_int_distribution<std::size_t> d(0, l.orbit.size() - 1);
      g = l.trans[static_cast<std::size_t>(l.slot[l.orbit[d(rng)]])] * g;
    }
    return g;
  }

  // Calls f(g) for every group element g.
  template <class F>
  void for_each_element(F&& f) const {
    if (levels_.empty()) {
      f(Permutation(degree_));
      return;
    }
    enumerate(levels_.size() - 1, Permutation(degree_), f);
  }

  std::vector<std::vector<Point>> orbits() const { return orbits_of(gens_, degree_); }

  static std::vector<std::vector<Point>> orbits_of(const std::vector<Permutation>& gens,
                                                   std::size_t degree) {
    std::vector<int> label(degree, -1);
    std::vector<std::vector<Point>> out;
    for (std::size_t s = 0; s < degree; ++s) {
      if (label[s] >= 0) continue;
      std::vector<Point> orb{static_cast<Point>(s)};
      label[s] = static_cast<int>(out.size());
      for (std::size_t k = 0; k < orb.size(); ++k) {
        for (const auto& g : gens) {
          Point y = g(orb[k]);
          if (label[y] < 0) {
            label[y] = static_cast<int>(out.size());
            orb.push_back(y);
          }
        }
      }
      std::sort(orb.begin(), orb.end());
      out.push_back(std::move(orb));
    }
    return out;
  }

  bool is_transitive() const { return orbits().size() == 1; }

  // Successively fixes points 0, 1, ... and checks that each stabilizer is
  // transitive on the points not yet fixed.
  bool is_k_transitive(std::size_t k) const {
    PermGroup cur = *this;
    for (std::size_t step = 0; step < k; ++step) {
      auto orbs = orbits_of(cur.gens_, degree_);
      for (const auto& o : orbs) {
        if (std::find(o.begin(), o.end(), static_cast<Point>(step)) != o.end() &&
            o.size() != degree_ - step) {
          return false;
        }
      }
      if (step + 1 < k) cur = cur.point_stabilizer(static_cast<Point>(step));
    }
    return true;
  }

  // Stabilizer of a point, returned as a group.
  PermGroup point_stabilizer(Point x) const { return stabilizer(x, gens_); }

 private:
  struct Level {
    Point base = 0;
    std::vector<Permutation> gens;
    std::vector<Point> orbit;
    std::vector<int> slot;  // point -> index into trans, or -1
    std::vector<Permutation> trans;
    std::vector<Permutation> trans_inv;
  };

  static PermGroup stabilizer(Point x, const std::vector<Permutation>& gens) {
    PermGroup g;
    g.gens_ = gens;
    g.degree_ = gens.front().degree();
    g.build({x});
    std::vector<Permutation> stab;
    if (g.levels_.size() > 1) stab = g.levels_[1].gens;
    if (stab.empty()) stab.push_back(Permutation(g.degree_));
    return PermGroup(std::move(stab));
  }

  template <class F>
  void enumerate(std::size_t level, const Permutation& prefix, F& f) const {
    const Level& l = levels_[level];
    for (Point beta : l.orbit) {
      Permutation g = prefix * l.trans[static_cast<std::size_t>(l.slot[beta])];
      if (level == 0) {
        f(g);
      } else {
        enumerate(level - 1, g, f);
      }
    }
  }

  void compute_orbit(Level& l) const {
    l.orbit.assign(1, l.base);
    l.slot.assign(degree_, -1);
    l.trans.assign(1, Permutation(degree_));
    l.trans_inv.assign(1, Permutation(degree_));
    l.slot[l.base] = 0;
    for (std::size_t k = 0; k < l.orbit.size(); ++k) {
      Point b = l.orbit[k];
      const Permutation u = l.trans[static_cast<std::size_t>(l.slot[b])];
      for (const auto& s : l.gens) {
        Point c = s(b);
        if (l.slot[c] >= 0) continue;
        l.slot[c] = static_cast<int>(l.trans.size());
        Permutation v = u * s;
        l.trans_inv.push_back(v.inverse());
        l.trans.push_back(std::move(v));
        l.orbit.push_back(c);
      }
    }
  }

  static std::optional<Point> first_moved(const Permutation& p) {
    for (std::size_t i = 0; i < p.degree(); ++i) {
      if (p(static_cast<Point>(i)) != i) return static_cast<Point>(i);
    }
    return std::nullopt;
  }

  void build(const std::vector<Point>& prefix = {}) {
    levels_.clear();
    for (Point b : prefix) {
      Level l;
      l.base = b;
      levels_.push_back(std::move(l));
    }
    for (const auto& g : gens_) {
      if (g.is_identity()) continue;
      bool fixes_all = true;
      for (const auto& l : levels_) {
        if (g(l.base) != l.base) {
          fixes_all = false;
          break;
        }
      }
      if (fixes_all) {
        Level l;
        l.base = *first_moved(g);
        levels_.push_back(std::move(l));
      }
    }
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      for (const auto& g : gens_) {
        if (g.is_identity()) continue;
        bool fixes = true;
        for (std::size_t j = 0; j < i; ++j) {
          if (g(levels_[j].base) != levels_[j].base) {
            fixes = false;
            break;
          }
        }
        if (fixes) levels_[i].gens.push_back(g);
      }
      compute_orbit(levels_[i]);
    }

    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
    while (i >= 0) {
      bool restarted = false;
      Level& l = levels_[static_cast<std::size_t>(i)];
      for (std::size_t bi = 0; !restarted && bi < l.orbit.size(); ++bi) {
        Point beta = l.orbit[bi];
        for (std::size_t si = 0; si < l.gens.size(); ++si) {
          const Permutation& s = l.gens[si];
          const Permutation& u = l.trans[static_cast<std::size_t>(l.slot[beta])];
          const Permutation& w_inv = l.trans_inv[static_cast<std::size_t>(l.slot[s(beta)])];
          Permutation schreier = u * s * w_inv;
          if (schreier.is_identity()) continue;
          auto [h, j] = strip(std::move(schreier), static_cast<std::size_t>(i) + 1);
          if (j < levels_.size() || !h.is_identity()) {
            if (j == levels_.size()) {
              Level nl;
              nl.base = *first_moved(h);
              levels_.push_back(std::move(nl));
            }
            for (std::size_t lv = static_cast<std::size_t>(i) + 1; lv <= j; ++lv) {
              levels_[lv].gens.push_back(h);
              compute_orbit(levels_[lv]);
            }
            i = static_cast<std::ptrdiff_t>(j);
            restarted = true;
            break;
          }
        }
      }
      if (!restarted) --i;
    }
  }

  std::size_t degree_ = 0;
  std::vector<Permutation> gens_;
  std::vector<Level> levels_;
};

// Set of cycle types of a group. Exact (full enumeration) when the order is
// at most `enumeration_bound`, otherwise sampled from random elements.
struct CycleTypeSet {
  std::set<CycleType> types;
  bool certified = true;

  bool contains(const CycleType& c) const { return types.count(c) > 0; }
};

inline CycleTypeSet all_cycle_types(const PermGroup& g,
                                    unsigned long enumeration_bound = 20000000ul,
                                    std::size_t samples = 200'000, std::uint64_t seed = 0) {
  CycleTypeSet out;
  const std::size_t n = g.degree();
  if (g.order() <= enumeration_bound) {
    // Key: counts of each cycle length. Deduplicate on the raw key first.
    std::set<std::vector<std::uint8_t>> keys;
    std::vector<std::uint8_t> key(n + 1);
    std::vector<std::uint8_t> seen(n);
    g.for_each_element([&](const Permutation& p) {
      std::fill(key.begin(), key.end(), 0);
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t i = 0; i < n; ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (Point j = static_cast<Point>(i); !seen[j]; j = p(j)) {
          seen[j] = 1;
          ++len;
        }
        ++key[len];
      }
      keys.insert(key);
    });
    for (const auto& k : keys) {
      std::vector<std::size_t> lens;
      for (std::size_t len = 1; len <= n; ++len) lens.insert(lens.end(), k[len], len);
      out.types.insert(CycleType::from_lengths(std::move(lens)));
    }
    return out;
  }
  out.certified = false;
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) out.types.insert(cycle_type(g.random_element(rng)));
  return out;
}

// Finds g in G with g^-1 a_k g = b_k for every k, by backtracking over base
// images. Images are pruned by cycle lengths under a_0 and by consistency
// along the cycles of every a_k through earlier base points.
inline std::optional<Permutation> transporter(const PermGroup& g,
                                              const std::vector<Permutation>& a,
                                              const std::vector<Permutation>& b) {
  if (a.size() != b.size() || a.empty()) throw GroupError("transporter needs tuples of equal length");
  const std::size_t n = g.degree();
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].degree() != n || b[k].degree() != n) throw GroupError("degree mismatch in transporter");
    if (cycle_type(a[k]) != cycle_type(b[k])) return std::nullopt;
  }
  auto cycle_len = [n](const Permutation& p) {
    std::vector<std::size_t> len(n, 1);
    for (const auto& c : p.cycles()) {
      for (Point x : c) len[x] = c.size();
    }
    return len;
  };
  const auto la = cycle_len(a[0]);
  const auto lb = cycle_len(b[0]);

  // Base running along the cycles of a_0, so base points in one cycle
  // constrain each other early.
  std::vector<Point> order;
  {
    std::vector<bool> seen(n, false);
    for (const auto& c : a[0].cycles()) {
      for (Point x : c) {
        order.push_back(x);
        seen[x] = true;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!seen[i]) order.push_back(static_cast<Point>(i));
    }
  }
  struct Lvl {
    Point base;
    std::vector<Point> orbit;
    std::vector<Permutation> trans;  // trans[k] maps base to orbit[k]
  };
  std::vector<Lvl> chain;
  {
    std::vector<Permutation> cur;
    for (const auto& s : g.strong_generators()) {
      if (!s.is_identity()) cur.push_back(s);
    }
    for (Point x : order) {
      if (cur.empty()) break;
      std::vector<std::optional<Permutation>> tr(n);
      tr[x] = Permutation(n);
      std::vector<Point> orb{x};
      for (std::size_t k = 0; k < orb.size(); ++k) {
        for (const auto& s : cur) {
          Point y = s(orb[k]);
          if (!tr[y]) {
            tr[y] = *tr[orb[k]] * s;
            orb.push_back(y);
          }
        }
      }
      if (orb.size() > 1) {
        Lvl l{x, orb, {}};
        for (Point y : orb) l.trans.push_back(*tr[y]);
        chain.push_back(std::move(l));
      }
      PermGroup stab = PermGroup(cur).point_stabilizer(x);
      cur.clear();
      for (const auto& s : stab.strong_generators()) {
        if (!s.is_identity()) cur.push_back(s);
      }
    }
  }

  // For base point i: an earlier base point l, a tuple position k and a power
  // j with base_i = base_l^(a_k^j).
  struct Link {
    int level = -1;
    std::size_t pos = 0;
    std::size_t power = 0;
  };
  std::vector<Link> link(chain.size());
  for (std::size_t i = 0; i < chain.size(); ++i) {
    for (std::size_t l = 0; l < i && link[i].level < 0; ++l) {
      for (std::size_t k = 0; k < a.size() && link[i].level < 0; ++k) {
        Point x = chain[l].base;
        for (std::size_t j = 1; j < n; ++j) {
          x = a[k](x);
          if (x == chain[l].base) break;
          if (x == chain[i].base) {
            link[i] = {static_cast<int>(l), k, j};
            break;
          }
        }
      }
    }
  }

  std::vector<Point> images(chain.size());
  std::optional<Permutation> found;
  auto all_match = [&](const Permutation& w) {
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (a[k].conjugate(w) != b[k]) return false;
    }
    return true;
  };
  std::function<void(std::size_t, const Permutation&)> search =
      [&](std::size_t i, const Permutation& w) {
        if (found) return;
        if (i == chain.size()) {
          if (all_match(w)) found = w;
          return;
        }
        const Lvl& l = chain[i];
        for (std::size_t k = 0; k < l.orbit.size() && !found; ++k) {
          Point gamma = w(l.orbit[k]);
          if (lb[gamma] != la[l.base]) continue;
          if (link[i].level >= 0) {
            Point y = images[static_cast<std::size_t>(link[i].level)];
            for (std::size_t j = 0; j < link[i].power; ++j) y = b[link[i].pos](y);
            if (y != gamma) continue;
          }
          images[i] = gamma;
          search(i + 1, l.trans[k] * w);
        }
      };
  search(0, Permutation(n));
  return found;
}

// Finds g in G with g^-1 a g = b.
inline std::optional<Permutation> transporter(const PermGroup& g, const Permutation& a,
                                              const Permutation& b) {
  return transporter(g, std::vector<Permutation>{a}, std::vector<Permutation>{b});
}

// Action of G on the right cosets H g, enumerated breadth-first from the
// trivial coset. Returns the images of G's generators, one per generator.
inline std::vector<Permutation> coset_action(const PermGroup& g, const PermGroup& h,
                                             std::size_t max_index = 100'000) {
  for (const auto& s : h.generators()) {
    if (!g.contains(s)) throw GroupError("coset action: H is not a subgroup of G");
  }
  mpz_class idx = g.order() / h.order();
  if (idx > static_cast<unsigned long>(max_index)) {
    throw GroupError("coset action: index exceeds bound");
  }
  std::vector<Permutation> reps{Permutation(g.degree())};
  std::vector<std::vector<Point>> images(g.generators().size());
  auto find_coset = [&](const Permutation& x) -> std::optional<std::size_t> {
    for (std::size_t k = 0; k < reps.size(); ++k) {
      if (h.contains(x * reps[k].inverse())) return k;
    }
    return std::nullopt;
  };
  for (std::size_t k = 0; k < reps.size(); ++k) {
    for (std::size_t gi = 0; gi < g.generators().size(); ++gi) {
      Permutation c = reps[k] * g.generators()[gi];
      auto at = find_coset(c);
      if (!at) {
        reps.push_back(c);
        at = reps.size() - 1;
      }
      images[gi].push_back(static_cast<Point>(*at));
    }
  }
  std::vector<Permutation> out;
  for (auto& im : images) out.emplace_back(std::move(im));
  return out;
}

}  // namespace hurwitz
