#pragma once

// Brute-force oracles shared by the Nielsen tests and the acceptance run.

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "hurwitz/nielsen.hpp"

namespace oracle {

using namespace hurwitz;

inline CatalogGroup small_group(const std::string& name) {
  CatalogGroup cg;
  if (name == "S3") cg.group = PermGroup({Permutation::parse("(1,2)", 3), Permutation::parse("(1,2,3)", 3)});
  if (name == "S4") cg.group = PermGroup({Permutation::parse("(1,2)", 4), Permutation::parse("(1,2,3,4)", 4)});
  if (name == "A5") cg.group = PermGroup({Permutation::parse("(1,2,3)", 5), Permutation::parse("(1,2,3,4,5)", 5)});
  cg.spec.name = name;
  cg.spec.degree = cg.group.degree();
  return cg;
}

// Oracle: canonical representative of the inner class of a tuple, by brute
// force over all group elements.
inline std::vector<Permutation> oracle_canonical(const std::vector<Permutation>& elements, const Tuple& t) {
  Tuple best;
  for (const auto& g : elements) {
    Tuple c;
    for (const auto& s : t) c.push_back(s.conjugate(g));
    if (best.empty() || c < best) best = c;
  }
  return best;
}

// Oracle: all generating tuples with product 1 in the given cycle types,
// split into orbits of the full braid group (as sorted orbit sizes), each
// orbit counted on inner classes.
inline std::vector<std::size_t> oracle_orbit_sizes(const CatalogGroup& cg, const ClassTupleSpec& spec) {
  std::vector<Permutation> elements;
  cg.group.for_each_element([&](const Permutation& p) { elements.push_back(p); });
  const std::size_t r = spec.classes.size();
  std::vector<std::vector<Permutation>> pools(r);
  for (std::size_t i = 0; i < r; ++i) {
    for (const auto& e : elements) {
      if (cg.matches(e, spec.classes[i])) pools[i].push_back(e);
    }
  }
  std::set<Tuple> classes;
  std::vector<std::size_t> idx(r - 1, 0);
  std::function<void(std::size_t, Tuple&)> rec = [&](std::size_t k, Tuple& t) {
    if (k == r - 1) {
      Permutation last = tuple_product(t).inverse();
      if (!cg.matches(last, spec.classes.back())) return;
      t.push_back(last);
      if (generates(cg.group, t)) classes.insert(oracle_canonical(elements, t));
      t.pop_back();
      return;
    }
    for (const auto& e : pools[k]) {
      t.push_back(e);
      rec(k + 1, t);
      t.pop_back();
    }
  };
  Tuple scratch;
  rec(0, scratch);
  // Full braid orbits need all orderings of the classes; include them.
  std::set<Tuple> all;
  std::vector<Tuple> frontier(classes.begin(), classes.end());
  for (const auto& t : frontier) all.insert(t);
  for (std::size_t q = 0; q < frontier.size(); ++q) {
    for (std::size_t i = 1; i < r; ++i) {
      auto c = oracle_canonical(elements, braid_apply(frontier[q], static_cast<int>(i)));
      if (all.insert(c).second) frontier.push_back(c);
    }
  }
  std::vector<std::size_t> sizes;
  std::set<Tuple> seen;
  for (const auto& t : all) {
    if (seen.count(t)) continue;
    std::vector<Tuple> orb{t};
    seen.insert(t);
    for (std::size_t q = 0; q < orb.size(); ++q) {
      for (std::size_t i = 1; i < r; ++i) {
        for (int sgn : {1, -1}) {
          auto c = oracle_canonical(elements, braid_apply(orb[q], static_cast<int>(i), sgn));
          if (seen.insert(c).second) orb.push_back(c);
        }
      }
    }
    sizes.push_back(orb.size());
  }
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

inline std::vector<std::size_t> tool_orbit_sizes(const CatalogGroup& cg, const ClassTupleSpec& spec) {
  // Seed from every tuple the oracle could find: enumerate generating
  // tuples by brute force but classify with orbit_closure.
  std::vector<Permutation> elements;
  cg.group.for_each_element([&](const Permutation& p) { elements.push_back(p); });
  const std::size_t r = spec.classes.size();
  std::vector<std::size_t> sizes;
  std::vector<TupleStore> stores;
  std::function<void(std::size_t, Tuple&)> rec = [&](std::size_t k, Tuple& t) {
    if (k == r - 1) {
      Permutation last = tuple_product(t).inverse();
      if (!cg.matches(last, spec.classes.back())) return;
      t.push_back(last);
      if (generates(cg.group, t)) {
        bool known = false;
        for (const auto& s : stores) known = known || s.find(t).has_value();
        if (!known) {
          auto og = orbit_closure(cg.group, t);
          sizes.push_back(og.size());
          TupleStore s(cg.group);
          for (const auto& x : og.tuples) s.insert(x);
          stores.push_back(std::move(s));
        }
      }
      t.pop_back();
      return;
    }
    for (const auto& e : elements) {
      if (!cg.matches(e, spec.classes[k])) continue;
      t.push_back(e);
      rec(k + 1, t);
      t.pop_back();
    }
  };
  Tuple scratch;
  rec(0, scratch);
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

}  // namespace oracle
