#pragma once

// Block systems of transitive permutation groups (Atkinson's pair fusion).

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "hurwitz/perm.hpp"
#include "hurwitz/perm_group.hpp"

namespace hurwitz {

using BlockSystem = std::vector<std::vector<Point>>;

// Smallest block system in which 0 and x share a block.
inline BlockSystem minimal_block(const std::vector<Permutation>& gens, std::size_t degree,
                                 Point x) {
  std::vector<Point> parent(degree);
  std::iota(parent.begin(), parent.end(), Point{0});
  auto find = [&](Point a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  std::vector<std::pair<Point, Point>> queue{{0, x}};
  parent[find(x)] = find(0);
  for (std::size_t k = 0; k < queue.size(); ++k) {
    auto [a, b] = queue[k];
    for (const auto& g : gens) {
      Point ra = find(g(a)), rb = find(g(b));
      if (ra == rb) continue;
      parent[rb] = ra;
      queue.emplace_back(g(a), g(b));
    }
  }
  std::vector<std::vector<Point>> by_root(degree);
  for (std::size_t i = 0; i < degree; ++i) by_root[find(static_cast<Point>(i))].push_back(static_cast<Point>(i));
  BlockSystem out;
  for (auto& b : by_root) {
    if (!b.empty()) out.push_back(std::move(b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_block_system(const std::vector<Permutation>& gens, const BlockSystem& sys) {
  std::size_t n = 0;
  for (const auto& b : sys) n += b.size();
  std::vector<int> label(n, -1);
  for (std::size_t i = 0; i < sys.size(); ++i) {
    for (Point x : sys[i]) label[x] = static_cast<int>(i);
  }
  for (const auto& g : gens) {
    for (const auto& b : sys) {
      int target = label[g(b.front())];
      for (Point x : b) {
        if (label[g(x)] != target) return false;
      }
    }
  }
  return true;
}

// All minimal nontrivial block systems (those whose blocks contain no smaller
// nontrivial block). Empty for primitive groups.
inline std::vector<BlockSystem> detect_blocks(const std::vector<Permutation>& gens,
                                              std::size_t degree) {
  if (PermGroup::orbits_of(gens, degree).size() != 1) {
    throw GroupError("block detection needs a transitive group");
  }
  std::set<BlockSystem> found;
  for (std::size_t x = 1; x < degree; ++x) {
    auto sys = minimal_block(gens, degree, static_cast<Point>(x));
    if (sys.size() > 1) found.insert(std::move(sys));
  }
  std::vector<BlockSystem> out;
  for (const auto& s : found) {
    const auto& b0 = s.front();  // block containing 0
    bool minimal = true;
    for (const auto& t : found) {
      if (&t == &s) continue;
      const auto& c0 = t.front();
      if (c0.size() < b0.size() && std::includes(b0.begin(), b0.end(), c0.begin(), c0.end())) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(s);
  }
  std::sort(out.begin(), out.end(),
            [](const BlockSystem& a, const BlockSystem& b) { return a.size() > b.size(); });
  return out;
}

inline std::vector<BlockSystem> detect_blocks(const PermGroup& g) {
  return detect_blocks(g.generators(), g.degree());
}

}  // namespace hurwitz
