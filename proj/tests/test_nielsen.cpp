#include <gtest/gtest.h>

#include <map>
#include <random>

#include "hurwitz/nielsen.hpp"
#include "oracles.hpp"

using namespace hurwitz;
using oracle::small_group;
using oracle::oracle_orbit_sizes;
using oracle::tool_orbit_sizes;
using oracle::oracle_canonical;

namespace {

Permutation P(const char* s, std::size_t n) { return Permutation::parse(s, n); }

ClassTupleSpec spec_of(const CatalogGroup& cg, std::vector<std::string> types) {
  ClassTupleSpec s{cg.spec.name, {}};
  for (const auto& t : types) s.classes.push_back(cg.resolve(t));
  return s;
}

}  // namespace

TEST(Braid, ApplyExamples) {
  Tuple t{P("(1,2)", 3), P("(2,3)", 3), P("(1,2,3)", 3)};
  ASSERT_TRUE(tuple_product(t).is_identity());
  Tuple b = braid_apply(t, 1);
  EXPECT_EQ(b, (Tuple{P("(1,3)", 3), P("(1,2)", 3), P("(1,2,3)", 3)}));
  Tuple c{P("(1,2)", 4), P("(3,4)", 4), P("(1,2)(3,4)", 4)};
  EXPECT_EQ(braid_apply(c, 1), (Tuple{P("(3,4)", 4), P("(1,2)", 4), P("(1,2)(3,4)", 4)}));
  EXPECT_THROW(braid_apply(t, 3), NielsenError);
  EXPECT_THROW(braid_apply(t, 0), NielsenError);
}

TEST(Braid, InverseAndInvariantsOnRandomTuples) {
  auto cg = small_group("A5");
  std::mt19937_64 rng(2);
  for (int k = 0; k < 1000; ++k) {
    Tuple t;
    for (int i = 0; i < 3; ++i) t.push_back(cg.group.random_element(rng));
    t.push_back(tuple_product(t).inverse());
    int i = 1 + static_cast<int>(rng() % 3);
    Tuple b = braid_apply(t, i);
    EXPECT_EQ(braid_apply(b, i, -1), t);
    EXPECT_TRUE(tuple_product(b).is_identity());
    EXPECT_EQ(PermGroup(b).order(), PermGroup(t).order());
    std::multiset<CycleType> ct, cb;
    for (const auto& s : t) ct.insert(cycle_type(s));
    for (const auto& s : b) cb.insert(cycle_type(s));
    EXPECT_EQ(ct, cb);
  }
}

TEST(Genus, Examples) {
  auto ct = [](const char* s) { return CycleType::parse(s); };
  EXPECT_EQ(tuple_genus({ct("2^8.1^15"), ct("2^8.1^15"), ct("3^10.1"), ct("8^2.4^3.2.1")}, 31).genus, 0);
  EXPECT_EQ(tuple_genus({ct("7"), ct("7")}, 7).genus, 0);
  EXPECT_EQ(tuple_genus({ct("2^8.1^6"), ct("2^11"), ct("2^11"), ct("3^6.1^4")}, 22).genus, 0);
  EXPECT_FALSE(tuple_genus({ct("2.1"), ct("2.1")}, 3).realizable);
  EXPECT_THROW(tuple_genus({ct("2.1"), ct("3")}, 3), NielsenError);
  EXPECT_THROW(tuple_genus({ct("2.1")}, 4), NielsenError);
}

TEST(FindTuple, SmallAndPaperClasses) {
  auto s3 = small_group("S3");
  auto t = find_tuple(s3, spec_of(s3, {"2.1", "2.1", "3"}), 0);
  EXPECT_TRUE(tuple_product(t).is_identity());
  EXPECT_TRUE(generates(s3.group, t));
  auto psl33 = make_group("PSL3_3@13");
  auto spec = spec_of(psl33, {"2A", "2A", "2A", "3A", "3A"});
  auto u = find_tuple(psl33, spec, 0);
  EXPECT_TRUE(is_straight(psl33, u, spec));
  EXPECT_THROW(find_tuple(s3, spec_of(s3, {"2.1", "2.1", "2.1"}), 0, 1000), NielsenError);
}

TEST(InnerEquivalence, RandomConjugates) {
  auto cg = make_group("PSL3_3@13");
  auto spec = spec_of(cg, {"2A", "3A", "2A", "3A", "2A"});
  std::mt19937_64 rng(9);
  auto t = find_tuple(cg, spec, 3);
  EXPECT_TRUE(inner_equivalent(cg.group, t, t));
  for (int k = 0; k < 1000; ++k) {
    auto g = cg.group.random_element(rng);
    Tuple c;
    for (const auto& s : t) c.push_back(s.conjugate(g));
    ASSERT_TRUE(inner_equivalent(cg.group, t, c));
  }
  auto b = braid_apply(t, 2);
  // entries 2,3 are swapped classes; position-wise cycle types differ
  EXPECT_FALSE(inner_equivalent(cg.group, t, b));
}

TEST(InnerEquivalence, DistinguishesNormalizerConjugates) {
  // Conjugation by an odd permutation is not inner for A5.
  auto a5 = small_group("A5");
  Tuple t{P("(1,2,3,4,5)", 5), P("(1,5,4,3,2)", 5)};
  Tuple c{t[0].conjugate(P("(1,2)", 5)), t[1].conjugate(P("(1,2)", 5))};
  EXPECT_FALSE(inner_equivalent(a5.group, t, c));
  EXPECT_TRUE(inner_equivalent(PermGroup({P("(1,2)", 5), P("(1,2,3,4,5)", 5)}), t, c));
  // Intransitive tuples use the backtrack transporter.
  Tuple u{P("(1,2)", 5), P("(1,2)", 5)};
  Tuple v{P("(4,5)", 5), P("(4,5)", 5)};
  EXPECT_TRUE(inner_equivalent(a5.group, u, v));
}

TEST(OrbitGraphTest, BraidRelationsAndFullTwist) {
  auto cg = make_group("PSL2_11@11");
  auto spec = spec_of(cg, {"2A", "2A", "3A", "3A"});
  auto og = orbit_closure(cg.group, find_tuple(cg, spec, 4));
  const auto& b = og.actions;
  EXPECT_EQ(b[0] * b[2], b[2] * b[0]);
  EXPECT_EQ(b[0] * b[1] * b[0], b[1] * b[0] * b[1]);
  EXPECT_EQ(b[1] * b[2] * b[1], b[2] * b[1] * b[2]);
  EXPECT_TRUE((b[0] * b[1] * b[2] * b[2] * b[1] * b[0]).is_identity());
  for (std::size_t i = 0; i < og.size(); ++i) EXPECT_EQ(tuple_genus(og.tuples[i]).genus, tuple_genus(og.tuples[0]).genus);
  EXPECT_EQ(straight_count(cg, og, spec), 54u);
}

TEST(OrbitGraphTest, IndependentOfSeed) {
  auto cg = make_group("PSL5_2@31");
  auto spec = spec_of(cg, {"2A", "2A", "3B", "8A"});
  auto og = orbit_closure(cg.group, find_tuple(cg, spec, 1));
  std::mt19937_64 rng(1);
  for (int k = 0; k < 5; ++k) {
    auto other = orbit_closure(cg.group, og.tuples[rng() % og.size()]);
    ASSERT_EQ(other.size(), og.size());
    TupleStore store(cg.group);
    for (const auto& t : og.tuples) store.insert(t);
    for (const auto& t : other.tuples) EXPECT_TRUE(store.find(t).has_value());
  }
}

TEST(OrbitGraphTest, AllEqualClassesStraightEqualsOrbit) {
  auto cg = small_group("S4");
  auto spec = spec_of(cg, std::vector<std::string>(6, "2.1^2"));
  auto og = orbit_closure(cg.group, find_tuple(cg, spec, 2));
  EXPECT_EQ(straight_count(cg, og, spec), og.size());
}

TEST(ReducedGenus, PSL52Family) {
  auto cg = make_group("PSL5_2@31");
  auto spec = spec_of(cg, {"2A", "2A", "3B", "8A"});
  auto og = orbit_closure(cg.group, find_tuple(cg, spec, 1));
  auto rg = reduced_genus_r4(cg, og, spec, true);
  EXPECT_EQ(rg.points, 24u);
  EXPECT_EQ(rg.genus, 0);
  EXPECT_EQ(rg.structures[1].to_string(), "7^2.3^2.2^2");
  auto blocks = braid_cycle_blocks(rg);
  ASSERT_EQ(blocks.size(), 1u);
  EXPECT_EQ(blocks[0].size(), 12u);
  std::vector<std::string> on_blocks;
  for (const auto& b : rg.braids) on_blocks.push_back(cycle_type(block_action(b, blocks[0])).to_string());
  EXPECT_EQ(on_blocks, (std::vector<std::string>{"4^2.3.1", "7.3.2", "2^5.1^2"}));
  EXPECT_THROW(reduced_genus_r4(cg, og, spec_of(cg, {"2A", "3B", "8A"}), true), NielsenError);
}

TEST(ReducedGenus, RegularOrbitOfPrimeLengthHasNoBlocks) {
  auto cyc = P("(1,2,3,4,5,6,7)", 7);
  EXPECT_TRUE(detect_blocks({cyc}, 7).empty());
}

TEST(SubgroupOrbits, AllGeneratorsMatchFullOrbits) {
  auto cg = small_group("S4");
  auto spec = spec_of(cg, std::vector<std::string>(6, "2.1^2"));
  auto so = subgroup_orbits(cg, spec, standard_generators(6), 0, 30);
  std::vector<std::size_t> full;
  TupleStore seen(cg.group);
  for (std::uint64_t s = 0; s < 30; ++s) {
    auto t = find_tuple(cg, spec, s);
    if (seen.find(t)) continue;
    auto og = orbit_closure(cg.group, t);
    for (const auto& x : og.tuples) seen.insert(x);
    full.push_back(og.size());
  }
  std::sort(full.begin(), full.end());
  EXPECT_EQ(so.lengths, full);
}

TEST(SubgroupOrbits, RejectsWordsLeavingStraightSet) {
  auto cg = make_group("PSL2_11@11");
  auto spec = spec_of(cg, {"2A", "2A", "3A", "3A"});
  EXPECT_THROW(subgroup_orbits(cg, spec, {{2}}, 0, 5), NielsenError);
}

TEST(Oracle, OrbitDecompositionsMatchBruteForce) {
  std::mt19937_64 rng(12);
  for (const char* name : {"S3", "S4", "A5"}) {
    auto cg = small_group(name);
    auto types = all_cycle_types(cg.group).types;
    std::vector<CycleType> nontrivial;
    for (const auto& c : types) {
      if (c.index() > 0) nontrivial.push_back(c);
    }
    int tested = 0;
    for (int trial = 0; trial < 60 && tested < 6; ++trial) {
      std::size_t r = 3 + rng() % 2;
      if (std::string(name) == "A5" && r == 4 && trial % 3 != 0) r = 3;
      ClassTupleSpec spec{name, {}};
      for (std::size_t i = 0; i < r; ++i) spec.classes.push_back({nontrivial[rng() % nontrivial.size()], std::nullopt});
      auto oracle = oracle_orbit_sizes(cg, spec);
      if (oracle.empty()) continue;
      ++tested;
      // The oracle counts orbits over all class orderings; restrict the tool
      // to seeds in the given ordering and compare the orbits it meets.
      auto tool = tool_orbit_sizes(cg, spec);
      std::multiset<std::size_t> o(oracle.begin(), oracle.end());
      for (auto s : tool) {
        auto it = o.find(s);
        ASSERT_NE(it, o.end()) << name;
        o.erase(it);
      }
      // every oracle orbit contains a tuple in the given ordering
      EXPECT_TRUE(o.empty()) << name;
    }
    EXPECT_GT(tested, 0) << name;
  }
}
