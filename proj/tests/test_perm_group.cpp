#include <gtest/gtest.h>

#include <random>

#include "hurwitz/perm_group.hpp"

using hurwitz::CycleType;
using hurwitz::Permutation;
using hurwitz::PermGroup;

namespace {

Permutation P(const char* s, std::size_t n) { return Permutation::parse(s, n); }

PermGroup symmetric(std::size_t n) {
  std::vector<hurwitz::Point> cyc(n);
  for (std::size_t i = 0; i < n; ++i) cyc[i] = static_cast<hurwitz::Point>((i + 1) % n);
  return PermGroup({Permutation(cyc), P("(1,2)", n)});
}

PermGroup alternating(std::size_t n) {
  std::vector<Permutation> gens;
  for (std::size_t k = 3; k <= n; ++k) {
    gens.push_back(Permutation::from_cycles(n, {{1, 2, static_cast<int>(k)}}));
  }
  return PermGroup(gens);
}

std::set<std::string> type_strings(const PermGroup& g) {
  std::set<std::string> out;
  for (const auto& c : hurwitz::all_cycle_types(g).types) out.insert(c.to_string());
  return out;
}

}  // namespace

TEST(BuildGroup, SmallOrders) {
  EXPECT_EQ(PermGroup({P("(1,2)", 3), P("(1,2,3)", 3)}).order(), 6);
  EXPECT_EQ(symmetric(8).order(), 40320);
  EXPECT_EQ(alternating(7).order(), 2520);
  EXPECT_EQ(PermGroup({Permutation(5)}).order(), 1);
  EXPECT_THROW(PermGroup(std::vector<Permutation>{}), hurwitz::GroupError);
  EXPECT_THROW(PermGroup({P("(1,2)", 3), P("(1,2)", 4)}), hurwitz::GroupError);
}

TEST(BuildGroup, OrderInvariantUnderGeneratorChanges) {
  auto a = P("(1,2,3,4,5,6,7)", 7);
  auto b = P("(2,3,5)(4,7,6)", 7);  // 7:3 Frobenius group
  PermGroup g1({a, b});
  PermGroup g2({b, a});
  PermGroup g3({a, b, a * b, b * a * a});
  EXPECT_EQ(g1.order(), 21);
  EXPECT_EQ(g2.order(), 21);
  EXPECT_EQ(g3.order(), 21);
}

TEST(BuildGroup, ChainInvariants) {
  auto g = symmetric(9);
  mpz_class prod = 1;
  for (auto s : g.fundamental_orbit_sizes()) prod *= static_cast<unsigned long>(s);
  EXPECT_EQ(prod, g.order());
  for (const auto& s : g.generators()) EXPECT_TRUE(g.contains(s));
}

TEST(Membership, Basics) {
  auto a5 = alternating(5);
  EXPECT_TRUE(a5.contains(Permutation(5)));
  EXPECT_FALSE(a5.contains(P("(1,2)", 5)));
  EXPECT_TRUE(a5.contains(P("(1,2)(3,4)", 5)));
  EXPECT_FALSE(a5.contains(P("(1,2)", 6)));
}

TEST(RandomElement, StaysInGroupAndCoversIt) {
  auto a4 = alternating(4);
  std::mt19937_64 rng(3);
  std::set<Permutation> seen;
  for (int i = 0; i < 2000; ++i) {
    auto x = a4.random_element(rng);
    EXPECT_TRUE(a4.contains(x));
    seen.insert(x);
  }
  EXPECT_EQ(seen.size(), 12u);
}

TEST(Enumeration, VisitsEveryElementOnce) {
  auto s5 = symmetric(5);
  std::set<Permutation> seen;
  std::size_t count = 0;
  s5.for_each_element([&](const Permutation& p) {
    seen.insert(p);
    ++count;
  });
  EXPECT_EQ(count, 120u);
  EXPECT_EQ(seen.size(), 120u);
}

TEST(AllCycleTypes, SmallGroups) {
  EXPECT_EQ(type_strings(symmetric(3)), (std::set<std::string>{"1^3", "2.1", "3"}));
  EXPECT_EQ(type_strings(alternating(4)), (std::set<std::string>{"1^4", "2^2", "3.1"}));
  auto sampled = hurwitz::all_cycle_types(symmetric(5), 10, 5000, 7);
  EXPECT_FALSE(sampled.certified);
  EXPECT_EQ(sampled.types.size(), 7u);
}

TEST(Transitivity, Checks) {
  EXPECT_TRUE(symmetric(6).is_k_transitive(6));
  EXPECT_TRUE(alternating(6).is_k_transitive(4));
  EXPECT_FALSE(alternating(6).is_k_transitive(5));
  EXPECT_FALSE(PermGroup({P("(1,2)(3,4)", 4)}).is_transitive());
}

TEST(Transporter, Examples) {
  auto s4 = symmetric(4);
  auto id = Permutation(4);
  auto g = hurwitz::transporter(s4, id, id);
  ASSERT_TRUE(g);
  EXPECT_TRUE(s4.contains(*g));
  auto a = P("(1,2)", 4), b = P("(3,4)", 4);
  auto h = hurwitz::transporter(s4, a, b);
  ASSERT_TRUE(h);
  EXPECT_EQ(a.conjugate(*h), b);
  EXPECT_FALSE(hurwitz::transporter(s4, P("(1,2,3)", 4), P("(1,2)(3,4)", 4)));
  // (1,2,3,4,5) and its square are not conjugate in A5? They are not: 5A vs 5B.
  auto a5 = alternating(5);
  EXPECT_FALSE(hurwitz::transporter(a5, P("(1,2,3,4,5)", 5), P("(1,3,5,2,4)", 5)));
  EXPECT_TRUE(hurwitz::transporter(a5, P("(1,2,3,4,5)", 5), P("(1,5,4,3,2)", 5)));
}

TEST(Transporter, RandomConjugates) {
  std::mt19937_64 rng(11);
  auto g = alternating(9);
  for (int i = 0; i < 100; ++i) {
    auto a = g.random_element(rng);
    auto c = g.random_element(rng);
    auto b = a.conjugate(c);
    auto t = hurwitz::transporter(g, a, b);
    ASSERT_TRUE(t);
    EXPECT_TRUE(g.contains(*t));
    EXPECT_EQ(a.conjugate(*t), b);
  }
}

TEST(CosetAction, Examples) {
  auto s3 = PermGroup({P("(1,2)", 3), P("(1,2,3)", 3)});
  auto act = hurwitz::coset_action(s3, PermGroup({P("(1,2)", 3)}));
  PermGroup img(act);
  EXPECT_EQ(img.degree(), 3u);
  EXPECT_TRUE(img.is_transitive());
  EXPECT_EQ(img.order(), 6);

  auto s4 = symmetric(4);
  auto act4 = hurwitz::coset_action(s4, PermGroup({P("(1,2,3)", 4), P("(1,2)", 4)}));
  PermGroup img4(act4);
  EXPECT_EQ(img4.degree(), 4u);
  EXPECT_EQ(img4.order(), 24);

  EXPECT_THROW(hurwitz::coset_action(alternating(4), PermGroup({P("(1,2)", 4)})), hurwitz::GroupError);
  EXPECT_THROW(hurwitz::coset_action(symmetric(6), PermGroup({Permutation(6)}), 100), hurwitz::GroupError);
}
