#include <gtest/gtest.h>

#include <random>

#include "hurwitz/blocks.hpp"
#include "hurwitz/catalog.hpp"

using namespace hurwitz;

namespace {

const CatalogGroup& group(const std::string& name) {
  static std::map<std::string, CatalogGroup> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, make_group(name)).first;
  return it->second;
}

Matrix random_invertible(const ProjectiveSpace& ps, std::mt19937_64& rng) {
  Matrix m = ps.identity();
  auto gens = ps.sl_generators();
  for (int k = 0; k < 20; ++k) m = ps.multiply(m, gens[rng() % gens.size()]);
  return m;
}

}  // namespace

TEST(FiniteFieldTest, Axioms) {
  for (int q : {2, 3, 4, 5, 8, 9, 11}) {
    auto f = FiniteField::make(q);
    for (int a = 0; a < q; ++a) {
      if (a) {
        EXPECT_EQ(f.mul(a, f.inv(a)), 1);
      }
      EXPECT_EQ(f.add(a, f.neg(a)), 0);
      for (int b = 0; b < q; ++b) {
        EXPECT_EQ(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
        EXPECT_EQ(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
        for (int c = 0; c < q; ++c) {
          EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
    EXPECT_EQ(f.pow(f.primitive_element(), q - 1), 1);
  }
  EXPECT_THROW(FiniteField::make(6), FieldError);
  EXPECT_THROW(FiniteField::make(3).inv(0), FieldError);
}

TEST(Catalog, OrdersAndDegrees) {
  const std::map<std::string, std::pair<std::size_t, unsigned long>> expected = {
      {"PSL2_11@11", {11, 660}},       {"PGL2_11@12", {12, 1320}},     {"PGL2_11@22", {22, 1320}},
      {"PSL3_3@13", {13, 5616}},       {"PSL3_4@21", {21, 20160}},     {"PGL3_4@21", {21, 60480}},
      {"PGammaL3_4@21", {21, 120960}}, {"PSL5_2@31", {31, 9999360}},   {"AutPSL5_2@62", {62, 19998720}},
      {"M22@22", {22, 443520}},        {"AutM22@22", {22, 887040}}};
  EXPECT_EQ(catalog_names().size(), expected.size());
  for (const auto& name : catalog_names()) {
    const auto& cg = group(name);
    auto [deg, ord] = expected.at(name);
    EXPECT_EQ(cg.group.degree(), deg) << name;
    EXPECT_EQ(cg.group.order(), ord) << name;
    EXPECT_TRUE(cg.group.is_transitive()) << name;
  }
  // |PSL_5(2)| = q^10 (q^2-1)(q^3-1)(q^4-1)(q^5-1) at q = 2
  EXPECT_EQ(1024ul * 3 * 7 * 15 * 31, 9999360ul);
  EXPECT_THROW(make_group("PSL7_2@127"), CatalogError);
}

TEST(Catalog, TransitivityDegrees) {
  EXPECT_TRUE(group("M22@22").group.is_k_transitive(3));
  EXPECT_FALSE(group("M22@22").group.is_k_transitive(4));
  EXPECT_TRUE(group("PSL5_2@31").group.is_k_transitive(2));
  EXPECT_FALSE(group("PSL5_2@31").group.is_k_transitive(3));
}

TEST(Catalog, MatrixActionIsHomomorphism) {
  std::mt19937_64 rng(5);
  for (auto [q, d] : {std::pair{2, 5}, std::pair{4, 3}, std::pair{3, 3}, std::pair{11, 2}}) {
    ProjectiveSpace ps(q, d);
    for (int k = 0; k < 20; ++k) {
      auto a = random_invertible(ps, rng);
      auto b = random_invertible(ps, rng);
      EXPECT_EQ(ps.matrix_permutation(ps.multiply(a, b)),
                ps.matrix_permutation(a) * ps.matrix_permutation(b));
    }
  }
}

TEST(Catalog, ProjectivePointsNormalizedAndOrdered) {
  ProjectiveSpace ps(4, 3);
  ASSERT_EQ(ps.size(), 21u);
  EXPECT_EQ(ps.point(0), (std::vector<int>{0, 0, 1}));
  EXPECT_EQ(ps.point(20), (std::vector<int>{1, 3, 3}));
  for (std::size_t i = 1; i < ps.size(); ++i) EXPECT_LT(ps.point(i - 1), ps.point(i));
}

TEST(Catalog, FrobeniusNormalizesPSL34) {
  const auto& psl = group("PSL3_4@21").group;
  ProjectiveSpace ps(4, 3);
  auto frob = ps.frobenius_permutation();
  for (const auto& g : psl.generators()) EXPECT_TRUE(psl.contains(g.conjugate(frob)));
  EXPECT_FALSE(psl.contains(frob));
}

TEST(Catalog, NormalSubgroups) {
  const auto& aut = group("AutM22@22");
  ASSERT_TRUE(aut.normal.has_value());
  EXPECT_EQ(aut.group.order() / aut.normal->order(), 2);
  for (const auto& g : group("M22@22").group.generators()) EXPECT_TRUE(aut.group.contains(g));
  const auto& a62 = group("AutPSL5_2@62");
  EXPECT_EQ(a62.group.order() / a62.normal->order(), 2);
}

TEST(Catalog, ClassLabelsResolveAndSample) {
  for (const auto& name : catalog_names()) {
    const auto& cg = group(name);
    for (const auto& c : cg.spec.classes) {
      ClassSampler s(cg, c.selector, 17);
      for (int k = 0; k < 5; ++k) {
        auto x = s.next();
        EXPECT_TRUE(cg.matches(x, c.selector)) << name << " " << c.label;
        EXPECT_EQ(x.order(), c.element_order) << name << " " << c.label;
        EXPECT_TRUE(cg.group.contains(x));
      }
    }
  }
  const auto& psl52 = group("PSL5_2@31");
  EXPECT_EQ(psl52.resolve("8A").type.to_string(), "8^2.4^3.2.1");
  EXPECT_EQ(psl52.resolve("3B").type.to_string(), "3^10.1");
  EXPECT_EQ(group("PGL2_11@22").resolve("2B").type.to_string(), "2^11");
  EXPECT_EQ(group("PSL3_3@13").resolve("3A").type.to_string(), "3^3.1^4");
  EXPECT_EQ(group("AutPSL5_2@62").resolve("2^31 outer").outer, std::optional<bool>(true));
  EXPECT_THROW(psl52.resolve("9Z"), CatalogError);
  EXPECT_THROW(psl52.resolve("2^2"), CatalogError);
}

TEST(Catalog, SelectorsInTableAreDistinct) {
  for (const auto& name : catalog_names()) {
    const auto& cls = group(name).spec.classes;
    for (std::size_t i = 0; i < cls.size(); ++i) {
      for (std::size_t j = i + 1; j < cls.size(); ++j) EXPECT_NE(cls[i].selector, cls[j].selector);
    }
  }
}

TEST(Catalog, CycleTypeSetOfPSL52) {
  auto types = all_cycle_types(group("PSL5_2@31").group);
  EXPECT_TRUE(types.certified);
  EXPECT_EQ(types.types.size(), 18u);
  EXPECT_TRUE(types.contains(CycleType::parse("8^2.4^3.2.1")));
  EXPECT_TRUE(types.contains(CycleType::parse("3^10.1")));
  EXPECT_FALSE(types.contains(CycleType::parse("3^9.1^4")));
}

TEST(Blocks, Examples) {
  auto c4 = detect_blocks({Permutation::parse("(1,2,3,4)", 4)}, 4);
  ASSERT_EQ(c4.size(), 1u);
  EXPECT_EQ(c4[0], (BlockSystem{{0, 2}, {1, 3}}));
  auto s5 = detect_blocks({Permutation::parse("(1,2,3,4,5)", 5), Permutation::parse("(1,2)", 5)}, 5);
  EXPECT_TRUE(s5.empty());
  EXPECT_THROW(detect_blocks({Permutation::parse("(1,2)", 4)}, 4), GroupError);
  EXPECT_TRUE(detect_blocks(group("PSL5_2@31").group).empty());
}

TEST(Blocks, PGL211On22Points) {
  const auto& cg = group("PGL2_11@22");
  auto systems = detect_blocks(cg.group);
  ASSERT_EQ(systems.size(), 1u);
  EXPECT_EQ(systems[0].size(), 2u);
  EXPECT_EQ(systems[0][0].size(), 11u);
  EXPECT_TRUE(is_block_system(cg.group.generators(), systems[0]));
}

TEST(CosetAction, PGL211On22PointsIsImprimitive) {
  const auto& g12 = group("PGL2_11@12");
  const auto& g22 = group("PGL2_11@22");
  EXPECT_EQ(g22.group.order(), g12.group.order());
  EXPECT_FALSE(detect_blocks(g22.group).empty());
}
