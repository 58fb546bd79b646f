#include <gtest/gtest.h>

#include <random>

#include "hurwitz/perm.hpp"

using hurwitz::CycleType;
using hurwitz::Permutation;

namespace {

Permutation P(const char* s, std::size_t n) { return Permutation::parse(s, n); }

Permutation random_perm(std::size_t n, std::mt19937_64& rng) {
  std::vector<hurwitz::Point> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<hurwitz::Point>(i);
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation(img);
}

}  // namespace

TEST(Compose, LeftToRight) {
  EXPECT_EQ(P("(1,2)", 3) * P("(2,3)", 3), P("(1,3,2)", 3));
  EXPECT_EQ(P("(1,2)(3,4)", 4) * P("(1,3)(2,4)", 4), P("(1,4)(2,3)", 4));
  auto p = P("(1,5,2)(3,4)", 6);
  EXPECT_EQ(p * Permutation(6), p);
}

TEST(Compose, DegreeMismatchThrows) {
  EXPECT_THROW(P("(1,2)", 3) * P("(1,2)", 4), hurwitz::PermError);
}

TEST(Parse, RoundTripAndErrors) {
  EXPECT_EQ(P("(1,2)(3,4,5)", 5).to_string(), "(1,2)(3,4,5)");
  EXPECT_EQ(P("()", 4).to_string(), "()");
  EXPECT_EQ(P("(1 3 2)", 3), P("(1,3,2)", 3));
  EXPECT_THROW(P("(1,2", 3), hurwitz::PermError);
  EXPECT_THROW(P("(1,4)", 3), hurwitz::PermError);
  EXPECT_THROW(P("(1,2)(2,3)", 3), hurwitz::PermError);
  EXPECT_THROW(Permutation(std::vector<hurwitz::Point>{0, 0}), hurwitz::PermError);
}

TEST(CycleTypeTest, Basics) {
  EXPECT_EQ(cycle_type(Permutation(5)).to_string(), "1^5");
  EXPECT_EQ(cycle_type(P("(1,2)(3,4)", 6)).to_string(), "2^2.1^2");
  for (const char* s : {"8^2.4^3.2.1", "3^10.1", "2^8.1^15", "7.3.2", "22"}) {
    EXPECT_EQ(CycleType::parse(s).to_string(), s);
  }
  EXPECT_THROW(CycleType::parse("2^"), hurwitz::PermError);
  EXPECT_THROW(CycleType::parse("2..1"), hurwitz::PermError);
  EXPECT_THROW(CycleType::parse(""), hurwitz::PermError);
}

TEST(Index, Definition) {
  EXPECT_EQ(hurwitz::index(Permutation(7)), 0u);
  EXPECT_EQ(CycleType::parse("2^8.1^15").index(), 8u);
  EXPECT_EQ(CycleType::parse("3^10.1").index(), 20u);
  EXPECT_EQ(CycleType::parse("8^2.4^3.2.1").index(), 24u);
}

TEST(Properties, RandomPermutations) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t n = 1 + rng() % 40;
    auto p = random_perm(n, rng);
    auto q = random_perm(n, rng);
    EXPECT_TRUE((p * p.inverse()).is_identity());
    EXPECT_EQ(cycle_type(p.conjugate(q)), cycle_type(p));
    EXPECT_EQ(p.conjugate(q), q.inverse() * p * q);
    // parity(p) = (-1)^index(p), parity computed by counting inversions
    int inv = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) inv += p(static_cast<hurwitz::Point>(i)) > p(static_cast<hurwitz::Point>(j));
    }
    EXPECT_EQ(hurwitz::parity_sign(p), inv % 2 == 0 ? 1 : -1);
    EXPECT_EQ(Permutation::parse(p.to_string(), n), p);
    EXPECT_EQ(CycleType::parse(cycle_type(p).to_string()), cycle_type(p));
    EXPECT_EQ(p.pow(static_cast<long long>(p.order())), Permutation(n));
    EXPECT_EQ(p.pow(-1), p.inverse());
  }
}
