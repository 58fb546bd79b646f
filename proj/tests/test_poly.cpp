#include <gtest/gtest.h>

#include <random>

#include "hurwitz/disc_checks.hpp"
#include "hurwitz/numfield.hpp"
#include "hurwitz/ramification.hpp"
#include "hurwitz/real_roots.hpp"

using namespace hurwitz;

namespace {

QPoly Q(const char* s, const char* var = "x") { return parse_qpoly(s, var); }

// Oracle: determinant of the Sylvester matrix by fraction-free elimination.
mpz_class sylvester_resultant(const ZCoeffs& f, const ZCoeffs& g) {
  const int n = static_cast<int>(f.size()) - 1, m = static_cast<int>(g.size()) - 1;
  const int N = n + m;
  if (N == 0) return 1;
  std::vector<std::vector<mpz_class>> a(N, std::vector<mpz_class>(N, 0));
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k <= n; ++k) a[i][i + k] = f[n - k];
  }
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k <= m; ++k) a[m + i][i + k] = g[m - k];
  }
  int sign = 1;
  mpz_class prev = 1;
  for (int k = 0; k < N - 1; ++k) {
    if (a[k][k] == 0) {
      int r = k + 1;
      while (r < N && a[r][k] == 0) ++r;
      if (r == N) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (int i = k + 1; i < N; ++i) {
      for (int j = k + 1; j < N; ++j) {
        mpz_class v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  return sign * a[N - 1][N - 1];
}

ZCoeffs random_z(std::mt19937_64& rng, int deg, long bound) {
  std::uniform_int_distribution<long> d(-bound, bound);
  ZCoeffs c(static_cast<std::size_t>(deg + 1));
  for (auto& x : c) x = d(rng);
  while (c.back() == 0) c.back() = d(rng);
  return c;
}

QPoly random_q(std::mt19937_64& rng, int deg) {
  std::uniform_int_distribution<long> num(-20, 20), den(1, 5);
  std::vector<mpq_class> c;
  for (int i = 0; i <= deg; ++i) c.emplace_back(num(rng), den(rng));
  for (auto& x : c) x.canonicalize();
  if (c.back() == 0) c.back() = 1;
  return QPoly(c);
}

}  // namespace

TEST(Parse, ExpressionsAndNestedFractions) {
  EXPECT_EQ(Q("(x+1)^2"), Q("x^2+2*x+1"));
  EXPECT_EQ(Q("2x(x-1)"), Q("2*x^2-2*x"));
  EXPECT_EQ(Q("x/(2/3)"), Q("3/2*x"));
  EXPECT_EQ(parse_rational("-(1/2)/(3/4)"), mpq_class(-2, 3));
  EXPECT_EQ(parse_qpoly("a*x+1", "x", {{"a", mpq_class(5)}}), Q("5x+1"));
  EXPECT_THROW(Q("x+"), ParseError);
  EXPECT_THROW(Q("y+1"), ParseError);
  EXPECT_EQ(to_string(Q("x^2-1/2")), "x^2 - 1/2");
}

TEST(UniPoly, RingAxiomsOnRandomTriples) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    QPoly a = random_q(rng, 4), b = random_q(rng, 3), c = random_q(rng, 5);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    auto [q, r] = (a * c + b).divmod(c);
    EXPECT_EQ(q * c + r, a * c + b);
    EXPECT_LT(r.degree(), c.degree());
  }
}

TEST(UniPoly, GcdAndSquarefree) {
  QPoly f = Q("(x-1)^3*(x+2)^2*(x^2+1)");
  EXPECT_EQ(poly_gcd(f, f.derivative()), Q("(x-1)^2*(x+2)"));
  auto sf = squarefree_decomposition(f);
  ASSERT_EQ(sf.size(), 3u);
  EXPECT_EQ(sf[0].first, Q("x^2+1"));
  EXPECT_EQ(sf[1].first, Q("x+2"));
  EXPECT_EQ(sf[1].second, 2);
  EXPECT_EQ(sf[2].first, Q("x-1"));
  EXPECT_EQ(sf[2].second, 3);
  EXPECT_EQ(squarefree_part(f), Q("(x-1)*(x+2)*(x^2+1)"));
}

TEST(Resultant, SmallDiscriminants) {
  EXPECT_EQ(disc_x(parse_bipoly("x^2 - t")), Q("4t", "t"));
  EXPECT_EQ(disc_x(parse_bipoly("x^2 + x + t")), Q("1 - 4t", "t"));
  EXPECT_EQ(discriminant(Q("x^3-3x+1")), 81);
  EXPECT_EQ(discriminant(Q("x^2+1")), -4);
  EXPECT_EQ(discriminant(Q("2x^2+3x+1/2")), 5);
}

TEST(Resultant, CrtAgreesWithSylvesterOracle) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> deg(1, 12);
  for (int i = 0; i < 100; ++i) {
    ZCoeffs f = random_z(rng, deg(rng), 1000), g = random_z(rng, deg(rng), 1000);
    EXPECT_EQ(resultant(f, g), sylvester_resultant(f, g)) << "case " << i;
  }
}

TEST(Resultant, MultiplicativeInSecondArgument) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 30; ++i) {
    QPoly f = random_q(rng, 3), g = random_q(rng, 2), h = random_q(rng, 4);
    EXPECT_EQ(resultant(f, g * h), resultant(f, g) * resultant(f, h));
  }
}

TEST(Resultant, BivariateMatchesSpecializations) {
  BiPoly f = parse_bipoly("x^4 - 3*t*x^2 + (t^2-1)*x + 5*t");
  QPoly d = disc_x(f);
  for (int t0 = -4; t0 <= 4; ++t0) {
    EXPECT_EQ(d.eval(mpq_class(t0)), discriminant(f.at(mpq_class(t0)))) << t0;
  }
}

TEST(Sturm, CountsAndIsolation) {
  EXPECT_EQ(sturm_count(Q("x^3-2x")), 3);
  EXPECT_EQ(sturm_count(Q("x^2+1")), 0);
  EXPECT_EQ(sturm_count(Q("x^3-2x"), mpq_class(0), mpq_class(2)), 1);
  EXPECT_EQ(real_root_count(Q("(x-1)^2*(x^2+1)")), 2);
  auto iv = real_root_isolate(Q("x^2-2"));
  ASSERT_EQ(iv.size(), 2u);
  auto r = refine(Q("x^2-2"), iv[1], mpq_class(1, 1000000));
  EXPECT_NEAR(r.approx(), 1.41421356, 1e-6);
  EXPECT_NEAR(iv[0].approx() + r.approx(), 0.0, 2.0);
}

TEST(Sturm, AgreesWithIsolationCount) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 40; ++i) {
    QPoly f = random_q(rng, 1 + i % 9);
    EXPECT_EQ(static_cast<int>(real_root_isolate(f).size()), sturm_count(squarefree_part(f)));
  }
}

TEST(Sturm, EndpointRootNearKnownValue) {
  QPoly e = Q("t^2 + 1249*t - 20511149/1100", "t");
  auto iv = real_root_isolate(e);
  ASSERT_EQ(iv.size(), 2u);
  auto r = refine_relative(e, iv[1], mpq_class(1, 1000000000000));
  EXPECT_NEAR(r.approx(), 14.7548389, 1e-6);
}

TEST(ModP, Factorization) {
  ModPoly f;
  ASSERT_TRUE(modp::reduce(Q("x^2+1"), 5, f));
  auto a = factor_mod_p(f);
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a[0].degree, 1);
  ASSERT_TRUE(modp::reduce(Q("x^2+1"), 7, f));
  auto b = factor_mod_p(f);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0].degree, 2);
  ASSERT_TRUE(modp::reduce(Q("(x-1)^3*(x^2+x+1)"), 5, f));
  auto c = factor_mod_p(f);
  int total = 0;
  for (auto m : c) total += m.degree * m.multiplicity;
  EXPECT_EQ(total, 5);
  ASSERT_TRUE(modp::reduce(Q("x^10 + 2*x^5 + 1"), 5, f));
  auto d = factor_mod_p(f);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].degree, 1);
  EXPECT_EQ(d[0].multiplicity, 10);
}

TEST(ModP, DegreesInvariantUnderTranslation) {
  std::mt19937_64 rng(9);
  const u64 p = 10007;
  for (int i = 0; i < 25; ++i) {
    QPoly g = random_q(rng, 2 + i % 10);
    ModPoly f;
    if (!modp::reduce(g, p, f)) continue;
    auto base = factor_mod_p(f);
    u64 c = 1 + static_cast<u64>(i) * 37;
    ModPoly shifted;
    ASSERT_TRUE(modp::reduce(g.compose(QPoly({mpq_class(static_cast<long>(c)), mpq_class(1)})), p, shifted));
    auto moved = factor_mod_p(shifted);
    auto key = [](std::vector<ModFactor> v) {
      std::vector<std::pair<int, int>> k;
      for (auto m : v) k.emplace_back(m.degree, m.multiplicity);
      std::sort(k.begin(), k.end());
      return k;
    };
    EXPECT_EQ(key(base), key(moved));
  }
}

TEST(NumberField, ArithmeticAndZeroDivisors) {
  NumberField k(Q("x^2-2"));
  NumElem u = k.generator();
  EXPECT_TRUE(is_zero(u * u - NumElem(2)));
  NumElem inv = NumElem(1) / (u + NumElem(1));
  EXPECT_TRUE(is_zero((u + NumElem(1)) * inv - NumElem(1)));
  NumberField split(Q("(x-1)*(x+1)"));
  NumElem w = split.generator();
  EXPECT_THROW((void)(NumElem(1) / (w - NumElem(1))), ZeroDivisor);
}

TEST(Patterns, SumToDegreeIncludingInfinity) {
  BiPoly f = BiPoly::model(Q("(x^2-1)^3*x"), Q("(x-3)^2"));
  for (int t0 = -3; t0 <= 3; ++t0) {
    EXPECT_EQ(multiplicity_pattern(f, mpq_class(t0)).type.degree(), 7u);
  }
  EXPECT_EQ(multiplicity_pattern(f, mpq_class(0)).type.to_string(), "3^2.1");
  EXPECT_EQ(multiplicity_pattern_at_infinity(f).type.to_string(), "5.2");
  EXPECT_EQ(multiplicity_pattern(f, mpq_class(17, 5)).type.to_string(), "1^7");
}

TEST(Patterns, QuadraticPointSharedByConjugates) {
  // x^2 - t*(...) ramifies over t^2 - 2 = 0 when composed accordingly
  BiPoly f = parse_bipoly("(x^2 - 2)^2 - (t^2 - 2)*(x + 5)");
  auto parts = multiplicity_patterns(f, Q("t^2-2", "t"));
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_EQ(parts[0].second.type.to_string(), "2^2");
  EXPECT_EQ(multiplicity_pattern(f, mpq_class(0), mpq_class(-2)).type.to_string(), "2^2");
}

TEST(DiscChecks, SquareAndCofactor) {
  EXPECT_TRUE(disc_square_test(Q("x^3-3x+1")));
  EXPECT_FALSE(disc_square_test(Q("x^2+1")));
  EXPECT_THROW(disc_square_test(Q("(x-1)^2")), PolyError);
  auto r = disc_cofactor_check(Q("x^2-5"), 5);
  EXPECT_TRUE(r.square);
  EXPECT_EQ(r.cofactor_root, 2);
  EXPECT_THROW(disc_cofactor_check(Q("x^2-5"), 7), PolyError);
}
