#include <gtest/gtest.h>

#include <cmath>

#include "coxinv/building.hpp"
#include "coxinv/error.hpp"
#include "oracles/frozen.hpp"

using namespace coxinv;

TEST(Thickness, Validation) {
  const auto M = systems::triangle(3, 3, 3);
  EXPECT_NO_THROW(ThicknessVector::uniform(M, 2).validate(M));
  try {
    ThicknessVector{{2, 2, 3}}.validate(M);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ThicknessClassError);
  }
  try {
    ThicknessVector{{0, 0, 0}}.validate(M);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadEntry);
  }
  const auto P = systems::right_angled_polygon(5);
  EXPECT_NO_THROW((ThicknessVector{{2, 3, 4, 5, 6}}.validate(P)));
  EXPECT_TRUE((ThicknessVector{{2, 1, 2, 2, 2}}.thin()));
}

TEST(SphereCardinality, ProductOverReducedWord) {
  const RegularBuildingSpec spec(systems::dihedral(3), ThicknessVector::uniform(systems::dihedral(3), 2));
  const std::vector<int> sts{0, 1, 0};
  EXPECT_EQ(sphere_cardinality(spec, sts), 8);
  const auto P = systems::right_angled_polygon(5);
  const RegularBuildingSpec mixed(P, ThicknessVector{{2, 3, 4, 5, 6}});
  const std::vector<int> w{0, 2, 0};
  EXPECT_EQ(sphere_cardinality(mixed, w), 2 * 4 * 2);
}

TEST(LpNorm, InfiniteDihedralTree) {
  const auto M = systems::infinite_dihedral();
  const RegularBuildingSpec spec(M, ThicknessVector::uniform(M, 2));
  const auto n = lp_pullback_norm(spec, Rational(2), 30);
  EXPECT_EQ(n.verdict, Convergence::Converges);
  ASSERT_EQ(n.exact_partial_sums.size(), 31u);
  EXPECT_EQ(n.exact_partial_sums[0], 1);
  EXPECT_EQ(n.exact_partial_sums[1], 2);
  EXPECT_EQ(n.exact_partial_sums[2], Rational(5, 2));
  // 1 + 2 Σ 2^-k = 3
  EXPECT_NEAR(n.partial_sums.back(), 3.0, 1e-8);
  for (std::size_t k = 1; k < n.partial_sums.size(); ++k) EXPECT_LT(n.partial_sums[k - 1], n.partial_sums[k]);
}

TEST(LpNorm, PentagonVerdictsAroundThreshold) {
  const auto M = systems::right_angled_polygon(5);
  const RegularBuildingSpec spec(M, ThicknessVector::uniform(M, 2));
  EXPECT_EQ(lp_pullback_norm(spec, Rational(2), 8).verdict, Convergence::Diverges);
  const auto conv = lp_pullback_norm(spec, Rational(5, 2), 8);
  EXPECT_EQ(conv.verdict, Convergence::Converges);
  EXPECT_TRUE(conv.exact_partial_sums.empty());
  ASSERT_EQ(conv.partial_sums.size(), 9u);
  // length-k term: count_k 2^{-1.5k}
  double expect = 0;
  for (int k = 0; k <= 8; ++k) expect += frozen::kPentagon[k] * std::pow(2.0, -1.5 * k);
  EXPECT_NEAR(conv.partial_sums.back(), expect, 1e-9);
  EXPECT_LT(conv.partial_sum_error.back(), 1e-12);
  try {
    lp_pullback_norm(spec, Rational(1), 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadEntry);
  }
}

TEST(CriticalExponents, Pentagon) {
  const auto M = systems::right_angled_polygon(5);
  const auto c = critical_exponents(RegularBuildingSpec(M, ThicknessVector::uniform(M, 2)));
  const double e = frozen::pentagon_rate_q2();
  EXPECT_NEAR(c.p_homology.value, 1 + e, 1e-6);
  EXPECT_NEAR(c.p_cohomology.value, 1 + 1 / e, 1e-6);
  EXPECT_NEAR(c.p_homology.value, 2.3885, 1e-4);
  EXPECT_NEAR(c.p_cohomology.value, 1.7202, 1e-4);
  EXPECT_TRUE(c.pm_grade);
  EXPECT_FALSE(c.affine);
  EXPECT_FALSE(c.thin);
}

TEST(CriticalExponents, AffineAndFinite) {
  const auto M = systems::triangle(3, 3, 3);
  const auto c = critical_exponents(RegularBuildingSpec(M, ThicknessVector::uniform(M, 2)));
  EXPECT_TRUE(c.affine);
  EXPECT_EQ(c.p_homology.value, 1);
  EXPECT_TRUE(c.p_homology.exact);
  EXPECT_TRUE(c.p_cohomology.infinite);

  const auto A = systems::dihedral(3);
  const auto f = critical_exponents(RegularBuildingSpec(A, ThicknessVector::uniform(A, 3)));
  EXPECT_TRUE(f.finite);
  EXPECT_TRUE(f.p_cohomology.infinite);
}

TEST(CriticalExponents, ThinInfiniteRate) {
  // q = 1 on both generators of D∞: the apartment itself, infinitely many chambers of weight 1
  const auto M = systems::infinite_dihedral();
  const auto c = critical_exponents(RegularBuildingSpec(M, ThicknessVector::uniform(M, 1)));
  EXPECT_TRUE(c.thin);
  EXPECT_TRUE(c.e_q.infinite);
  EXPECT_TRUE(c.p_homology.infinite);
  EXPECT_EQ(c.p_cohomology.value, 1);
}
