#include <gtest/gtest.h>

#include <cmath>

#include "coxinv/classification.hpp"
#include "coxinv/error.hpp"
#include "coxinv/growth.hpp"
#include "oracles/frozen.hpp"

using namespace coxinv;

namespace {

std::vector<std::uint64_t> series_coefficients(const RationalGrowthSeries& s, int depth) {
  std::vector<std::uint64_t> out;
  for (const auto& part : s.expansion(depth)) {
    Rational sum = 0;
    for (const auto& [m, c] : part.terms()) sum += c;
    EXPECT_EQ(sum.get_den(), 1);
    out.push_back(sum.get_num().get_ui());
  }
  return out;
}

}  // namespace

TEST(GrowthSeries, ExpansionMatchesFrozenCounts) {
  struct Case {
    CoxeterMatrix M;
    frozen::Counts counts;
  };
  const std::vector<Case> cases{
      {systems::infinite_dihedral(), frozen::kDihedralInf},
      {systems::triangle(3, 3, 3), frozen::kTriangle333},
      {systems::right_angled_polygon(5), frozen::kPentagon},
      {systems::right_angled_polygon(4), frozen::kSquare},
      {frozen::triangle_237(), frozen::kTriangle237},
      {frozen::path(), frozen::kPath},
  };
  for (const auto& c : cases) {
    const auto s = rational_growth_series(c.M, false);
    EXPECT_EQ(s.validated_depth, 12);
    EXPECT_EQ(series_coefficients(s, 12), c.counts) << s.to_string();
  }
  auto a2 = series_coefficients(rational_growth_series(systems::dihedral(3), false), 5);
  EXPECT_EQ(a2, (frozen::Counts{1, 2, 2, 1, 0, 0}));
  EXPECT_EQ(series_coefficients(rational_growth_series(frozen::h3(), false), 15), frozen::kH3);
}

TEST(GrowthSeries, ClosedForms) {
  EXPECT_EQ(rational_growth_series(systems::infinite_dihedral(), false).to_string(), "(1 + t) / (1 - t)");
  EXPECT_EQ(rational_growth_series(systems::right_angled_polygon(5), false).to_string(),
            "(1 + 2*t + t^2) / (1 - 3*t + t^2)");
  const auto a2 = rational_growth_series(systems::dihedral(3), false);
  EXPECT_TRUE(a2.finite);
}

TEST(GrowthSeries, PerClassMatchesClassTypes) {
  const auto M = systems::triangle(4, 4, 3);  // classes {a, c} and {b}
  const auto s = rational_growth_series(M, true);
  EXPECT_EQ(s.variables.size(), generator_conjugacy_classes(M).size());
  const auto counts = sphere_counts_for(M, 8);
  const auto parts = s.expansion(8);
  for (int n = 0; n <= 8; ++n) {
    std::size_t terms = 0;
    for (const auto& [type, count] : counts.by_length[n]) {
      EXPECT_EQ(parts[n].coefficient(type), Rational(count)) << "length " << n;
      ++terms;
    }
    EXPECT_EQ(parts[n].terms().size(), terms);
  }
}

TEST(GrowthRate, PentagonBothMethods) {
  const auto M = systems::right_angled_polygon(5);
  const auto series = length_growth_rate(M);
  EXPECT_EQ(series.method, GrowthMethod::SeriesSingularity);
  EXPECT_NEAR(series.value, frozen::pentagon_rate(), 1e-6);
  EXPECT_LT(series.uncertainty, 1e-6);

  GrowthOptions fit_opts;
  fit_opts.method = GrowthMethod::EnumerationFit;
  fit_opts.depth = 20;
  const auto fit = length_growth_rate(M, fit_opts);
  EXPECT_EQ(fit.method, GrowthMethod::EnumerationFit);
  EXPECT_NEAR(fit.value, frozen::pentagon_rate(), 5e-2);
  EXPECT_LE(fit.lower(), frozen::pentagon_rate());
  EXPECT_GE(fit.upper(), frozen::pentagon_rate());
}

TEST(GrowthRate, ConstantThicknessScalesByLog) {
  const auto M = systems::right_angled_polygon(5);
  const auto e2 = growth_rate(M, WeightVector::uniform(M, 2));
  EXPECT_NEAR(e2.value, frozen::pentagon_rate_q2(), 1e-6);
  const auto e3 = growth_rate(M, WeightVector::uniform(M, 3));
  EXPECT_NEAR(e3.value, frozen::pentagon_rate() / std::log(3.0), 1e-6);
  const auto b = rate_comparison_bounds(M, WeightVector::from_generators(M, {2, 2, 3, 3, 3}));
  EXPECT_NEAR(b.lower, frozen::pentagon_rate() / std::log(3.0), 1e-6);
  EXPECT_NEAR(b.upper, frozen::pentagon_rate_q2(), 1e-6);
  const auto mixed = growth_rate(M, WeightVector::from_generators(M, {2, 2, 3, 3, 3}));
  EXPECT_GE(mixed.value, b.lower - 1e-9);
  EXPECT_LE(mixed.value, b.upper + 1e-9);
}

TEST(GrowthRate, FiniteAndAffine) {
  const auto a2 = length_growth_rate(systems::dihedral(3));
  EXPECT_TRUE(a2.exact_zero);
  EXPECT_EQ(a2.value, 0);
  const auto M = systems::triangle(3, 3, 3);
  const auto affine = growth_rate(M, WeightVector::uniform(M, 2));
  EXPECT_TRUE(affine.exact_zero);
  EXPECT_EQ(affine.value, 0);
  const auto fit = enumeration_fit(M, WeightVector::uniform(M, 2), 30);
  EXPECT_LT(std::abs(fit.value), 1e-2);
  EXPECT_LE(fit.lower(), 0);
}

TEST(GrowthRate, DegenerateWeights) {
  const auto M = systems::infinite_dihedral();
  try {
    growth_rate(M, WeightVector::uniform(M, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateWeights);
  }
  // one unit letter in a commuting pair: the heavy letters still bound the length
  const auto P = frozen::path();
  GrowthOptions opts;
  opts.depth = 16;
  const auto est = growth_rate(P, WeightVector::from_generators(P, {2, 1, 2}), opts);
  EXPECT_EQ(est.method, GrowthMethod::EnumerationFit);
}

TEST(GrowthTable, InfiniteDihedralWeightTwo) {
  const auto M = systems::infinite_dihedral();
  const auto table = growth_table(M, WeightVector::uniform(M, 2), 10);
  ASSERT_GE(table.Q.size(), 7u);
  EXPECT_EQ(std::vector<std::uint64_t>(table.Q.begin(), table.Q.begin() + 7),
            (std::vector<std::uint64_t>{1, 3, 5, 9, 11, 15, 17}));
  EXPECT_FALSE(table.degenerate);
}

TEST(GrowthTable, WeightOfWord) {
  const auto M = systems::triangle(2, 3, 4);
  const auto t = WeightVector::from_generators(M, {5, 2, 2});
  const std::vector<int> w{0, 1, 2, 1};
  EXPECT_EQ(weight_of(M, w, t), Rational(5 * 2 * 2 * 2));
  try {
    WeightVector::from_generators(M, {2, 3, 5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ThicknessClassError);
  }
}

TEST(Convergence, Verdicts) {
  GrowthRateEstimate r;
  r.value = 1.0;
  r.uncertainty = 0.1;
  EXPECT_EQ(classify_convergence(r, 1.2), Convergence::Converges);
  EXPECT_EQ(classify_convergence(r, 0.8), Convergence::Diverges);
  EXPECT_EQ(classify_convergence(r, 1.05), Convergence::Indeterminate);
}
