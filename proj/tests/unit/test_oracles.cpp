#include <gtest/gtest.h>

#include <cmath>

#include "coxinv/coxeter_matrix.hpp"
#include "coxinv/hyperbolic.hpp"
#include "oracles/frozen.hpp"
#include "oracles/oracles.hpp"

// The frozen tables are re-derived here from the independent oracles.

namespace {

oracle::Matrix plain(const coxinv::CoxeterMatrix& M) {
  oracle::Matrix m(M.rank(), std::vector<int>(M.rank()));
  for (int s = 0; s < M.rank(); ++s)
    for (int t = 0; t < M.rank(); ++t) m[s][t] = M.m(s, t);
  return m;
}

frozen::Counts orbit(const coxinv::CoxeterMatrix& M, int radius) {
  auto sizes = oracle::orbit_sphere_sizes(plain(M), radius).sizes;
  sizes.resize(radius + 1, 0);
  return sizes;
}

frozen::Counts head(const frozen::Counts& c, int n) { return frozen::Counts(c.begin(), c.begin() + n + 1); }

}  // namespace

using namespace coxinv;

TEST(Oracles, SphereSizes) {
  EXPECT_EQ(orbit(systems::infinite_dihedral(), 12), frozen::kDihedralInf);
  EXPECT_EQ(orbit(systems::triangle(3, 3, 3), 12), frozen::kTriangle333);
  EXPECT_EQ(orbit(systems::right_angled_polygon(5), 9), head(frozen::kPentagon, 9));
  EXPECT_EQ(orbit(systems::right_angled_polygon(4), 12), frozen::kSquare);
  EXPECT_EQ(orbit(frozen::triangle_237(), 12), frozen::kTriangle237);
  EXPECT_EQ(orbit(frozen::path(), 12), frozen::kPath);
  EXPECT_EQ(orbit(frozen::h3(), 15), frozen::kH3);
  EXPECT_EQ(head(orbit(systems::dihedral(3), 5), 3), frozen::kA2);
}

TEST(Oracles, Vcd) {
  EXPECT_EQ(oracle::vcd(plain(systems::infinite_dihedral())), frozen::kVcdDihedralInf);
  EXPECT_EQ(oracle::vcd(plain(systems::triangle(3, 3, 3))), frozen::kVcdTriangle333);
  EXPECT_EQ(oracle::vcd(plain(systems::right_angled_polygon(5))), frozen::kVcdPentagon);
  EXPECT_EQ(oracle::vcd(plain(systems::right_angled_polygon(4))), frozen::kVcdSquare);
  EXPECT_EQ(oracle::vcd(plain(systems::dihedral(3))), frozen::kVcdA2);
  EXPECT_EQ(oracle::vcd(plain(frozen::path())), frozen::kVcdPath);
}

TEST(Oracles, PentagonRateFromCounts) {
  // consecutive ratios of the sphere sizes approach the largest root of x^2 - 3x + 1
  const auto& c = frozen::kPentagon;
  const double ratio = double(c[12]) / double(c[11]);
  EXPECT_NEAR(std::log(ratio), frozen::pentagon_rate(), 1e-6);
}

TEST(Oracles, HyperbolicityAgrees) {
  for (const auto& M : {systems::right_angled_polygon(5), systems::right_angled_polygon(4), systems::triangle(3, 3, 3),
                        frozen::triangle_237(), frozen::cone_333(), frozen::commuting_dihedrals(), frozen::path(),
                        systems::infinite_dihedral(), systems::triangle(4, 4, 3), systems::triangle(2, 4, 4)})
    EXPECT_EQ(moussong_hyperbolic(M).hyperbolic, oracle::hyperbolic(plain(M))) << M.canonical_text();
}
