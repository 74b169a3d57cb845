#include <gtest/gtest.h>

#include <sstream>

#include "coxinv/error.hpp"
#include "coxinv/graph_product_building.hpp"
#include "oracles/frozen.hpp"

using namespace coxinv;

namespace {

RegularBuildingSpec pentagon(std::int64_t q) {
  const auto M = systems::right_angled_polygon(5);
  return RegularBuildingSpec(M, ThicknessVector::uniform(M, q));
}

RegularBuildingSpec dihedral(std::int64_t q) {
  const auto M = systems::infinite_dihedral();
  return RegularBuildingSpec(M, ThicknessVector::uniform(M, q));
}

int apartment_chamber_of_length(const GraphProductBuilding& B, int len) {
  for (int id : B.apartment())
    if (B.length(id) == len) return id;
  return -1;
}

}  // namespace

TEST(GraphProduct, ChamberCounts) {
  const auto B = build_graph_product(pentagon(2), 4);
  EXPECT_EQ(B.size(), 2071u);
  const auto D = build_graph_product(dihedral(2), 6);
  EXPECT_EQ(D.size(), 253u);
  const auto thin = build_graph_product(dihedral(1), 3);
  EXPECT_EQ(thin.size(), 7u);
  EXPECT_EQ(thin.apartment().size(), 7u);
  // apartment = Coxeter group ball
  std::vector<std::uint64_t> by_len(5, 0);
  for (int id : B.apartment()) ++by_len[B.length(id)];
  EXPECT_EQ(by_len, frozen::Counts(frozen::kPentagon.begin(), frozen::kPentagon.begin() + 5));
}

TEST(GraphProduct, SphereCountsAreProducts) {
  const auto M = systems::right_angled_polygon(5);
  const RegularBuildingSpec spec(M, ThicknessVector{{2, 3, 2, 3, 2}});
  const auto B = build_graph_product(spec, 3);
  for (int id : B.apartment()) {
    const auto w = B.projection(id);
    EXPECT_EQ(Integer(static_cast<unsigned long>(oracle_sphere_count(B, w))), sphere_cardinality(spec, w));
  }
  try {
    oracle_sphere_count(B, {0, 2, 0, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::RadiusExceeded);
  }
}

TEST(GraphProduct, NormalForms) {
  const auto B = build_graph_product(pentagon(2), 3);
  // s1 and s2 commute: s2 s1 is stored as s1 s2
  NormalForm f = B.multiply(B.multiply({}, 1, 1), 0, 2);
  EXPECT_EQ(f, (NormalForm{{0, 2}, {1, 1}}));
  // exponents add modulo q + 1 and cancel
  EXPECT_EQ(B.multiply(B.multiply({}, 2, 1), 2, 2), NormalForm{});
  EXPECT_EQ(B.multiply(B.multiply({}, 2, 1), 2, 1), (NormalForm{{2, 2}}));
  const int id = B.find(f);
  ASSERT_GE(id, 0);
  EXPECT_EQ(B.projection(id), (std::vector<int>{0, 1}));
  EXPECT_EQ(B.chamber(B.retract(id)), (NormalForm{{0, 1}, {1, 1}}));
  EXPECT_TRUE(B.in_apartment(B.retract(id)));
  EXPECT_EQ(B.fiber({0, 1}).size(), 4u);
  // the {s1, s2}-residue of f is the whole spherical coset through the base
  EXPECT_EQ(B.length(B.residue_representative(id, 0b11)), 0);
  EXPECT_EQ(B.residue_representative(id, 0b01), B.find(NormalForm{{1, 1}}));
}

TEST(GraphProduct, DefinitionAxioms) {
  const auto check = verify_definition(build_graph_product(pentagon(2), 4));
  EXPECT_TRUE(check.panels_ok) << check.first_failure;
  EXPECT_TRUE(check.distance_ok) << check.first_failure;
  EXPECT_GT(check.panels_checked, 0u);
  EXPECT_EQ(check.chambers_checked, 2071u);
}

TEST(GraphProduct, PullbackSpreadsOverFiber) {
  const auto B = build_graph_product(pentagon(2), 4);
  const int c = apartment_chamber_of_length(B, 2);
  ASSERT_GE(c, 0);
  BuildingChain a;
  a.degree = 2;
  add_term(B, a, c, 0, Rational(1));
  const auto pulled = retraction_pullback(B, a);
  ASSERT_EQ(pulled.coefficients.size(), 4u);
  for (const auto& [key, coeff] : pulled.coefficients) {
    EXPECT_EQ(coeff, Rational(1, 4));
    EXPECT_EQ(B.retract(key.chamber), c);
  }
  EXPECT_EQ(retraction_pushforward(B, pulled), a);
}

TEST(GraphProduct, ChainAlgebra) {
  const auto B = build_graph_product(pentagon(2), 4);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto eta = random_chain(B, 2, 5, rng);
    EXPECT_TRUE(boundary(B, boundary(B, eta)).coefficients.empty());
    const auto a = random_chain(B, 2, 5, rng, true);
    EXPECT_EQ(boundary(B, retraction_pullback(B, a)), retraction_pullback(B, boundary(B, a)));
    EXPECT_EQ(retraction_pushforward(B, retraction_pullback(B, a)), a);
  }
}

TEST(GraphProduct, MarginAndErrors) {
  const auto B = build_graph_product(pentagon(2), 4);
  BuildingChain far;
  far.degree = 2;
  add_term(B, far, apartment_chamber_of_length(B, 3), 0, Rational(1));
  try {
    boundary(B, far);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MarginViolation);
  }
  try {
    build_graph_product(RegularBuildingSpec(systems::triangle(3, 3, 3),
                                            ThicknessVector::uniform(systems::triangle(3, 3, 3), 2)),
                        2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotRightAngled);
  }
  EnumerationLimits small;
  small.max_elements = 500;
  try {
    build_graph_product(pentagon(2), 6, small);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ResourceExceeded);
  }
}

TEST(GraphProduct, Jensen) {
  const auto B = build_graph_product(pentagon(2), 4);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const auto eta = random_chain(B, 1, 8, rng);
    for (const auto& p : {Rational(3, 2), Rational(2), Rational(3)}) {
      const auto r = jensen_check(B, eta, p);
      EXPECT_EQ(r.verdict, JensenVerdict::Pass);
      EXPECT_LE(r.lhs, r.rhs * (1 + 1e-12));
    }
  }
  // a chain constant on a fiber meets the bound with equality
  const int c = apartment_chamber_of_length(B, 2);
  BuildingChain a;
  a.degree = 2;
  add_term(B, a, c, 0, Rational(4));
  const auto flat = retraction_pullback(B, a);
  const auto r = jensen_check(B, flat, Rational(2));
  EXPECT_EQ(r.verdict, JensenVerdict::Pass);
  EXPECT_EQ(r.equal_fibers, r.fibers);
  EXPECT_DOUBLE_EQ(r.lhs, r.rhs);
}

TEST(GraphProduct, OracleBattery) {
  OracleOptions opts;
  opts.trials = 100;
  const auto pent = verify_oracle(build_graph_product(pentagon(2), 4), opts);
  EXPECT_TRUE(pent.all_ok());
  EXPECT_EQ(pent.sphere_totals, (std::vector<std::uint64_t>{1, 10, 60, 320, 1680}));
  for (const auto& [p, passes] : pent.jensen_passes) EXPECT_EQ(passes, 100u) << p;
  const auto tree = verify_oracle(build_graph_product(dihedral(2), 6), opts);
  EXPECT_TRUE(tree.all_ok());
}

TEST(GraphProduct, DumpAndParallelAgree) {
  const auto seq = build_graph_product(pentagon(2), 4);
  EnumerationLimits par;
  par.parallel = true;
  par.threads = 4;
  const auto parallel = build_graph_product(pentagon(2), 4, par);
  const auto dump = oracle_dump(seq);
  EXPECT_EQ(dump, oracle_dump(parallel));
  std::istringstream in(dump);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "coxinv-oracle-dump 1");
  std::size_t lines = 0;
  while (std::getline(in, line)) ++lines;
  EXPECT_EQ(lines, 2071u + 1);
}
