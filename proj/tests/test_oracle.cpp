#include <gtest/gtest.h>

#include <random>

#include "dpsolid/oracle.hpp"

using namespace dps;
using namespace dps::oracle;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

GaussianCloud random_cloud(std::mt19937_64& rng, int n, double mass) {
  std::uniform_real_distribution<double> pos(-3, 3), sig(0.3, 1.5);
  GaussianCloud c;
  for (int i = 0; i < n; ++i) c.sites.push_back({Vec3{pos(rng), pos(rng), pos(rng)}, mass, sig(rng)});
  return c;
}

}  // namespace

TEST(Oracle, GaussianPairReproducesNucleusEnergy) {
  for (double x : {0.05, 0.5, 1.0, 2.0, 7.0}) {
    auto r = dp_energy(gaussian_pair(2.0, 1.0, x));
    EXPECT_LT(rel(r.value, nucleus_dp_energy(2.0, 1.0, x)), 1e-10) << x;
    EXPECT_EQ(r.engine, "discrete");
  }
}

TEST(Oracle, FSigmaCheckPasses) {
  for (auto& row : run_check("f-sigma")) EXPECT_TRUE(row.pass) << row.label << " " << row.rel_diff();
}

TEST(Oracle, PointMassCheckPasses) {
  for (auto& row : run_check("appendix2-point-masses")) EXPECT_TRUE(row.pass) << row.label;
}

TEST(Oracle, GaussianSeparationCheckPasses) {
  for (auto& row : run_check("appendix1-gaussian")) EXPECT_TRUE(row.pass) << row.rel_diff();
}

TEST(Oracle, EnergyNonnegativeForRandomClouds) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20; ++t) {
    SuperposedPair p{{random_cloud(rng, 4, 1.0)}, {random_cloud(rng, 2, 2.0)}};
    EXPECT_GE(dp_energy(p).value, 0.0);
  }
}

TEST(Oracle, SymmetricUnderBranchSwap) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 10; ++t) {
    auto a = random_cloud(rng, 3, 1.0), b = random_cloud(rng, 3, 1.0);
    double e1 = dp_energy(SuperposedPair{{a}, {b}}).value;
    double e2 = dp_energy(SuperposedPair{{b}, {a}}).value;
    EXPECT_LT(rel(e1, e2), 1e-12);
  }
}

TEST(Oracle, InvariantUnderCommonTranslation) {
  std::mt19937_64 rng(13);
  auto a = random_cloud(rng, 3, 1.0), b = random_cloud(rng, 3, 1.0);
  SuperposedPair p{{a}, {b}};
  SuperposedPair q{translated(p.state1, {5, -2, 9}), translated(p.state2, {5, -2, 9})};
  EXPECT_LT(rel(dp_energy(p).value, dp_energy(q).value), 1e-10);
}

TEST(Oracle, IdenticalBranchesGiveZero) {
  GaussianLattice L{{0, 0, 0}, 1.0, {3, 3, 3}, 1.0, 0.1, 0.05, 3};
  SuperposedPair p{{L}, {L}};
  EXPECT_NEAR(dp_energy(p).value, 0.0, 1e-20);
}

TEST(Oracle, LatticeJitterIsSeeded) {
  GaussianLattice L{{0, 0, 0}, 1.0, {2, 2, 2}, 1.0, 0.1, 0.1, 42};
  auto a = lattice_sites(L), b = lattice_sites(L);
  ASSERT_EQ(a.size(), 8u);
  for (size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].center, b[i].center);
  L.seed = 43;
  EXPECT_NE(lattice_sites(L)[1].center, a[1].center);
}

TEST(Oracle, DeterministicAcrossRuns) {
  auto p = extended_sphere(0.5, 1000.0, 5e-4);
  QuadratureSpec q;
  q.resolution = 8;
  auto a = dp_energy(p, q), b = dp_energy(p, q);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.levels, b.levels);
}

TEST(Oracle, PotentialGridAgreesWithPairSumForBalls) {
  MassDistribution b{UniformShape{Ball{{0, 0, 0}, 0.5}, 1000.0}};
  SuperposedPair p{b, translated(b, {0, 0, 0.3})};
  QuadratureSpec g;
  g.method = Method::PotentialGrid;
  QuadratureSpec s;
  s.resolution = 16;
  EXPECT_LT(rel(dp_energy(p, s).value, dp_energy(p, g).value), 0.02);
}

TEST(Oracle, InterferenceTermsSumToCombined) {
  std::mt19937_64 rng(14);
  SuperposedPair A{{random_cloud(rng, 2, 1.0)}, {random_cloud(rng, 2, 1.0)}};
  SuperposedPair B{{random_cloud(rng, 2, 1.0)}, {random_cloud(rng, 2, 1.0)}};
  auto r = interference_terms(A, B);
  EXPECT_LT(rel(r.E_AB.value, r.E_BA.value), 1e-12);
  double sum = r.E_A.value + r.E_B.value + r.E_AB.value + r.E_BA.value;
  EXPECT_LT(rel(sum, r.combined.value), 1e-10);
}

TEST(Oracle, Richardson) {
  double v, e;
  richardson({1.0}, v, e);
  EXPECT_EQ(v, 1.0);
  EXPECT_EQ(e, 0.0);
  // second-order sequence E(h) = 1 + h²
  richardson({1.0 + 0.01, 1.0 + 0.04, 1.0 + 0.16}, v, e);
  EXPECT_NEAR(v, 1.0, 1e-12);
  EXPECT_NEAR(e, 0.01, 1e-12);
  richardson({2.0, 1.0}, v, e);
  EXPECT_EQ(v, 3.0);
  // oscillating levels keep the finest value and report the spread
  richardson({1.0, 1.1, 1.05}, v, e);
  EXPECT_EQ(v, 1.0);
  EXPECT_NEAR(e, 0.1, 1e-12);
}

TEST(Oracle, SheetPairFactorLimits) {
  EXPECT_NEAR(sheet_pair_factor(1e4), 1.0, 1e-3);
  EXPECT_LT(sheet_pair_factor(10.0), sheet_pair_factor(100.0));
  EXPECT_LT(sheet_pair_factor(100.0), 1.0);
}

TEST(Oracle, Validation) {
  auto unequal = [] {
    return SuperposedPair{{GaussianCloud{{{Vec3{0, 0, 0}, 1.0, 1.0}}}},
                          {GaussianCloud{{{Vec3{0, 0, 1}, 2.0, 1.0}}}}};
  };
  EXPECT_THROW(unequal(), InvalidInput);
  QuadratureSpec q;
  q.resolution = 3;
  EXPECT_THROW(dp_energy(gaussian_pair(1, 1, 1), q), InvalidInput);
  q = {};
  q.target_rel_err = 0.5;
  EXPECT_THROW(q.validate(), InvalidInput);

  QuadratureSpec grid;
  grid.method = Method::PotentialGrid;
  EXPECT_THROW(dp_energy(displaced_plate(4, 1, 1000, 0.1), grid), DomainError);

  QuadratureSpec field;
  field.method = Method::FieldForm;
  EXPECT_THROW(dp_energy(extended_rod(0.5, 5, 1000, 0.01), field), DomainError);

  EXPECT_THROW(run_check("no-such-check"), InvalidInput);
  GaussianLattice bad{{0, 0, 0}, 1.0, {2, 2, 2}, 1.0, 0.1, 0.5, 1};
  EXPECT_THROW(validate(Component{bad}), InvalidInput);
}

TEST(Oracle, CheckRegistryNames) {
  for (const char* n : {"f-sigma", "appendix4-plate", "appendix4-extended-plate", "appendix4-rod",
                        "appendix4-sphere", "appendix1-gaussian", "appendix1-sphere", "appendix2-point-masses",
                        "appendix5-capacitor", "field-form-plate", "field-form-charged-plates"})
    EXPECT_TRUE(checks().count(n)) << n;
}
