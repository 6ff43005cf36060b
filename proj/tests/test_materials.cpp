#include <gtest/gtest.h>

#include <map>

#include "common.hpp"
#include "dpsolid/materials.hpp"

using namespace dps;
using testutil::catalog;
using testutil::rel;

namespace {

// Printed table: g_bar [Å], q_hat, sigma_theta [Å], sigma_v [Å] (0 = none), T/hbar [MHz/cm³].
struct Row {
  double g, q, s_theta, s_v, T;
};

const std::map<std::string, Row>& printed() {
  static const std::map<std::string, Row> t = {
      {"Al", {2.55, 1, 0.10, 0.10, 4.3}},        {"Si", {2.43, 1, 0.072, 0, 3.8}},
      {"Fe", {2.28, 1, 0.062, 0.059, 42.1}},     {"Cu", {2.16, 1, 0.083, 0.074, 47.5}},
      {"Pb", {3.11, 1, 0.165, 0.194, 84.8}},     {"Au", {2.57, 1, 0.088, 0.094, 257.2}},
      {"Pt", {2.47, 1, 0.065, 0.064, 380.4}},    {"Ir", {2.42, 1, 0.035, 0.025, 731.1}},
      {"Al2O3", {2.05, 1.07, 0.044, 0.032, 11.5}}, {"PZT", {2.42, 2.32, 0.095, 0.072, 71.8}},
  };
  return t;
}

}  // namespace

TEST(Materials, CatalogHoldsTheTenSolids) {
  EXPECT_EQ(catalog().materials.size(), 10u);
  for (auto& [name, row] : printed()) EXPECT_TRUE(catalog().has(name)) << name;
}

TEST(Materials, TableRowsWithinThreePercent) {
  for (auto& [name, row] : printed()) {
    const Material& m = catalog().get(name);
    DerivedMaterial d = derive(m, 300.0);
    EXPECT_LT(rel(d.g_bar * 1e10, row.g), 0.03) << name;
    EXPECT_LT(rel(d.q_hat, row.q), 0.03) << name;
    EXPECT_LT(rel(d.sigma * 1e10, row.s_theta), 0.03) << name;
    if (row.s_v > 0) { EXPECT_LT(rel(sigma_sound(m, 300.0) * 1e10, row.s_v), 0.03) << name; }
    EXPECT_LT(rel(d.T_G_S / C::hbar * 1e-12, row.T), 0.03) << name;
  }
}

TEST(Materials, MeanMassExamples) {
  EXPECT_NEAR(mean_mass(catalog().get("Al").composition) / C::u, 26.98, 1e-9);
  EXPECT_NEAR(mean_mass(catalog().get("PZT").composition) / C::u, 64.94, 0.01);
  EXPECT_NEAR(mean_mass(Composition::element("X", 7.5)) / C::u, 7.5, 1e-12);
}

TEST(Materials, QuadraticMassFactor) {
  EXPECT_EQ(quadratic_mass_factor(catalog().get("Cu").composition), 1.0);
  EXPECT_NEAR(quadratic_mass_factor(catalog().get("Al2O3").composition), 1.07, 0.005);
  EXPECT_NEAR(quadratic_mass_factor(catalog().get("PZT").composition), 2.32, 0.01);
  auto same = Composition::from_counts({{"A", 10.0, 1.0}, {"B", 10.0, 2.0}});
  EXPECT_NEAR(quadratic_mass_factor(same), 1.0, 1e-15);
}

TEST(Materials, DerivedInvariants) {
  for (auto& m : catalog().materials) {
    DerivedMaterial d = derive(m, 300.0);
    EXPECT_LT(rel(d.g_bar * d.g_bar * d.g_bar * d.rho, d.m_bar), 1e-12) << m.name;
    EXPECT_GE(d.q_hat, 1.0);
    EXPECT_EQ(d.q_hat == 1.0, m.composition.single_element()) << m.name;
    double T = C::G * d.q_hat * d.rho * d.rho * std::pow(d.g_bar, 3) / (sqrt_pi * d.sigma);
    EXPECT_LT(rel(d.T_G_S, T), 1e-12);
    EXPECT_EQ(d.temperature, 300.0);
  }
}

TEST(Materials, SigmaScalesWithRootTemperature) {
  for (auto& m : catalog().materials) {
    EXPECT_LT(rel(sigma_debye(m, 1200.0), 2.0 * sigma_debye(m, 300.0)), 1e-14);
    EXPECT_LT(rel(sigma_debye(m, 75.0), 0.5 * sigma_debye(m, 300.0)), 1e-14);
  }
}

TEST(Materials, EnergyDensityScalesWithRhoSquaredAtFixedLattice) {
  Material m = catalog().get("Fe");
  DerivedMaterial d = derive(m);
  EXPECT_LT(rel(energy_density(d.q_hat, 2 * d.rho, d.g_bar, d.sigma), 4.0 * d.T_G_S), 1e-12);
  // at fixed composition ḡ³ shrinks as 1/ρ, so only one power survives
  m.rho *= 2.0;
  EXPECT_LT(rel(derive(m).T_G_S, 2.0 * d.T_G_S), 1e-12);
}

TEST(Materials, DebyeAndSoundEstimatesAgree) {
  for (auto& m : catalog().materials) {
    if (!m.v_par) continue;
    double r = sigma_debye(m, 300.0) / sigma_sound(m, 300.0);
    EXPECT_GT(r, 1.0 / 1.5) << m.name;
    EXPECT_LT(r, 1.5) << m.name;
  }
}

TEST(Materials, MissingPropertiesAreReported) {
  const Material& si = catalog().get("Si");
  EXPECT_THROW(sigma_sound(si, 300.0), MissingProperty);
  try {
    si.need(si.rho_ohm, "rho_ohm");
    FAIL();
  } catch (const MissingProperty& e) {
    EXPECT_EQ(e.material(), "Si");
    EXPECT_EQ(e.field(), "rho_ohm");
  }
  Material bad = si;
  bad.theta_D = 0;
  EXPECT_THROW(sigma_debye(bad, 300.0), MissingProperty);
  EXPECT_THROW(sigma_debye(si, 0.0), InvalidInput);
}

TEST(Materials, CompositionValidation) {
  EXPECT_THROW(Composition{}.validate(), InvalidInput);
  EXPECT_THROW((Composition{{{"A", 1.0, 0.4}, {"B", 1.0, 0.4}}}.validate()), InvalidInput);
  EXPECT_THROW((Composition{{{"A", -1.0, 1.0}}}.validate()), InvalidInput);
}

TEST(Catalog, ParsesUnitsBlockAndConverts) {
  auto c = Catalog::parse("[units]\ncomposition = u\nrho = g/cm³\ntheta_D = K\nv_par = km/s\n"
                          "[X]\ncomposition = X:10\nrho = 2\ntheta_D = 100\nv_par = 3\n");
  const Material& x = c.get("X");
  EXPECT_DOUBLE_EQ(x.rho, 2000.0);
  EXPECT_DOUBLE_EQ(*x.v_par, 3000.0);
  EXPECT_FALSE(x.alpha_L.has_value());
}

TEST(Catalog, EmptyTextGivesEmptyCatalog) { EXPECT_TRUE(Catalog::parse("").materials.empty()); }

TEST(Catalog, RejectsBadFiles) {
  EXPECT_THROW(Catalog::parse("[X]\ncomposition = X:1\nrho = 1\n"), ValidationError);
  const std::string head = "[units]\ncomposition = u\nrho = g/cm³\ntheta_D = K\n";
  EXPECT_THROW(Catalog::parse(head + "[X]\nrho = 1\ntheta_D = 1\n"), ValidationError);
  EXPECT_THROW(Catalog::parse(head + "[X]\ncomposition = X:1\nrho = 1 g/cm³\ntheta_D = 1\n"), ValidationError);
  EXPECT_THROW(Catalog::parse(head + "[X]\ncomposition = X:1\nrho = 1\ntheta_D = 1\nfoo = 2\n"),
               ValidationError);
  EXPECT_THROW(Catalog::parse("[units]\nrho = K\n"), ValidationError);
  EXPECT_THROW(Catalog::load("/nonexistent/catalog.cat"), ValidationError);
}

TEST(Catalog, OverrideNeedsUnits) {
  Catalog c = catalog();
  kv::Section s{"materials.Si", 1, {{"rho_ohm", "5 Ω·cm", 2}}};
  c.apply_override("Si", s);
  EXPECT_NEAR(*c.get("Si").rho_ohm, 0.05, 1e-15);
  kv::Section bad{"materials.Si", 1, {{"rho_ohm", "5", 2}}};
  EXPECT_THROW(c.apply_override("Si", bad), ValidationError);
  kv::Section unknown{"materials.Si", 1, {{"colour", "5 K", 2}}};
  EXPECT_THROW(c.apply_override("Si", unknown), ValidationError);
}
