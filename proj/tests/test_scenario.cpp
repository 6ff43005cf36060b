#include <gtest/gtest.h>

#include "common.hpp"
#include "dpsolid/scenario.hpp"

using namespace dps;
using namespace dps::scenario;
using testutil::catalog;

namespace {

const std::string minimal_circuit =
    "[circuit]\nV_B = 420 V\nV_E = 15 V\nR_d = 500 Ω\nR = 2 kΩ\nC = 390 pF\nI_q = 0.1 mA\n";

int error_line(const std::string& text) {
  try {
    parse(text, catalog());
  } catch (const ValidationError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST(Scenario, BundledScenariosParse) {
  for (auto& s : bundled::scenarios) EXPECT_NO_THROW(parse(s.text, catalog())) << s.name;
  EXPECT_TRUE(testutil::scenario("sec5_1_detector").has_detector());
  EXPECT_FALSE(testutil::scenario("table1").has_detector());
  EXPECT_THROW(testutil::scenario("table1").detector(), ValidationError);
}

TEST(Scenario, FirstDetectorValues) {
  auto sc = testutil::scenario("sec5_1_detector");
  EXPECT_DOUBLE_EQ(sc.circuit->R, 2000.0);
  EXPECT_NEAR(sc.circuit->C, 390e-12, 1e-24);
  EXPECT_NEAR(sc.capacitor->A, 49e-4, 1e-18);
  EXPECT_NEAR(*sc.catalog.get("Si").rho_ohm, 0.05, 1e-15);
  EXPECT_NEAR(*sc.catalog.get("Al2O3").E_e, 378e9, 1);
  EXPECT_EQ(sc.resistor->l_e, sc.resistor->l);
  EXPECT_NEAR(sc.wire->l_e, 0.04, 1e-15);
  EXPECT_EQ(sc.model, Model::PenroseFull);
  // overrides stay local to the scenario
  EXPECT_FALSE(catalog().get("Si").rho_ohm.has_value());
}

TEST(Scenario, PiezoDiameterAndArea) {
  auto sc = testutil::scenario("sec5_2_piezo");
  EXPECT_NEAR(sc.piezo->A, pi * 0.25 * 9e-6, 1e-18);
  auto h = testutil::scenario("sec5_2_hardened");
  EXPECT_DOUBLE_EQ(h.circuit->V_E, 50.0);
  EXPECT_EQ(h.piezo->plates.name, "Pt");
  EXPECT_NEAR(h.piezo->d_m, 0.2e-3, 1e-15);
  const std::string both = "[piezo]\nA = 1 mm²\ndiameter = 1 mm\nd = 1 mm\nd_m = 1 mm\npiezo = PZT\nplates = Cu\n";
  EXPECT_THROW(parse(both, catalog()), ValidationError);
  const std::string none = "[piezo]\nd = 1 mm\nd_m = 1 mm\npiezo = PZT\nplates = Cu\n";
  EXPECT_THROW(parse(none, catalog()), ValidationError);
  EXPECT_THROW(parse("[piezo]\nA = 1 mm²\nd = 1 mm\nd_m = 1 mm\npiezo = PZT\nplates = Cu\nlayers = 0\n", catalog()),
               ValidationError);
}

TEST(Scenario, RejectsUnknownKeysWithLine) {
  EXPECT_EQ(error_line(minimal_circuit + "colour = red\n"), 8);
  EXPECT_EQ(error_line("schema = 1\nflavour = 2\n"), 2);
}

TEST(Scenario, RejectsMissingUnits) {
  EXPECT_EQ(error_line("[circuit]\nV_B = 420\n"), 2);
  EXPECT_EQ(error_line("temperature = 300\n"), 1);
  EXPECT_EQ(error_line("[resistor]\nl = 13 cm\nr = 1 s\nmaterial = Si\n"), 3);
}

TEST(Scenario, RejectsUnknownSectionsAndValues) {
  EXPECT_EQ(error_line("[nonsense]\nk = 1\n"), 1);
  EXPECT_EQ(error_line("model = newton\n"), 1);
  EXPECT_EQ(error_line("schema = 2\n"), 1);
  EXPECT_EQ(error_line("schema = one\n"), 1);
  EXPECT_EQ(error_line("[resistor]\nl = 13 cm\nr = 1 mm\nmaterial = Unobtainium\n"), 4);
  EXPECT_EQ(error_line("[resistor]\nl = 1 cm\nl_e = 2 cm\nr = 1 mm\nmaterial = Si\n"), 3);
  EXPECT_EQ(error_line("[circuit]\nV_B = -1 V\n"), 2);
  EXPECT_EQ(error_line("[materials.Nope]\nrho = 1 g/cm³\n"), 1);
  EXPECT_EQ(error_line("[materials.Si]\nrho = 1 K\n"), 2);
  EXPECT_EQ(error_line("[detector]\nhorizon = 0 s\n"), 2);
}

TEST(Scenario, CircuitNeedsEveryValue) {
  EXPECT_THROW(parse("[circuit]\nV_B = 420 V\n", catalog()), ValidationError);
  EXPECT_NO_THROW(parse(minimal_circuit, catalog()));
}

TEST(Scenario, MaterialDefinitionAndOverride) {
  auto sc = parse(
      "[materials.X]\ncomposition = X:50:1, Y:10:1\nrho = 3 g/cm³\ntheta_D = 300 K\nalpha_L = 1e-5 1/K\n"
      "[materials.Cu]\nrho = 8.96 g/cm³\n",
      catalog());
  const Material& x = sc.catalog.get("X");
  EXPECT_NEAR(mean_mass(x.composition) / C::u, 30.0, 1e-12);
  EXPECT_DOUBLE_EQ(x.rho, 3000.0);
  EXPECT_NEAR(*x.alpha_L, 1e-5, 1e-20);
  EXPECT_NEAR(sc.catalog.get("Cu").rho, 8960.0, 1e-9);
  EXPECT_THROW(parse("[materials.Cu]\ncomposition = Cu:63\nrho = 1 g/cm³\ntheta_D = 1 K\n", catalog()),
               ValidationError);
  EXPECT_THROW(parse("[materials.Y]\ncomposition = Y:63\n", catalog()), ValidationError);
}

TEST(Scenario, SolidSection) {
  auto sc = parse("[solid]\ngeometry = extended_rod\nmaterial = Fe\nvolume = 2 cm³\ndisplacement = 0.1 Å\n"
                  "sweep_min = 0.01 Å\nsweep_max = 10 Å\nsweep_points = 5\n",
                  catalog());
  ASSERT_TRUE(sc.solid);
  EXPECT_EQ(sc.solid->geometry, GeometryCase::ExtendedRod);
  EXPECT_NEAR(sc.solid->volume, 2e-6, 1e-20);
  EXPECT_EQ(sc.solid->sweep_points, 5);
  const std::string base = "[solid]\ngeometry = extended_rod\nmaterial = Fe\nvolume = 2 cm³\ndisplacement = 0.1 Å\n";
  EXPECT_THROW(parse(base + "sweep_min = 1 Å\n", catalog()), ValidationError);
  EXPECT_THROW(parse(base + "sweep_min = 1 Å\nsweep_max = 0.1 Å\n", catalog()), ValidationError);
  EXPECT_THROW(parse(base + "sweep_min = 0.1 Å\nsweep_max = 1 Å\nsweep_points = 1\n", catalog()),
               ValidationError);
  EXPECT_THROW(parse("[solid]\ngeometry = cube\nmaterial = Fe\nvolume = 1 cm³\ndisplacement = 1 Å\n", catalog()),
               ValidationError);
  EXPECT_THROW(parse("[solid]\ngeometry = cube\nmaterial = Fe\nvolume = 1 cm³\ndisplacement = -1 Å\n", catalog()),
               ValidationError);
}

TEST(Scenario, ComponentDrives) {
  auto sc = parse(
      "[capacitor]\nA = 1 cm²\nd = 1 mm\nd_m = 0.1 mm\ndielectric = Al2O3\nplates = Cu\nV = 100 V\ndV = 1 V\n"
      "[wire]\nl = 1 m\nr = 1 mm\nmaterial = Cu\ni2t = 18 μs·mA^2\n",
      catalog());
  EXPECT_DOUBLE_EQ(*sc.capacitor_drive.V, 100.0);
  EXPECT_DOUBLE_EQ(*sc.capacitor_drive.dV, 1.0);
  EXPECT_NEAR(sc.i2t.at("wire"), 18e-12, 1e-25);
}

TEST(Scenario, ModelAndTemperature) {
  auto sc = parse("temperature = 75 K\nmodel = diosi\n", catalog());
  EXPECT_EQ(sc.temperature, 75.0);
  EXPECT_EQ(sc.model, Model::DiosiSmeared);
  EXPECT_EQ(sc.conditions().model, Model::DiosiSmeared);
}
