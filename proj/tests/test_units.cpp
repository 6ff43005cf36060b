#include <gtest/gtest.h>

#include "dpsolid/kv.hpp"
#include "dpsolid/units.hpp"

using namespace dps;
using namespace dps::units;

TEST(Units, ParsesScenarioSuffixes) {
  EXPECT_NEAR(parse_as("49 cm²", dim::area), 49e-4, 1e-18);
  EXPECT_NEAR(parse_as("5 Ω·cm", dim::resistivity), 0.05, 1e-15);
  EXPECT_NEAR(parse_as("5 ohm*cm", dim::resistivity), 0.05, 1e-15);
  EXPECT_NEAR(parse_as("390 pF", dim::capacitance), 390e-12, 1e-24);
  EXPECT_NEAR(parse_as("0.1 mA", dim::current), 1e-4, 1e-18);
  EXPECT_NEAR(parse_as("70 μm", dim::length), 70e-6, 1e-18);
  EXPECT_NEAR(parse_as("70 um", dim::length), 70e-6, 1e-18);
  EXPECT_NEAR(parse_as("25 Å", dim::length), 2.5e-9, 1e-22);
  EXPECT_NEAR(parse_as("2.7 g/cm³", dim::density), 2700.0, 1e-9);
  EXPECT_NEAR(parse_as("4.3 MHz/cm³", dim::rate_density), 4.3e12, 1e-3);
  EXPECT_NEAR(parse_as("378 GPa", dim::pressure), 378e9, 1e-3);
  EXPECT_NEAR(parse_as("600 pm/V", dim::length_per_volt), 600e-12, 1e-24);
  EXPECT_NEAR(parse_as("2.6e-6 1/K", dim::inv_temperature), 2.6e-6, 1e-20);
  EXPECT_NEAR(parse_as("18 μs·mA^2", dim::current2_time), 18e-12, 1e-25);
  EXPECT_NEAR(parse_as("1 m^-1", make_dim(-1, 0, 0, 0, 0)), 1.0, 0);
}

TEST(Units, DenominatorTakesEverythingAfterSlash) {
  Unit u = parse_unit("W/m·K");
  EXPECT_EQ(u.dim, make_dim(1, 1, -3, -1, 0));
}

TEST(Units, RejectsMissingOrWrongUnits) {
  EXPECT_THROW(parse_as("3", dim::length), ValidationError);
  EXPECT_THROW(parse_as("3 s", dim::length), ValidationError);
  EXPECT_THROW(parse_as("3 furlong", dim::length), ValidationError);
  EXPECT_THROW(parse_as("m", dim::length), ValidationError);
  EXPECT_THROW(parse_as("", dim::length), ValidationError);
  EXPECT_THROW(parse_unit("m/s/s"), ValidationError);
  EXPECT_THROW(parse_unit("m^x"), ValidationError);
}

TEST(Units, DimensionlessAcceptsBareNumbers) {
  EXPECT_DOUBLE_EQ(parse_as("9", dim::none), 9.0);
}

TEST(Units, DimNames) {
  EXPECT_EQ(dim_name(dim::velocity), "m/s");
  EXPECT_EQ(dim_name(dim::none), "1");
}

TEST(Kv, SectionsCommentsAndLines) {
  auto doc = kv::parse("a = 1  # trailing\n\n[s.t]\nk = v w\n");
  ASSERT_EQ(doc.sections.size(), 2u);
  EXPECT_EQ(doc.sections[0].find("a")->value, "1");
  EXPECT_EQ(doc.sections[1].name, "s.t");
  EXPECT_EQ(doc.sections[1].find("k")->value, "v w");
  EXPECT_EQ(doc.sections[1].find("k")->line, 4);
}

TEST(Kv, RejectsMalformedInput) {
  EXPECT_THROW(kv::parse("[a\n"), ValidationError);
  EXPECT_THROW(kv::parse("[]\n"), ValidationError);
  EXPECT_THROW(kv::parse("novalue\n"), ValidationError);
  EXPECT_THROW(kv::parse("k =\n"), ValidationError);
  EXPECT_THROW(kv::parse("k = 1\nk = 2\n"), ValidationError);
  EXPECT_THROW(kv::parse("[a]\n[a]\n"), ValidationError);
  try {
    kv::parse("x = 1\n\nbad line\n");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.line(), 3);
  }
}
