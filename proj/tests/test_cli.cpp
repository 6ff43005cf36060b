#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dpsolid/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "dpsolid");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  int code = dps::cli::run(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& rel) { return std::string(DPSOLID_DATA_DIR) + "/" + rel; }

fs::path temp_dir(const std::string& name) {
  auto p = fs::temp_directory_path() / ("dpsolid_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

// Value cell of a quantity row in table output.
std::string quantity(const std::string& out, const std::string& name) {
  for (auto& l : lines(out)) {
    if (l.rfind(name + " ", 0) == 0) {
      auto v = l.substr(name.size());
      return v.substr(v.find_first_not_of(' '));
    }
  }
  return {};
}

}  // namespace

TEST(Cli, MaterialsTable) {
  auto r = cli({"materials"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 13u);  // title, header, units, ten solids
  EXPECT_NE(ls[2].find("[MHz/cm³]"), std::string::npos);
  EXPECT_NE(r.out.find("731.5"), std::string::npos);
}

TEST(Cli, MaterialsAtQuarterTemperatureHalveSigma) {
  auto a = cli({"materials", "Al", "--format", "csv"});
  auto b = cli({"materials", "Al", "--format", "csv", "--temperature", "75 K"});
  auto c = cli({"materials", "Al", "--format", "csv", "--temperature", "75"});
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(b.out.substr(b.out.find('\n')), c.out.substr(c.out.find('\n')));
  auto row = [](const std::string& out) {
    auto ls = lines(out);
    std::vector<std::string> cells;
    std::istringstream in(ls.back());
    for (std::string x; std::getline(in, x, ',');) cells.push_back(x);
    return cells;
  };
  auto ra = row(a.out), rb = row(b.out);
  EXPECT_NEAR(std::stod(rb[8]), 0.5 * std::stod(ra[8]), 1e-3 * std::stod(ra[8]));
  EXPECT_NEAR(std::stod(rb[9]), 0.5 * std::stod(ra[9]), 1e-3 * std::stod(ra[9]));
}

TEST(Cli, EmptyAndUnreadableCatalog) {
  auto dir = temp_dir("catalog");
  std::ofstream(dir / "empty.cat") << "# nothing\n";
  auto r = cli({"materials", "--catalog", (dir / "empty.cat").string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out).size(), 3u);
  EXPECT_EQ(cli({"materials", "--catalog", (dir / "missing.cat").string()}).code, 2);
  std::ofstream(dir / "bad.cat") << "[units]\nrho = K\n";
  EXPECT_EQ(cli({"materials", "--catalog", (dir / "bad.cat").string()}).code, 2);
  EXPECT_EQ(cli({"materials", "Kryptonite"}).code, 2);
}

TEST(Cli, SolidAluminiumPlate) {
  auto r = cli({"solid", data("examples/al_plate.scn")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(quantity(r.out, "regime"), "intermediate");
  EXPECT_NEAR(std::stod(quantity(r.out, "T_G")), 0.355e-6, 0.005e-6);
}

TEST(Cli, SolidZeroDisplacementIsInfinite) {
  auto dir = temp_dir("solid0");
  std::ofstream(dir / "s.scn") << "[solid]\ngeometry = displaced_plate\nmaterial = Al\nvolume = 1 cm³\n"
                                  "displacement = 0 Å\n";
  auto r = cli({"solid", (dir / "s.scn").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(quantity(r.out, "T_G"), "inf s");
}

TEST(Cli, SolidSweepCrossesNearLatticeConstant) {
  auto dir = temp_dir("sweep");
  auto r = cli({"solid", data("examples/fig4_sweep.scn"), "--format", "csv", "--traces", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  ASSERT_TRUE(fs::exists(dir / "solid_sweep.csv"));
  // the long-distance term overtakes the short-distance one between ḡ and 2ḡ
  auto sweep = r.out.substr(r.out.find("# Displacement sweep"));
  double cross = 0;
  for (auto& l : lines(sweep)) {
    std::vector<std::string> c;
    std::istringstream in(l);
    for (std::string x; std::getline(in, x, ',');) c.push_back(x);
    if (c.size() != 5 || c[0] == "ds" || c[0] == "m") continue;
    if (std::stod(c[3]) > std::stod(c[2])) {
      cross = std::stod(c[0]);
      break;
    }
  }
  EXPECT_GT(cross, 2.55e-10);
  EXPECT_LT(cross, 2 * 2.55e-10);
}

TEST(Cli, DetectorFirstScenario) {
  auto r = cli({"detector", "sec5_1_detector"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(quantity(r.out, "bottleneck"), "capacitor");
  double T = std::stod(quantity(r.out, "bottleneck_T_G"));
  EXPECT_NEAR(T, 70e-3, 0.35 * 70e-3);
  auto d = cli({"detector", "sec5_1_detector", "--model", "diosi"});
  ASSERT_EQ(d.code, 0);
  EXPECT_EQ(quantity(d.out, "model"), "diosi");
  EXPECT_GT(std::stod(quantity(d.out, "bottleneck_T_G")), T);
}

TEST(Cli, DetectorPiezoWithTraces) {
  auto dir = temp_dir("traces");
  auto r = cli({"detector", "sec5_2_piezo", "--traces", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(quantity(r.out, "bottleneck"), "piezo");
  EXPECT_NEAR(std::stod(quantity(r.out, "bottleneck_T_G")), 0.52e-6, 0.052e-6);
  EXPECT_EQ(quantity(r.out, "piezo_T_G_before_quench"), "yes");
  for (auto f : {"current.csv", "piezo_voltage.csv", "piezo_energy.csv"}) {
    ASSERT_TRUE(fs::exists(dir / f)) << f;
    std::ifstream in(dir / f);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header.rfind("t_s,", 0), 0u);
  }
  auto d = cli({"detector", "sec5_2_piezo", "--model", "diosi"});
  EXPECT_NEAR(std::stod(quantity(d.out, "bottleneck_T_G")), 0.54e-6, 0.054e-6);
}

TEST(Cli, ComponentSubcommand) {
  auto r = cli({"component", "sec5_1_detector", "--name", "resistor"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("resistor"), std::string::npos);
  EXPECT_EQ(r.out.find("capacitor"), std::string::npos);
  auto dir = temp_dir("component");
  std::ofstream(dir / "p.scn") << "[piezo]\ndiameter = 3 mm\nd = 0.2 mm\nd_m = 0.1 mm\npiezo = PZT\nplates = Cu\n"
                                  "V = 8.2 V\n";
  auto p = cli({"component", (dir / "p.scn").string()});
  ASSERT_EQ(p.code, 0) << p.err;
  EXPECT_NE(p.out.find("long_distance_only"), std::string::npos);
  std::ofstream(dir / "w.scn") << "[wire]\nl = 1 m\nr = 1 mm\nmaterial = Cu\n";
  EXPECT_EQ(cli({"component", (dir / "w.scn").string()}).code, 2);
  EXPECT_EQ(cli({"component", "table1"}).code, 2);
}

TEST(Cli, Oracle) {
  auto r = cli({"oracle", "f-sigma"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
  EXPECT_EQ(cli({"oracle", "no-such-check"}).code, 2);
  EXPECT_EQ(cli({"oracle"}).code, 2);
  auto l = cli({"oracle", "--list"});
  EXPECT_EQ(l.code, 0);
  EXPECT_NE(l.out.find("appendix5-capacitor"), std::string::npos);
  EXPECT_EQ(cli({"oracle", "f-sigma", "--resolution", "2"}).code, 2);
}

TEST(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"detector"}).code, 2);
  EXPECT_EQ(cli({"detector", "/no/such/file.scn"}).code, 2);
  EXPECT_EQ(cli({"detector", "table1"}).code, 2);
  EXPECT_EQ(cli({"materials", "--format", "xml"}).code, 2);
  EXPECT_EQ(cli({"materials", "--temperature", "-3"}).code, 2);
  EXPECT_EQ(cli({"materials", "--temperature", "300 m"}).code, 2);
  auto dir = temp_dir("bad");
  std::ofstream(dir / "b.scn") << "[circuit]\nV_B = 420\n";
  auto r = cli({"detector", (dir / "b.scn").string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Cli, NumericalFailureExitsThree) {
  // an absurd d33 overflows the piezo energy inside the lifetime integral
  auto dir = temp_dir("numeric");
  std::string text = dps::bundled::scenarios[2].text;
  text += "\n[materials.PZT]\nd33 = 1e300 pm/V\n";
  std::ofstream(dir / "n.scn") << text;
  auto r = cli({"detector", (dir / "n.scn").string()});
  EXPECT_EQ(r.code, 3) << r.out << r.err;
}

TEST(Cli, DeterministicOutput) {
  for (std::vector<std::string> args :
       {std::vector<std::string>{"materials"}, {"detector", "sec5_2_piezo"}, {"detector", "sec5_1_detector", "--format", "csv"},
        {"solid", data("examples/fig4_sweep.scn")}}) {
    auto a = cli(args), b = cli(args);
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, EveryTableHasUnitsRow) {
  for (std::vector<std::string> args :
       {std::vector<std::string>{"materials", "--format", "csv"}, {"detector", "sec5_2_piezo", "--format", "csv"},
        {"solid", data("examples/fig4_sweep.scn"), "--format", "csv"},
        {"component", "sec5_1_detector", "--format", "csv"}, {"oracle", "f-sigma", "--format", "csv"}}) {
    auto ls = lines(cli(args).out);
    int tables = 0;
    for (size_t i = 0; i < ls.size(); ++i) {
      if (ls[i].rfind("# ", 0) != 0) continue;
      ++tables;
      ASSERT_LT(i + 2, ls.size() + 1);
      // header then units: same number of cells
      auto count = [](const std::string& s) { return std::count(s.begin(), s.end(), ','); };
      EXPECT_EQ(count(ls[i + 1]), count(ls[i + 2]));
      std::istringstream in(ls[i + 2]);
      for (std::string u; std::getline(in, u, ',');)
        if (u != "-" && u != "SI" && u != "unit") { EXPECT_NO_THROW(dps::units::parse_unit(u)) << u; }
    }
    EXPECT_GT(tables, 0);
  }
}
