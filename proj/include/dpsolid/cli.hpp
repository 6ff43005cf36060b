#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "dpsolid/bundled_data.hpp"
#include "dpsolid/catalog.hpp"
#include "dpsolid/detector.hpp"
#include "dpsolid/oracle.hpp"
#include "dpsolid/report.hpp"
#include "dpsolid/scenario.hpp"

namespace dps::cli {

enum Exit { Ok = 0, CheckFailed = 1, BadInput = 2, NumericFailure = 3 };

struct Globals {
  std::string catalog_path;
  std::string temperature;
  std::string model;
  std::string format = "table";
  std::string traces;
};

inline Catalog load_catalog(const Globals& g) {
  return g.catalog_path.empty() ? Catalog::parse(bundled::catalog) : Catalog::load(g.catalog_path);
}

// A path on disk, or the name of a bundled scenario.
inline std::string scenario_text(const std::string& arg) {
  if (std::filesystem::is_regular_file(arg)) return kv::read_file(arg);
  for (auto& s : bundled::scenarios)
    if (arg == s.name) return s.text;
  throw ValidationError("no scenario file or bundled scenario named '" + arg + "'");
}

inline double parse_temperature(const std::string& s) {
  double v;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec == std::errc() && p == s.data() + s.size()) {
    if (!(v > 0)) throw ValidationError("temperature must be positive");
    return v;  // bare number: kelvin
  }
  double t = units::parse_as(s, units::dim::temperature, "temperature");
  if (!(t > 0)) throw ValidationError("temperature must be positive");
  return t;
}

// Scenario with the global flags applied on top of the file.
inline scenario::Scenario load_scenario(const Globals& g, const std::string& arg) {
  auto sc = scenario::parse(scenario_text(arg), load_catalog(g));
  if (!g.temperature.empty()) sc.temperature = parse_temperature(g.temperature);
  if (!g.model.empty()) sc.model = scenario::parse_model(g.model);
  return sc;
}

inline void write_trace_file(const Globals& g, const std::string& name, const std::string& x,
                             const std::string& y, const Trace& tr) {
  std::filesystem::create_directories(g.traces);
  auto path = std::filesystem::path(g.traces) / name;
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot write '" + path.string() + "'");
  report::write_trace(f, x, y, tr);
}

inline void print_warnings(std::ostream& out, const std::vector<std::string>& w, const std::string& who = "") {
  for (auto& s : w) out << "warning: " << (who.empty() ? "" : who + ": ") << s << "\n";
}

inline int cmd_materials(const Globals& g, const std::vector<std::string>& names, std::ostream& out) {
  Catalog cat = load_catalog(g);
  double T = g.temperature.empty() ? 300.0 : parse_temperature(g.temperature);
  report::Table t;
  t.title = fmt::format("Solid energy densities at T = {} K", report::num(T));
  t.headers = {"solid", "m_bar", "rho", "theta_D", "v_par", "v_perp", "g_bar", "q_hat", "sigma_theta",
               "sigma_v", "T_G_S/hbar"};
  t.units = {"-", "u", "g/cm³", "K", "m/s", "m/s", "Å", "1", "Å", "Å", "MHz/cm³"};
  for (auto& m : cat.materials) {
    if (!names.empty() && std::find(names.begin(), names.end(), m.name) == names.end()) continue;
    DerivedMaterial d = derive(m, T);
    std::optional<double> sv;
    if (m.v_par) sv = sigma_sound(m, T) * 1e10;
    std::optional<double> vpar = m.v_par, vperp = m.v_perp;
    t.add({m.name, report::num(d.m_bar / C::u, 5), report::num(m.rho * 1e-3, 4), report::num(m.theta_D, 4),
           report::opt(vpar, 5), report::opt(vperp, 5), report::num(d.g_bar * 1e10, 4), report::num(d.q_hat, 4),
           report::num(d.sigma * 1e10, 4), report::opt(sv, 4), report::num(d.T_G_S / C::hbar * 1e-12, 5)});
  }
  for (auto& n : names)
    if (!cat.has(n)) throw ValidationError("material '" + n + "' is not in the catalog");
  report::write(out, t, report::parse_format(g.format));
  return Ok;
}

inline report::Table quantity_table(const std::string& title) {
  report::Table t;
  t.title = title;
  t.headers = {"quantity", "value"};
  t.units = {"-", "unit"};
  return t;
}

// Values carry their unit in the cell since rows mix dimensions.
inline void qrow(report::Table& t, const std::string& q, double v, const std::string& unit) {
  t.add({q, report::num(v) + (unit.empty() ? "" : " " + unit)});
}

inline int cmd_solid(const Globals& g, const std::string& file, std::ostream& out) {
  auto sc = load_scenario(g, file);
  if (!sc.solid) throw ValidationError("scenario has no [solid] section");
  const auto& so = *sc.solid;
  auto fmt_ = report::parse_format(g.format);
  SuperposedSolid s{so.geometry, derive(sc.catalog.get(so.material), sc.temperature), so.volume,
                    so.displacement, sc.model};
  EnergyBreakdown b = total_energy(s);
  auto t = quantity_table("Superposed solid");
  t.add({"geometry", to_string(so.geometry)});
  t.add({"material", so.material});
  t.add({"model", to_string(sc.model)});
  qrow(t, "volume", so.volume, "m³");
  qrow(t, "displacement", so.displacement, "m");
  qrow(t, "displacement/sigma", so.displacement / s.material.sigma, "");
  t.add({"regime", to_string(b.regime)});
  qrow(t, "short_distance", b.short_distance, "J");
  qrow(t, "long_distance", b.long_distance, "J");
  qrow(t, "E_G", b.total, "J");
  qrow(t, "T_G", lifetime(b.total), "s");
  qrow(t, "chi", b.chi, "");
  qrow(t, "xi", b.xi, "");
  report::write(out, t, fmt_);
  print_warnings(out, b.warnings);
  if (so.sweep_min) {
    report::Table sw;
    sw.title = "Displacement sweep";
    sw.headers = {"ds", "ds/sigma", "short_distance", "long_distance", "total"};
    sw.units = {"m", "1", "J", "J", "J"};
    Trace tr;
    int n = so.sweep_points;
    for (int i = 0; i < n; ++i) {
      double ds = *so.sweep_min * std::pow(*so.sweep_max / *so.sweep_min, double(i) / (n - 1));
      SuperposedSolid x = s;
      x.displacement = ds;
      EnergyBreakdown e = total_energy(x);
      sw.add({report::num(ds), report::num(ds / s.material.sigma), report::num(e.short_distance),
              report::num(e.long_distance), report::num(e.total)});
      tr.push_back({ds, e.total});
    }
    out << "\n";
    report::write(out, sw, fmt_);
    if (!g.traces.empty()) write_trace_file(g, "solid_sweep.csv", "ds_m", "E_G_J", tr);
  }
  return Ok;
}

inline report::Table component_table(const std::vector<ComponentResult>& cs) {
  report::Table t;
  t.title = "Components";
  t.headers = {"component", "E_G", "T_G", "ds", "ds/sigma", "settling", "status"};
  t.units = {"-", "J", "s", "m", "1", "s", "-"};
  for (auto& c : cs) {
    if (!c.ok()) {
      t.add({c.name, "n/a", "n/a", "n/a", "n/a", "n/a", "error"});
      continue;
    }
    std::string status = c.settling_warning ? "settling" : (c.warnings.empty() ? "ok" : "warn");
    t.add({c.name, report::num(c.E_G), report::num(c.T_G), report::num(c.displacement),
           report::num(c.displacement_ratio), report::opt(c.settling), status});
  }
  return t;
}

inline report::Table detail_table(const std::vector<ComponentResult>& cs) {
  report::Table t;
  t.title = "Component details";
  t.headers = {"component", "quantity", "value", "unit"};
  t.units = {"-", "-", "-", "-"};
  for (auto& c : cs)
    for (auto& d : c.details) t.add({c.name, d.label, report::num(d.value), d.unit});
  return t;
}

inline void component_warnings(std::ostream& out, const std::vector<ComponentResult>& cs) {
  for (auto& c : cs) {
    if (!c.ok()) out << "error: " << c.name << ": " << c.error << "\n";
    print_warnings(out, c.warnings, c.name);
  }
}

inline int cmd_component(const Globals& g, const std::string& file, const std::string& name, std::ostream& out) {
  auto sc = load_scenario(g, file);
  Conditions cond = sc.conditions();
  auto i2t_for = [&](const std::string& n) {
    auto it = sc.i2t.find(n);
    if (it != sc.i2t.end()) return it->second;
    if (!sc.circuit) throw ValidationError("[" + n + "] needs 'i2t' or a [circuit] section");
    return current_squared_integral(*sc.circuit);
  };
  auto want = [&](const std::string& n) { return name.empty() || name == n; };
  std::vector<ComponentResult> res;
  if (sc.capacitor && want("capacitor")) {
    auto V = sc.capacitor_drive.V, dV = sc.capacitor_drive.dV;
    if (!V || !dV) {
      if (!sc.circuit) throw ValidationError("[capacitor] needs 'V' and 'dV' or a [circuit] section");
      if (!V) V = sc.circuit->V_B + 0.5 * sc.circuit->V_E;
      if (!dV) dV = sc.circuit->V_E;
    }
    res.push_back(capacitor_result("capacitor", *sc.capacitor, *V, *dV, cond));
  }
  if (sc.resistor && want("resistor")) res.push_back(conductor_result("resistor", *sc.resistor, i2t_for("resistor"), cond));
  if (sc.wire && want("wire")) res.push_back(conductor_result("wire", *sc.wire, i2t_for("wire"), cond));
  if (sc.photodiode && want("photodiode"))
    res.push_back(photodiode_dp_energy(*sc.photodiode, i2t_for("photodiode"), cond));
  if (sc.piezo && want("piezo")) {
    if (sc.piezo_voltage) {
      // static voltage: ordinary criterion
      ComponentResult r;
      r.name = r.kind = "piezo";
      double ds = piezo_displacement(*sc.piezo, *sc.piezo_voltage);
      r.E_G = piezo_dp_energy(*sc.piezo, ds, cond);
      r.displacement = ds;
      r.displacement_ratio = ds / derive(sc.piezo->piezo, cond.temperature).sigma;
      r.settling = try_settling(*sc.piezo, r);
      r.details = {{"long_distance_only", piezo_long_distance_energy(*sc.piezo, ds), "J"}};
      finalize(r);
      res.push_back(r);
    } else {
      if (!sc.circuit) throw ValidationError("[piezo] needs 'V' or a [circuit] section");
      DetectorScenario d;
      d.circuit = *sc.circuit;
      d.piezo = sc.piezo;
      d.conditions = cond;
      d.horizon = sc.horizon;
      res.push_back(piezo_result(d, piezo_quench_time(d.circuit, *d.piezo)));
    }
  }
  if (res.empty())
    throw ValidationError(name.empty() ? "scenario has no component sections"
                                       : "scenario has no [" + name + "] section");
  auto f = report::parse_format(g.format);
  report::write(out, component_table(res), f);
  out << "\n";
  report::write(out, detail_table(res), f);
  component_warnings(out, res);
  return Ok;
}

inline int cmd_detector(const Globals& g, const std::string& file, std::ostream& out) {
  auto sc = load_scenario(g, file);
  DetectorScenario ds = sc.detector();
  LifetimeReport rep = evaluate_detector(ds);
  auto f = report::parse_format(g.format);
  auto t = quantity_table("Detector lifetime report");
  t.add({"model", to_string(rep.model)});
  qrow(t, "current_squared_integral", rep.i2t, "A²·s");
  qrow(t, "quench_time_bias_loop", rep.t_s, "s");
  if (rep.piezo_t_s) qrow(t, "quench_time_piezo_path", *rep.piezo_t_s, "s");
  if (rep.piezo_before_quench) t.add({"piezo_T_G_before_quench", *rep.piezo_before_quench ? "yes" : "no"});
  t.add({"bottleneck", rep.bottleneck.empty() ? "none" : rep.bottleneck});
  if (auto* b = rep.find(rep.bottleneck)) qrow(t, "bottleneck_T_G", b->T_G, "s");
  qrow(t, "summed_E_G", rep.combined_E_G, "J");
  qrow(t, "summed_T_G", rep.combined_T_G, "s");
  report::write(out, t, f);
  out << "\n";
  report::write(out, component_table(rep.components), f);
  out << "\n";
  report::write(out, detail_table(rep.components), f);
  component_warnings(out, rep.components);
  print_warnings(out, rep.warnings);
  if (!g.traces.empty()) {
    write_trace_file(g, "current.csv", "t_s", "I_A", current_trace(ds.circuit));
    if (ds.piezo) {
      write_trace_file(g, "piezo_voltage.csv", "t_s", "V_V", piezo_voltage_trace(ds));
      write_trace_file(g, "piezo_energy.csv", "t_s", "E_G_J", piezo_energy_trace(ds));
    }
  }
  for (auto& c : rep.components)
    if (c.numerical_failure) return NumericFailure;
  return Ok;
}

inline int cmd_oracle(const Globals& g, const std::string& check, int resolution, double target,
                      std::ostream& out, std::ostream& err) {
  oracle::QuadratureSpec q;
  q.resolution = resolution;
  q.target_rel_err = target;
  q.validate();
  std::vector<std::string> names;
  if (check == "all") {
    for (auto& [n, fn] : oracle::checks()) names.push_back(n);
  } else {
    if (!oracle::checks().count(check)) throw ValidationError("unknown oracle check '" + check + "'");
    names.push_back(check);
  }
  report::Table t;
  t.title = "Oracle cross-checks";
  t.headers = {"check", "case", "analytic", "oracle", "error_estimate", "rel_diff", "tolerance", "result", "note"};
  t.units = {"-", "-", "SI", "SI", "SI", "1", "1", "-", "-"};
  bool all_pass = true;
  for (auto& n : names) {
    auto t0 = std::chrono::steady_clock::now();
    auto rows = oracle::run_check(n, q);
    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    err << fmt::format("{}: {:.2f} s\n", n, sec);
    for (auto& r : rows) {
      all_pass = all_pass && r.pass;
      t.add({r.check, r.label, report::num(r.analytic, 8), report::num(r.oracle, 8), report::num(r.error_estimate, 3),
             report::num(r.rel_diff(), 3), report::num(r.tolerance, 3), r.pass ? "PASS" : "FAIL", r.note});
    }
  }
  report::write(out, t, report::parse_format(g.format));
  return all_pass ? Ok : CheckFailed;
}

inline int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gravitational self-energy and superposition lifetimes of solids and detector components"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--catalog", g.catalog_path, "Material catalog file (default: bundled)");
  app.add_option("--temperature", g.temperature, "Temperature, e.g. '300 K'");
  app.add_option("--model", g.model, "penrose or diosi (overrides the scenario)")
      ->check(CLI::IsMember({"penrose", "diosi"}));
  app.add_option("--format", g.format, "table or csv")->check(CLI::IsMember({"table", "csv"}));
  app.add_option("--traces", g.traces, "Directory for two-column trace files");

  std::vector<std::string> names;
  auto* mat = app.add_subcommand("materials", "Derived per-solid quantities");
  mat->add_option("names", names, "Restrict to these solids");

  std::string file;
  auto* sol = app.add_subcommand("solid", "Energy and lifetime of one superposed solid");
  sol->add_option("scenario", file, "Scenario file or bundled name")->required();

  std::string comp_name;
  auto* comp = app.add_subcommand("component", "Evaluate the component sections of a scenario");
  comp->add_option("scenario", file, "Scenario file or bundled name")->required();
  comp->add_option("--name", comp_name, "Only this component")
      ->check(CLI::IsMember({"capacitor", "resistor", "wire", "photodiode", "piezo"}));

  auto* det = app.add_subcommand("detector", "Full detector lifetime report");
  det->add_option("scenario", file, "Scenario file or bundled name")->required();

  std::string check;
  int resolution = 32;
  double target = 1e-3;
  bool list = false;
  auto* orc = app.add_subcommand("oracle", "Run a named numerical cross-check ('all' runs every check)");
  orc->add_option("check", check, "Check name");
  orc->add_option("--resolution", resolution, "Cells across the shortest feature")->check(CLI::Range(4, 4096));
  orc->add_option("--target-rel-err", target, "Target relative error");
  orc->add_flag("--list", list, "List check names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return Ok;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return Ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return BadInput;
  }

  try {
    if (*mat) return cmd_materials(g, names, out);
    if (*sol) return cmd_solid(g, file, out);
    if (*comp) return cmd_component(g, file, comp_name, out);
    if (*det) return cmd_detector(g, file, out);
    if (*orc) {
      if (list) {
        for (auto& [n, fn] : oracle::checks()) out << n << "\n";
        return Ok;
      }
      if (check.empty()) throw ValidationError("oracle needs a check name (see --list)");
      return cmd_oracle(g, check, resolution, target, out, err);
    }
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return NumericFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return BadInput;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return BadInput;
  }
  return BadInput;
}

}  // namespace dps::cli
