#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "dpsolid/dp_core.hpp"
#include "dpsolid/oracle/dp_energy.hpp"
#include "dpsolid/oracle/interference.hpp"
#include "dpsolid/oracle/separation.hpp"

namespace dps::oracle {

struct CheckRow {
  std::string check;
  std::string label;
  double analytic = 0;
  double oracle = 0;
  double error_estimate = 0;
  double tolerance = 0;  // relative
  bool pass = false;
  double seconds = 0;
  std::string note;

  double rel_diff() const { return analytic == 0 ? std::abs(oracle) : std::abs(oracle - analytic) / std::abs(analytic); }
};

inline CheckRow make_row(std::string check, std::string label, double analytic, const OracleResult& r,
                         double tol) {
  CheckRow row{std::move(check), std::move(label), analytic, r.value, r.error_estimate, tol, false, 0.0, {}};
  row.pass = row.rel_diff() <= tol;
  row.seconds = r.seconds;
  if (r.resolution_insufficient) row.note = "error estimate above target";
  return row;
}

// ---- geometry builders ------------------------------------------------------

inline SuperposedPair gaussian_pair(double m, double sigma, double ds) {
  return {{GaussianCloud{{{Vec3{0, 0, 0}, m, sigma}}}}, {GaussianCloud{{{Vec3{0, 0, ds}, m, sigma}}}}};
}

// Square plate L×L×d displaced by ds along its normal.
inline SuperposedPair displaced_plate(double L, double d, double rho, double ds) {
  Box b{{0, 0, 0}, {L, L, d}};
  return {{UniformShape{b, rho}}, {UniformShape{translated(Shape{b}, {0, 0, ds}), rho}}};
}

// Plate whose thickness grows from d to d + ds at constant mass.
inline SuperposedPair extended_plate(double L, double d, double rho, double ds) {
  double k = (d + ds) / d;
  return {{UniformShape{Box{{0, 0, 0}, {L, L, d}}, rho}}, {UniformShape{Box{{0, 0, 0}, {L, L, d + ds}}, rho / k}}};
}

// Rod of radius r and length l whose radius grows by ds at constant mass.
inline SuperposedPair extended_rod(double r, double l, double rho, double ds) {
  double k = (r + ds) / r;
  return {{UniformShape{Cylinder{0, 0, r, 0, l}, rho}}, {UniformShape{Cylinder{0, 0, r + ds, 0, l}, rho / (k * k)}}};
}

inline SuperposedPair extended_sphere(double R, double rho, double ds) {
  double k = (R + ds) / R;
  return {{UniformShape{Ball{{0, 0, 0}, R}, rho}}, {UniformShape{Ball{{0, 0, 0}, R + ds}, rho / (k * k * k)}}};
}

// Plate capacitor: metal plates of thickness dm around a dielectric of
// thickness d, all over a square of side L. Compressing the dielectric by ds
// moves each plate inward by ds/2. Returns the plate pair (A) and the
// dielectric pair (B).
inline std::pair<SuperposedPair, SuperposedPair> capacitor_pairs(double L, double d, double dm, double rho_p,
                                                                 double rho_d, double ds) {
  auto box = [&](double z0, double z1) { return Box{{0, 0, z0}, {L, L, z1}}; };
  double h = 0.5 * ds;
  SuperposedPair A{{UniformShape{box(-dm, 0), rho_p}, UniformShape{box(d, d + dm), rho_p}},
                   {UniformShape{box(-dm + h, h), rho_p}, UniformShape{box(d - h, d + dm - h), rho_p}}};
  SuperposedPair B{{UniformShape{box(0, d), rho_d}}, {UniformShape{box(h, d - h), rho_d * d / (d - ds)}}};
  return {A, B};
}

// Energy of two square sheets of side L carrying ±σ per area at distance D,
// relative to the infinite-sheet value 2πGσ²L²D. Independent of the oracle:
// a 2-D quadrature over lateral offsets weighted by their multiplicity.
inline double sheet_pair_factor(double L_over_D) {
  double L = L_over_D;  // D = 1
  auto f = [](double r2) { return 1.0 / std::sqrt(r2) - 1.0 / std::sqrt(r2 + 1.0); };
  std::vector<double> br{0.0};
  for (double t = 1.0 / 1024; t < L; t *= 2) br.push_back(t);
  br.push_back(L);
  // polar coordinates about the zero offset remove the 1/r singularity
  auto radial = [&](double phi) {
    double c = std::cos(phi), s = std::sin(phi);
    double rmax = L / std::max(c, s);
    std::vector<double> rb;
    for (double b : br)
      if (b < rmax) rb.push_back(b);
    rb.push_back(rmax);
    return quad::gl_panels([&](double r) { return r * (L - r * c) * (L - r * s) * f(r * r); }, rb, 16);
  };
  double I = 4.0 * quad::gl_panels(radial, {0.0, pi / 8, pi / 4, 3 * pi / 8, pi / 2}, 24);
  return I / (2.0 * pi * L * L);
}

// ---- checks -----------------------------------------------------------------

inline std::vector<CheckRow> check_f_sigma(const QuadratureSpec&) {
  std::vector<CheckRow> rows;
  double m = 1.0, s = 1.0;
  QuadratureSpec q;
  q.method = Method::PotentialGrid;
  q.target_rel_err = 1e-6;
  for (double x : {0.5, 1.0, 2.0, 3.0}) {
    auto r = dp_energy(gaussian_pair(m, s, x * s), q);
    rows.push_back(make_row("f-sigma", fmt::format("x={}", x), nucleus_dp_energy(m, s, x * s), r, 1e-3));
  }
  return rows;
}

inline std::vector<CheckRow> check_point_masses(const QuadratureSpec&) {
  std::vector<CheckRow> rows;
  double m = 1.0, s = 1.0;
  for (double r : {100.0, 1000.0}) {
    auto near = dp_energy(gaussian_pair(m, s, r));
    auto far = dp_energy(gaussian_pair(m, s, 1e12));
    OracleResult d = near;
    d.value = far.value - near.value;
    rows.push_back(make_row("appendix2-point-masses", fmt::format("r={}sigma", r), C::G * m * m / r, d, 1e-2));
  }
  return rows;
}

inline std::vector<CheckRow> check_plate(const QuadratureSpec& q) {
  double d = 1.0, L = 400.0, rho = 1000.0, ds = 1e-3;
  auto r = dp_energy(displaced_plate(L, d, rho, ds), q);
  auto row = make_row("appendix4-plate", "L/d=400", long_distance_energy(GeometryCase::DisplacedPlate, ds, rho, L * L * d), r, 0.02);
  return {row};
}

inline std::vector<CheckRow> check_extended_plate(const QuadratureSpec& q) {
  double d = 1.0, L = 400.0, rho = 1000.0, ds = 1e-3;
  auto r = dp_energy(extended_plate(L, d, rho, ds), q);
  return {make_row("appendix4-extended-plate", "L/d=400",
                   long_distance_energy(GeometryCase::ExtendedPlate, ds, rho, L * L * d), r, 0.02)};
}

inline std::vector<CheckRow> check_rod(const QuadratureSpec& q) {
  double r0 = 0.5, l = 25.0, rho = 1000.0, ds = 1e-3 * r0;
  auto r = dp_energy(extended_rod(r0, l, rho, ds), q);
  return {make_row("appendix4-rod", "l/r=50",
                   long_distance_energy(GeometryCase::ExtendedRod, ds, rho, pi * r0 * r0 * l), r, 0.02)};
}

inline std::vector<CheckRow> check_sphere(const QuadratureSpec& q) {
  double R = 0.5, rho = 1000.0, ds = 1e-3 * R;
  auto r = dp_energy(extended_sphere(R, rho, ds), q);
  return {make_row("appendix4-sphere", "R",
                   long_distance_energy(GeometryCase::ExtendedSphere, ds, rho, 4.0 / 3.0 * pi * R * R * R), r,
                   0.02)};
}

inline std::vector<CheckRow> check_separation_gaussian(const QuadratureSpec& q) {
  double m = 1.0, s = 1.0;
  MassDistribution g{GaussianCloud{{{Vec3{0, 0, 0}, m, s}}}};
  auto w = separation_work(g, {0, 0, s}, q);
  auto e = dp_energy(gaussian_pair(m, s, s), q);
  return {make_row("appendix1-gaussian", "ds=sigma", e.value, w, 0.01)};
}

// The displaced ball converges more slowly than the field-based work, so the
// energy side runs at no less than 48 cells per diameter.
inline std::vector<CheckRow> check_separation_sphere(const QuadratureSpec& q) {
  double R = 0.5, rho = 1000.0;
  QuadratureSpec qe = q, qs = q;
  qe.resolution = std::max(q.resolution, 48);
  qs.resolution = 2 * qe.resolution;
  MassDistribution b{UniformShape{Ball{{0, 0, 0}, R}, rho}};
  Vec3 ds{0, 0, 0.1 * R};
  auto w = separation_work(b, ds, qs);
  auto e = dp_energy(SuperposedPair{b, translated(b, ds)}, qe);
  auto row = make_row("appendix1-sphere", "ds=0.1R", e.value, w, 0.01);
  row.error_estimate += e.error_estimate;
  row.seconds += e.seconds;
  return {row};
}

struct CapacitorSweep {
  std::vector<double> aspect;  // √A/d
  std::vector<double> ratio;   // (E_AB + E_BA)/(E_A + E_B)
  std::vector<InterferenceResult> results;
  double exponent = 0;  // fitted slope of log|ratio| against log(√A/d)
};

inline CapacitorSweep capacitor_sweep(const QuadratureSpec& q, std::vector<double> aspects = {12.5, 25.0, 50.0}) {
  CapacitorSweep s;
  double d = 1.0, dm = 0.25, ds = 1e-3;
  QuadratureSpec qc = q;
  qc.feature = d;
  for (double a : aspects) {
    auto [A, B] = capacitor_pairs(a * d, d, dm, 10500.0, 3940.0, ds);
    auto r = interference_terms(A, B, qc);
    s.aspect.push_back(a);
    s.ratio.push_back(r.ratio());
    s.results.push_back(std::move(r));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0, n = double(s.aspect.size());
  for (size_t i = 0; i < s.aspect.size(); ++i) {
    double x = std::log(s.aspect[i]), y = std::log(std::abs(s.ratio[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  s.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return s;
}

inline std::vector<CheckRow> check_capacitor(const QuadratureSpec& q) {
  auto s = capacitor_sweep(q);
  std::vector<CheckRow> rows;
  bool monotone = true;
  for (size_t i = 1; i < s.ratio.size(); ++i) monotone = monotone && std::abs(s.ratio[i]) < std::abs(s.ratio[i - 1]);
  for (size_t i = 0; i < s.ratio.size(); ++i) {
    const auto& r = s.results[i];
    CheckRow row{"appendix5-capacitor", fmt::format("sqrtA/d={}", s.aspect[i]), 0.0, s.ratio[i],
                 (r.E_AB.error_estimate + r.E_BA.error_estimate) / (r.E_A.value + r.E_B.value), 0.02,
                 false, 0.0, {}};
    row.pass = std::abs(s.ratio[i]) < 0.02 && monotone;
    row.seconds = r.combined.seconds;
    row.note = fmt::format("interference/(E_A+E_B); decay exponent {:.3f}{}", s.exponent,
                           monotone ? "" : "; not monotone");
    rows.push_back(row);
  }
  return rows;
}

inline std::vector<CheckRow> check_field_plate(const QuadratureSpec& q) {
  double d = 1.0, L = 4.0, rho = 1000.0, ds = 0.01;
  auto p = displaced_plate(L, d, rho, ds);
  QuadratureSpec qf = q;
  qf.method = Method::FieldForm;
  auto f = dp_energy(p, qf);
  auto e = dp_energy(p, q);
  auto row = make_row("field-form-plate", "L/d=4", e.value, f, 0.03);
  row.seconds += e.seconds;
  return {row};
}

inline std::vector<CheckRow> check_field_charged(const QuadratureSpec& q) {
  double d = 1.0, L = 10.0, t = 0.01, rho = 1000.0, eps = 0.01;
  auto box = [&](double z0, double z1) { return Box{{0, 0, z0}, {L, L, z1}}; };
  SuperposedPair p{{UniformShape{box(0, t), rho * (1 + eps)}, UniformShape{box(d, d + t), rho * (1 - eps)}},
                   {UniformShape{box(0, t), rho}, UniformShape{box(d, d + t), rho}}};
  QuadratureSpec qf = q;
  qf.method = Method::FieldForm;
  auto f = dp_energy(p, qf);
  double A = L * L, dM = rho * eps * A * t;
  double analytic = 2.0 * pi * C::G / A * dM * dM * (d - t / 3.0) * sheet_pair_factor(L / d);
  auto row = make_row("field-form-charged-plates", "L/d=10", analytic, f, 0.03);
  row.note = fmt::format("finite-size factor {:.5f} included", sheet_pair_factor(L / d));
  return {row};
}

using CheckFn = std::function<std::vector<CheckRow>(const QuadratureSpec&)>;

inline const std::map<std::string, CheckFn>& checks() {
  static const std::map<std::string, CheckFn> m = {
      {"f-sigma", check_f_sigma},
      {"appendix2-point-masses", check_point_masses},
      {"appendix4-plate", check_plate},
      {"appendix4-extended-plate", check_extended_plate},
      {"appendix4-rod", check_rod},
      {"appendix4-sphere", check_sphere},
      {"appendix1-gaussian", check_separation_gaussian},
      {"appendix1-sphere", check_separation_sphere},
      {"appendix5-capacitor", check_capacitor},
      {"field-form-plate", check_field_plate},
      {"field-form-charged-plates", check_field_charged},
  };
  return m;
}

inline std::vector<CheckRow> run_check(const std::string& name, const QuadratureSpec& q = {}) {
  auto it = checks().find(name);
  if (it == checks().end()) throw InvalidInput("unknown oracle check '" + name + "'");
  q.validate();
  return it->second(q);
}

}  // namespace dps::oracle
