#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "dpsolid/oracle/field_form.hpp"
#include "dpsolid/oracle/pair_sum.hpp"
#include "dpsolid/oracle/potential_grid.hpp"
#include "dpsolid/oracle/voxelize.hpp"

namespace dps::oracle {

struct OracleResult {
  double value = 0;
  double error_estimate = 0;
  bool resolution_insufficient = false;
  Method method = Method::PairwiseSum;
  std::string engine;
  std::vector<double> levels;  // raw sums, finest first
  double seconds = 0;
};

enum class Engine { Discrete, Generic, Plate, Rod };

inline const char* to_string(Engine e) {
  switch (e) {
    case Engine::Discrete: return "discrete";
    case Engine::Generic: return "voxel";
    case Engine::Plate: return "plate";
    case Engine::Rod: return "rod";
  }
  return "?";
}

// Discretisation shared by every pair summed at one level.
struct Grid {
  Engine engine = Engine::Generic;
  double h = 0;
  Vec3 anchor{};
  PlateLayout plate;
  RodLayout rod;
  long nx = 0, ny = 0, nz = 0;
  double hx = 0, hy = 0, hz = 0;
  double s2 = 0;  // per-axis variance of a cell
};

inline Grid make_grid(const std::vector<SignedShape>& shapes, bool discrete, double h) {
  Grid g;
  g.h = h;
  g.anchor = grid_anchor(shapes);
  if (shapes.empty()) {
    g.engine = Engine::Discrete;
    return g;
  }
  if (!discrete && plate_layout(shapes, g.plate)) {
    g.engine = Engine::Plate;
    g.nx = std::max(1L, std::lround((g.plate.x1 - g.plate.x0) / h));
    g.ny = std::max(1L, std::lround((g.plate.y1 - g.plate.y0) / h));
    g.hx = (g.plate.x1 - g.plate.x0) / g.nx;
    g.hy = (g.plate.y1 - g.plate.y0) / g.ny;
    g.hz = h;
  } else if (!discrete && rod_layout(shapes, g.rod)) {
    g.engine = Engine::Rod;
    g.nz = std::max(1L, std::lround((g.rod.z1 - g.rod.z0) / h));
    g.hx = g.hy = h;
    g.hz = (g.rod.z1 - g.rod.z0) / g.nz;
  } else {
    g.engine = Engine::Generic;
    g.hx = g.hy = g.hz = h;
  }
  g.s2 = std::cbrt(g.hx * g.hy * g.hz) * std::cbrt(g.hx * g.hy * g.hz) / 12.0;
  return g;
}

struct Discretized {
  std::vector<Point> points;  // generic/discrete points, or rod cross-section
  std::vector<Layer> layers;  // plate profile
};

inline Discretized discretize(const SuperposedPair& p, const Grid& g) {
  Discretized d;
  auto shapes = difference_shapes(p);
  switch (g.engine) {
    case Engine::Plate: d.layers = plate_profile(shapes, g.hz, g.anchor[2]); break;
    case Engine::Rod: d.points = rod_section(shapes, g.rod, g.h); break;
    case Engine::Generic: d.points = voxelize(shapes, g.h, g.anchor); break;
    case Engine::Discrete: break;
  }
  if (g.engine == Engine::Generic || g.engine == Engine::Discrete) {
    discrete_points(p.state1, +1.0, d.points);
    discrete_points(p.state2, -1.0, d.points);
  }
  return d;
}

// (G/2) Σ_{a∈A} Σ_{b∈B}; self selects the triangular form for A == B.
inline double interact(const Discretized& A, const Discretized& B, const Grid& g, const Kernel& K, bool self) {
  switch (g.engine) {
    case Engine::Plate: return plate_sum(A.layers, B.layers, g.nx, g.ny, g.hx, g.hy, 2.0 * g.s2, K);
    case Engine::Rod: return rod_sum(A.points, B.points, g.nz, g.hz, 2.0 * g.s2, K);
    default: return self ? self_sum(A.points, K) : cross_sum(A.points, B.points, K);
  }
}

inline std::vector<double> resolution_levels(int res) {
  std::vector<double> r{double(res), res / 2.0};
  if (res / 4.0 >= 4.0) r.push_back(res / 4.0);
  return r;
}

// Richardson extrapolation, finest level first. With three levels the
// convergence order is estimated from the ratio of successive differences
// (clamped to orders 1..4); with two, first order is assumed. The error
// estimate is the size of the applied correction, or the spread of the
// levels when they do not converge monotonically.
inline void richardson(const std::vector<double>& E, double& value, double& err) {
  if (E.size() == 1) {
    value = E[0];
    err = 0;
    return;
  }
  double d0 = E[0] - E[1];
  if (E.size() == 2) {
    value = E[0] + d0;
    err = std::abs(d0);
    return;
  }
  double d1 = E[1] - E[2];
  if (d0 == 0) {
    value = E[0];
    err = std::abs(d1);
    return;
  }
  double r = d1 / d0;
  if (!(r > 1.0)) {
    value = E[0];
    err = std::max(std::abs(d0), std::abs(d1));
    return;
  }
  r = std::clamp(r, 2.0, 16.0);
  double corr = d0 / (r - 1.0);
  value = E[0] + corr;
  err = std::abs(corr);
}

inline SuperposedPair merged(const SuperposedPair& a, const SuperposedPair& b) {
  SuperposedPair m;
  m.state1 = a.state1;
  m.state2 = a.state2;
  m.state1.parts.insert(m.state1.parts.end(), b.state1.parts.begin(), b.state1.parts.end());
  m.state2.parts.insert(m.state2.parts.end(), b.state2.parts.begin(), b.state2.parts.end());
  return m;
}

inline double feature_length(const SuperposedPair& p, const QuadratureSpec& q) {
  if (q.feature > 0) return q.feature;
  double f = shortest_feature(p);
  if (!std::isfinite(f)) f = 1.0;  // discrete pairs ignore it
  return f;
}

// Cross interaction (G/2)Σ_{A}Σ_{B} between two pairs discretised on a common
// grid chosen from both, for every Richardson level.
inline std::vector<double> level_sums(const SuperposedPair& A, const SuperposedPair& B, bool self,
                                      const SuperposedPair& layout, const QuadratureSpec& q,
                                      std::string* engine = nullptr) {
  auto shapes = difference_shapes(layout);
  bool disc = has_discrete(layout.state1) || has_discrete(layout.state2);
  Kernel K{q.softening};
  double f = feature_length(layout, q);
  std::vector<double> out;
  for (double r : resolution_levels(q.resolution)) {
    Grid g = make_grid(shapes, disc, f / r);
    if (engine) *engine = to_string(g.engine);
    Discretized a = discretize(A, g);
    double e;
    if (self) {
      e = interact(a, a, g, K, true);
    } else {
      Discretized b = discretize(B, g);
      e = interact(a, b, g, K, false);
    }
    out.push_back(e);
    if (g.engine == Engine::Discrete) break;
  }
  return out;
}

inline OracleResult finish(std::vector<double> levels, const QuadratureSpec& q, Method m, std::string engine,
                           std::chrono::steady_clock::time_point t0) {
  OracleResult r;
  r.levels = std::move(levels);
  richardson(r.levels, r.value, r.error_estimate);
  r.method = m;
  r.engine = std::move(engine);
  r.resolution_insufficient = r.error_estimate > q.target_rel_err * std::abs(r.value);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// (G/2) ∬ Δρ(x) Δρ(y) / |x - y| for the superposition.
inline OracleResult dp_energy(const SuperposedPair& p, const QuadratureSpec& q = {}) {
  p.validate();
  q.validate();
  auto t0 = std::chrono::steady_clock::now();
  if (q.method == Method::PotentialGrid) {
    GridResult g = potential_grid_energy(p);
    OracleResult r = finish({g.value}, q, q.method, "radial", t0);
    r.error_estimate = g.error;
    r.resolution_insufficient = g.error > q.target_rel_err * std::abs(g.value);
    return r;
  }
  if (q.method == Method::FieldForm) {
    FieldFormResult f = dp_energy_field_form(p);
    OracleResult r = finish({f.value}, q, q.method, "field", t0);
    r.error_estimate = f.error;
    r.resolution_insufficient = f.error > q.target_rel_err * std::abs(f.value);
    return r;
  }
  std::string engine;
  auto lv = level_sums(p, p, true, p, q, &engine);
  return finish(std::move(lv), q, q.method, engine, t0);
}

// Writes the effective point masses of the finest level as delimited text.
inline void dump_points(const SuperposedPair& p, const QuadratureSpec& q, std::ostream& out) {
  auto shapes = difference_shapes(p);
  bool disc = has_discrete(p.state1) || has_discrete(p.state2);
  Grid g = make_grid(shapes, disc, feature_length(p, q) / q.resolution);
  Discretized d = discretize(p, g);
  out << "# engine " << to_string(g.engine) << "\n";
  if (g.engine == Engine::Plate) {
    out << "z_m,areal_mass_kg_per_m2\n";
    for (auto& l : d.layers) out << l.z << "," << l.q << "\n";
  } else {
    out << "x_m,y_m,z_m,mass_kg,variance_m2\n";
    for (auto& pt : d.points)
      out << pt.x[0] << "," << pt.x[1] << "," << pt.x[2] << "," << pt.m << "," << pt.s2 << "\n";
  }
}

}  // namespace dps::oracle
