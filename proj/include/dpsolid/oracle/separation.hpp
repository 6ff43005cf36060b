#pragma once

#include <chrono>
#include <cmath>
#include <vector>

#include "dpsolid/oracle/dp_energy.hpp"

namespace dps::oracle {

// Positive point masses of a single distribution at cell size h.
inline std::vector<Point> mass_points(const MassDistribution& d, double h) {
  std::vector<SignedShape> shapes;
  collect_shapes(d, 1.0, shapes);
  std::vector<Point> pts = voxelize(shapes, h, grid_anchor(shapes));
  discrete_points(d, 1.0, pts);
  return pts;
}

// Component along n of the attraction between the points and a copy shifted
// by s·n, per unit G: F(s) = -Σ m_i m_j K'(r) (r·n)/r, r = x_j + s n - x_i.
inline double pull_force(const std::vector<Point>& p, const Vec3& n, double s, const Kernel& K) {
  const size_t rows = 64, N = p.size();
  size_t chunks = (N + rows - 1) / rows;
  Vec3 sh = s * n;
  return ordered_sum(chunks, [&](size_t c) {
    double acc = 0;
    for (size_t i = c * rows; i < std::min(N, (c + 1) * rows); ++i) {
      const Point& a = p[i];
      double row = 0;
      for (const Point& b : p) {
        Vec3 r = b.x + sh - a.x;
        double d = norm(r);
        if (d == 0) continue;
        row += b.m * K.derivative(d, a.s2 + b.s2) * dot(r, n) / d;
      }
      acc += a.m * row;
    }
    return -acc;
  });
}

// Pulling force on a continuous body from the analytic field of its unshifted
// copy, per unit G: the shifted body is voxelised and each cell feels the
// field at its centroid.
inline double field_pull(const MassDistribution& d, const Vec3& n, double s, double h) {
  auto pts = mass_points(translated(d, s * n), h);
  const size_t per = 256;
  return ordered_sum((pts.size() + per - 1) / per, [&](size_t c) {
    double acc = 0;
    for (size_t i = c * per; i < std::min(pts.size(), (c + 1) * per); ++i)
      acc -= pts[i].m * dot(branch_field(d, pts[i].x), n);
    return acc;
  });
}

// Work needed to pull a distribution apart from its own copy by ds:
// W = ∫₀^|ds| F(s) ds with F the mutual attraction along the pull. Gaussian
// nuclei use the exact pairwise force. Continuous bodies use the analytic
// field of one copy acting on the voxelised other, so the lattice of cells
// never slides over itself.
inline OracleResult separation_work(const MassDistribution& dist, const Vec3& ds, const QuadratureSpec& q = {}) {
  q.validate();
  for (auto& c : dist.parts) validate(c);
  auto t0 = std::chrono::steady_clock::now();
  double L = norm(ds);
  if (L == 0) return finish({0.0}, q, Method::PairwiseSum, "separation", t0);
  Vec3 n = (1.0 / L) * ds;
  bool shapes = has_shapes(dist);
  bool discrete = has_discrete(dist);
  if (shapes && discrete)
    throw DomainError("separation work needs either Gaussian nuclei or continuous bodies, not both");
  double f = q.feature;
  if (f <= 0) {
    f = std::numeric_limits<double>::infinity();
    for (auto& c : dist.parts)
      if (auto* u = std::get_if<UniformShape>(&c)) f = std::min(f, min_feature(u->shape));
  }
  Kernel K{q.softening};
  std::vector<double> levels;
  for (double r : resolution_levels(q.resolution)) {
    double w;
    if (shapes) {
      double h = f / r;
      w = quad::gl([&](double s) { return field_pull(dist, n, s, h); }, 0.0, L, 6);
    } else {
      auto pts = mass_points(dist, 1.0);
      w = quad::gl_panels([&](double s) { return pull_force(pts, n, s, K); }, {0.0, 0.5 * L, L}, 8);
    }
    levels.push_back(C::G * w);
    if (!shapes) break;
  }
  return finish(std::move(levels), q, Method::PairwiseSum, "separation", t0);
}

}  // namespace dps::oracle
