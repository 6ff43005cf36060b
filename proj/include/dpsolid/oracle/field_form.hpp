#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "dpsolid/constants.hpp"
#include "dpsolid/oracle/distribution.hpp"
#include "dpsolid/oracle/kernel.hpp"
#include "dpsolid/quadrature.hpp"

namespace dps::oracle {

namespace detail {

// ln(a + r) with r = √(a² + b²), stable for a < 0.
inline double log_plus(double a, double r, double b2) {
  if (a >= 0) return std::log(a + r);
  return std::log(b2 / (r - a));
}

}  // namespace detail

// Gravitational acceleration (per unit G) at p from a uniform box of unit
// density: g = ∫ (x' - p)/|x' - p|³ d³x'.
inline Vec3 box_field(const Box& b, const Vec3& p) {
  Vec3 g{};
  for (int c = 0; c < 8; ++c) {
    double X = ((c & 1) ? b.hi[0] : b.lo[0]) - p[0];
    double Y = ((c & 2) ? b.hi[1] : b.lo[1]) - p[1];
    double Z = ((c & 4) ? b.hi[2] : b.lo[2]) - p[2];
    double sgn = ((c & 1) ? 1.0 : -1.0) * ((c & 2) ? 1.0 : -1.0) * ((c & 4) ? 1.0 : -1.0);
    double r = std::sqrt(X * X + Y * Y + Z * Z);
    if (r == 0) continue;
    double lx = (Y * Y + Z * Z) > 0 || X > 0 ? detail::log_plus(X, r, Y * Y + Z * Z) : 0.0;
    double ly = (X * X + Z * Z) > 0 || Y > 0 ? detail::log_plus(Y, r, X * X + Z * Z) : 0.0;
    double lz = (X * X + Y * Y) > 0 || Z > 0 ? detail::log_plus(Z, r, X * X + Y * Y) : 0.0;
    // F(a, b, c) = a ln(b + r) + b ln(a + r) - c atan(ab/(cr)); g_c = -Σ sgn F
    double fz = (X != 0 ? X * ly : 0) + (Y != 0 ? Y * lx : 0) - (Z != 0 ? Z * std::atan(X * Y / (Z * r)) : 0);
    double fx = (Y != 0 ? Y * lz : 0) + (Z != 0 ? Z * ly : 0) - (X != 0 ? X * std::atan(Y * Z / (X * r)) : 0);
    double fy = (Z != 0 ? Z * lx : 0) + (X != 0 ? X * lz : 0) - (Y != 0 ? Y * std::atan(Z * X / (Y * r)) : 0);
    g[0] -= sgn * fx;
    g[1] -= sgn * fy;
    g[2] -= sgn * fz;
  }
  return g;
}

inline Vec3 ball_field(const Ball& b, double mass, const Vec3& p) {
  Vec3 d = b.center - p;
  double r = norm(d);
  if (r <= b.radius) return (mass / (b.radius * b.radius * b.radius)) * d;
  return (mass / (r * r * r)) * d;
}

inline Vec3 gaussian_field(const Vec3& c, double mass, double s, const Vec3& p) {
  Vec3 d = c - p;
  double r = norm(d), z = r / (std::sqrt(2.0) * s);
  if (z < 1e-3) return (mass * std::sqrt(2.0 / pi) / (3.0 * s * s * s)) * d;
  double enc = std::erf(z) - 2.0 / sqrt_pi * z * std::exp(-z * z);
  return (mass * enc / (r * r * r)) * d;
}

// Field of one branch, per unit G.
inline Vec3 branch_field(const MassDistribution& d, const Vec3& p) {
  Vec3 g{};
  for (auto& c : d.parts) {
    if (auto* u = std::get_if<UniformShape>(&c)) {
      if (auto* b = std::get_if<Box>(&u->shape))
        g = g + u->rho * box_field(*b, p);
      else if (auto* s = std::get_if<Ball>(&u->shape))
        g = g + ball_field(*s, u->rho * shape_volume(*s), p);
      else
        throw DomainError("field form has no closed-form field for cylinders");
    } else if (auto* v = std::get_if<VoxelGrid>(&c)) {
      for (int k = 0; k < v->n[2]; ++k)
        for (int j = 0; j < v->n[1]; ++j)
          for (int i = 0; i < v->n[0]; ++i) {
            double rho = v->at(i, j, k);
            if (rho == 0) continue;
            Vec3 lo = v->origin + v->h * Vec3{double(i), double(j), double(k)};
            g = g + rho * box_field(Box{lo, lo + Vec3{v->h, v->h, v->h}}, p);
          }
    } else if (auto* gc = std::get_if<GaussianCloud>(&c)) {
      for (auto& s : gc->sites) g = g + gaussian_field(s.center, s.mass, s.sigma, p);
    } else {
      for (auto& s : lattice_sites(std::get<GaussianLattice>(c)))
        g = g + gaussian_field(s.center, s.mass, s.sigma, p);
    }
  }
  return g;
}

inline void face_coords(const MassDistribution& d, int ax, std::vector<double>& out) {
  auto gauss = [&](double c, double s) {
    for (double k : {-4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0}) out.push_back(c + k * s);
  };
  for (auto& c : d.parts) {
    if (auto* u = std::get_if<UniformShape>(&c)) {
      Box b = bounding_box(u->shape);
      out.push_back(b.lo[ax]);
      out.push_back(b.hi[ax]);
      if (std::holds_alternative<Ball>(u->shape)) out.push_back(0.5 * (b.lo[ax] + b.hi[ax]));
    } else if (auto* v = std::get_if<VoxelGrid>(&c)) {
      for (int i = 0; i <= v->n[ax]; ++i) out.push_back(v->origin[ax] + i * v->h);
    } else if (auto* gc = std::get_if<GaussianCloud>(&c)) {
      for (auto& s : gc->sites) gauss(s.center[ax], s.sigma);
    } else {
      for (auto& s : lattice_sites(std::get<GaussianLattice>(c))) gauss(s.center[ax], s.sigma);
    }
  }
}

struct FieldFormResult {
  double value = 0, error = 0;
  double margin = 0;  // half-width of the integration box beyond the bodies, m
  int enlargements = 0;
};

// Panel edges along one axis: graded toward every face so the logarithmic
// edge behaviour of the fields is resolved, then geometric outward to the
// margin.
inline std::vector<double> axis_panels(std::vector<double> faces, double extent, double margin) {
  std::sort(faces.begin(), faces.end());
  double tiny = 1e-12 * extent;
  std::vector<double> f;
  for (double x : faces)
    if (f.empty() || x - f.back() > tiny) f.push_back(x);
  std::vector<double> e;
  for (size_t i = 0; i + 1 < f.size(); ++i) {
    double a = f[i], b = f[i + 1], L = b - a;
    e.push_back(a);
    if (L < extent / 100) {
      e.push_back(0.5 * (a + b));
      continue;
    }
    for (double t = 1.0 / 32; t < 0.5; t *= 2) e.push_back(a + t * L);
    e.push_back(0.5 * (a + b));
    for (double t = 0.25; t >= 1.0 / 32; t /= 2) e.push_back(b - t * L);
  }
  e.push_back(f.back());
  std::vector<double> lo, hi;
  for (double t = extent / 64; t < margin * 1.0000001; t *= 2) {
    lo.push_back(f.front() - t);
    hi.push_back(f.back() + t);
  }
  std::vector<double> out(lo.rbegin(), lo.rend());
  out.insert(out.end(), e.begin(), e.end());
  out.insert(out.end(), hi.begin(), hi.end());
  return out;
}

// (1/8πG) ∫ |g₁ - g₂|² d³x on a tensor Gauss-Legendre grid. The box around
// the bodies grows until the contribution of its outer half-shell falls below
// 1e-3 of the total. The error estimate compares two node counts per panel.
inline FieldFormResult dp_energy_field_form(const SuperposedPair& p, int max_enlargements = 6) {
  p.validate();
  std::array<std::vector<double>, 3> faces;
  double extent = 0;
  for (int ax = 0; ax < 3; ++ax) {
    face_coords(p.state1, ax, faces[ax]);
    face_coords(p.state2, ax, faces[ax]);
    auto [mn, mx] = std::minmax_element(faces[ax].begin(), faces[ax].end());
    extent = std::max(extent, *mx - *mn);
  }
  auto integrate = [&](double margin, int n, double& inner_part) {
    std::array<std::vector<double>, 3> x, w;
    std::array<std::vector<char>, 3> in;
    for (int ax = 0; ax < 3; ++ax) {
      auto e = axis_panels(faces[ax], extent, margin);
      const quad::Rule& R = quad::gauss_legendre(n);
      double f0 = e.front() + margin, f1 = e.back() - margin;  // body span on this axis
      for (size_t k = 0; k + 1 < e.size(); ++k) {
        double h = 0.5 * (e[k + 1] - e[k]), c = 0.5 * (e[k + 1] + e[k]);
        for (size_t i = 0; i < R.x.size(); ++i) {
          x[ax].push_back(c + h * R.x[i]);
          w[ax].push_back(h * R.w[i]);
          in[ax].push_back(c > f0 - 0.5 * margin && c < f1 + 0.5 * margin);
        }
      }
    }
    size_t nx = x[0].size();
    std::vector<double> inner(nx, 0.0);
    double total = ordered_sum(nx, [&](size_t i) {
      double acc = 0, acc_in = 0;
      for (size_t j = 0; j < x[1].size(); ++j)
        for (size_t k = 0; k < x[2].size(); ++k) {
          Vec3 q{x[0][i], x[1][j], x[2][k]};
          Vec3 d = branch_field(p.state1, q) - branch_field(p.state2, q);
          double v = w[0][i] * w[1][j] * w[2][k] * dot(d, d);
          acc += v;
          if (in[0][i] && in[1][j] && in[2][k]) acc_in += v;
        }
      inner[i] = acc_in;
      return acc;
    });
    inner_part = 0;
    for (double v : inner) inner_part += v;
    return total;
  };
  FieldFormResult r;
  double margin = 2.0 * extent;
  for (int it = 0;; ++it) {
    double in_part = 0;
    double v = integrate(margin, 4, in_part);
    if (v == 0 || std::abs(v - in_part) <= 1e-3 * std::abs(v)) {
      double dummy = 0;
      double lo = integrate(margin, 3, dummy);
      r.value = C::G / (8.0 * pi) * v;
      r.error = C::G / (8.0 * pi) * (std::abs(v - lo) + std::abs(v - in_part));
      r.margin = margin;
      r.enlargements = it;
      return r;
    }
    if (it >= max_enlargements) throw NumericalError("field-form grid too small after enlargement cap");
    margin *= 2.0;
  }
}

}  // namespace dps::oracle
