#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "dpsolid/oracle/distribution.hpp"
#include "dpsolid/oracle/kernel.hpp"
#include "dpsolid/quadrature.hpp"

namespace dps::oracle {

struct SignedShape {
  Shape shape;
  double rho = 0;  // signed density
};

inline void collect_shapes(const MassDistribution& d, double sign, std::vector<SignedShape>& out) {
  for (auto& c : d.parts)
    if (auto* u = std::get_if<UniformShape>(&c)) out.push_back({u->shape, sign * u->rho});
}

inline std::vector<SignedShape> difference_shapes(const SuperposedPair& p) {
  std::vector<SignedShape> s;
  collect_shapes(p.state1, +1.0, s);
  collect_shapes(p.state2, -1.0, s);
  return s;
}

// Gaussian and voxel components are already discrete.
inline void discrete_points(const MassDistribution& d, double sign, std::vector<Point>& out) {
  for (auto& c : d.parts) {
    if (auto* g = std::get_if<GaussianCloud>(&c)) {
      for (auto& s : g->sites) out.push_back({s.center, sign * s.mass, s.sigma * s.sigma});
    } else if (auto* L = std::get_if<GaussianLattice>(&c)) {
      for (auto& s : lattice_sites(*L)) out.push_back({s.center, sign * s.mass, s.sigma * s.sigma});
    } else if (auto* v = std::get_if<VoxelGrid>(&c)) {
      double vol = v->h * v->h * v->h, s2 = v->h * v->h / 12.0;
      for (int k = 0; k < v->n[2]; ++k)
        for (int j = 0; j < v->n[1]; ++j)
          for (int i = 0; i < v->n[0]; ++i) {
            double rho = v->at(i, j, k);
            if (rho == 0) continue;
            Vec3 x = v->origin + v->h * Vec3{i + 0.5, j + 0.5, k + 0.5};
            out.push_back({x, sign * rho * vol, s2});
          }
    }
  }
}

inline bool has_discrete(const MassDistribution& d) {
  for (auto& c : d.parts)
    if (!std::holds_alternative<UniformShape>(c)) return true;
  return false;
}

inline bool has_shapes(const MassDistribution& d) {
  for (auto& c : d.parts)
    if (std::holds_alternative<UniformShape>(c)) return true;
  return false;
}

// Positive and negative parts of the net density inside one cell, as masses
// and first moments.
struct CellSplit {
  double mp = 0, mn = 0;
  Vec3 cp{}, cn{};
};

// Integrates the net density of the signed shapes over [lo, hi]. Chords along
// one axis are exact; the two transverse axes use Gauss-Legendre panels split
// wherever a chord end moves non-smoothly. For curved shapes the chord axis is
// the one closest to the surface normal, which keeps the chord ends smooth.
inline CellSplit integrate_cell(const std::vector<SignedShape>& shapes, const Vec3& lo, const Vec3& hi) {
  CellSplit out;
  std::vector<const SignedShape*> rel;
  double uniform = 0;
  bool partial = false;
  const SignedShape* curved = nullptr;
  for (auto& s : shapes) {
    Overlap o = classify_cell(s.shape, lo, hi);
    if (o == Overlap::Outside) continue;
    if (o == Overlap::Inside) {
      uniform += s.rho;
    } else {
      partial = true;
      if (!curved && is_curved(s.shape)) curved = &s;
    }
    rel.push_back(&s);
  }
  Vec3 mid = 0.5 * (lo + hi);
  double vol = (hi[0] - lo[0]) * (hi[1] - lo[1]) * (hi[2] - lo[2]);
  if (!partial) {
    if (uniform > 0) {
      out.mp = uniform * vol;
      out.cp = out.mp * mid;
    } else if (uniform < 0) {
      out.mn = -uniform * vol;
      out.cn = out.mn * mid;
    }
    return out;
  }

  int ax = 2;
  if (curved) {
    Vec3 off = mid - shape_center(curved->shape);
    if (std::holds_alternative<Cylinder>(curved->shape)) {
      ax = std::abs(off[0]) >= std::abs(off[1]) ? 0 : 1;
    } else {
      ax = 0;
      for (int k = 1; k < 3; ++k)
        if (std::abs(off[k]) > std::abs(off[ax])) ax = k;
    }
  }
  int t1 = (ax + 1) % 3, t2 = (ax + 2) % 3;
  auto breaks = [&](int t) {
    std::vector<double> b{lo[t], hi[t]}, raw;
    for (auto* s : rel) transverse_breaks(s->shape, t, raw);
    for (double v : raw)
      if (v > lo[t] && v < hi[t]) b.push_back(v);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
  };
  std::vector<double> b1 = breaks(t1), b2 = breaks(t2);
  const quad::Rule& R = quad::gauss_legendre(curved ? 8 : 2);

  std::vector<double> ev;
  std::vector<Interval> ch(rel.size());
  std::vector<char> has(rel.size());
  for (size_t p1 = 0; p1 + 1 < b1.size(); ++p1) {
    double h1 = 0.5 * (b1[p1 + 1] - b1[p1]), c1 = 0.5 * (b1[p1 + 1] + b1[p1]);
    for (size_t i1 = 0; i1 < R.x.size(); ++i1) {
      double u = c1 + h1 * R.x[i1], wu = h1 * R.w[i1];
      for (size_t p2 = 0; p2 + 1 < b2.size(); ++p2) {
        double h2 = 0.5 * (b2[p2 + 1] - b2[p2]), c2 = 0.5 * (b2[p2 + 1] + b2[p2]);
        for (size_t i2 = 0; i2 < R.x.size(); ++i2) {
          double v = c2 + h2 * R.x[i2], w = wu * h2 * R.w[i2];
          Vec3 p{};
          p[t1] = u;
          p[t2] = v;
          p[ax] = mid[ax];
          ev.assign({lo[ax], hi[ax]});
          for (size_t k = 0; k < rel.size(); ++k) {
            auto c = chord(rel[k]->shape, ax, p);
            has[k] = c.has_value();
            if (!c) continue;
            ch[k] = {std::clamp(c->a, lo[ax], hi[ax]), std::clamp(c->b, lo[ax], hi[ax])};
            ev.push_back(ch[k].a);
            ev.push_back(ch[k].b);
          }
          std::sort(ev.begin(), ev.end());
          for (size_t e = 0; e + 1 < ev.size(); ++e) {
            double a = ev[e], b = ev[e + 1];
            if (!(b > a)) continue;
            double m = 0.5 * (a + b), net = 0;
            for (size_t k = 0; k < rel.size(); ++k)
              if (has[k] && ch[k].a <= m && m <= ch[k].b) net += rel[k]->rho;
            if (net == 0) continue;
            double dm = std::abs(net) * (b - a) * w;
            Vec3 mom{};
            mom[ax] = std::abs(net) * 0.5 * (b * b - a * a) * w;
            mom[t1] = u * dm;
            mom[t2] = v * dm;
            if (net > 0) {
              out.mp += dm;
              out.cp = out.cp + mom;
            } else {
              out.mn += dm;
              out.cn = out.cn + mom;
            }
          }
        }
      }
    }
  }
  return out;
}

inline void push_split(const CellSplit& c, double s2, std::vector<Point>& out) {
  if (c.mp > 0) out.push_back({(1.0 / c.mp) * c.cp, c.mp, s2});
  if (c.mn > 0) out.push_back({(1.0 / c.mn) * c.cn, -c.mn, s2});
}

// Cubic cells of side h aligned to anchor, covering every shape.
inline std::vector<Point> voxelize(const std::vector<SignedShape>& shapes, double h, const Vec3& anchor) {
  std::vector<Point> pts;
  if (shapes.empty()) return pts;
  Box bb = bounding_box(shapes[0].shape);
  for (auto& s : shapes) {
    Box b = bounding_box(s.shape);
    for (int k = 0; k < 3; ++k) {
      bb.lo[k] = std::min(bb.lo[k], b.lo[k]);
      bb.hi[k] = std::max(bb.hi[k], b.hi[k]);
    }
  }
  std::array<long, 3> i0{}, i1{};
  for (int k = 0; k < 3; ++k) {
    i0[k] = static_cast<long>(std::floor((bb.lo[k] - anchor[k]) / h + 1e-9));
    i1[k] = static_cast<long>(std::ceil((bb.hi[k] - anchor[k]) / h - 1e-9));
  }
  double s2 = h * h / 12.0;
  for (long k = i0[2]; k < i1[2]; ++k)
    for (long j = i0[1]; j < i1[1]; ++j)
      for (long i = i0[0]; i < i1[0]; ++i) {
        Vec3 lo = anchor + h * Vec3{double(i), double(j), double(k)};
        push_split(integrate_cell(shapes, lo, lo + Vec3{h, h, h}), s2, pts);
      }
  return pts;
}

inline double shortest_feature(const SuperposedPair& p) {
  double f = std::numeric_limits<double>::infinity();
  for (auto* d : {&p.state1, &p.state2})
    for (auto& c : d->parts)
      if (auto* u = std::get_if<UniformShape>(&c)) f = std::min(f, min_feature(u->shape));
  return f;
}

inline Vec3 grid_anchor(const std::vector<SignedShape>& shapes) {
  return shapes.empty() ? Vec3{} : bounding_box(shapes[0].shape).lo;
}

// Extruded layouts. A plate layout has every shape a box over one common
// lateral rectangle; a rod layout has every shape a cylinder with a common
// axis and common ends.
struct PlateLayout {
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
};

struct RodLayout {
  double cx = 0, cy = 0, z0 = 0, z1 = 0, r_max = 0;
};

inline bool close(double a, double b, double scale) { return std::abs(a - b) <= 1e-12 * scale; }

inline bool plate_layout(const std::vector<SignedShape>& s, PlateLayout& L) {
  if (s.empty()) return false;
  for (auto& x : s)
    if (!std::holds_alternative<Box>(x.shape)) return false;
  const Box& b0 = std::get<Box>(s[0].shape);
  L = {b0.lo[0], b0.hi[0], b0.lo[1], b0.hi[1]};
  double sc = std::max(b0.hi[0] - b0.lo[0], b0.hi[1] - b0.lo[1]);
  for (auto& x : s) {
    const Box& b = std::get<Box>(x.shape);
    if (!close(b.lo[0], L.x0, sc) || !close(b.hi[0], L.x1, sc) || !close(b.lo[1], L.y0, sc) ||
        !close(b.hi[1], L.y1, sc))
      return false;
  }
  return true;
}

inline bool rod_layout(const std::vector<SignedShape>& s, RodLayout& L) {
  if (s.empty()) return false;
  for (auto& x : s)
    if (!std::holds_alternative<Cylinder>(x.shape)) return false;
  const Cylinder& c0 = std::get<Cylinder>(s[0].shape);
  L = {c0.cx, c0.cy, c0.z0, c0.z1, 0};
  double sc = c0.z1 - c0.z0;
  for (auto& x : s) {
    const Cylinder& c = std::get<Cylinder>(x.shape);
    if (!close(c.cx, L.cx, sc) || !close(c.cy, L.cy, sc) || !close(c.z0, L.z0, sc) || !close(c.z1, L.z1, sc))
      return false;
    L.r_max = std::max(L.r_max, c.radius);
  }
  return true;
}

// One layer of a plate: signed mass per unit area at height z.
struct Layer {
  double z = 0, q = 0;
};

// Net areal density profile along z on cells of height h aligned to z_anchor.
inline std::vector<Layer> plate_profile(const std::vector<SignedShape>& s, double h, double z_anchor) {
  std::vector<Interval> iv;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (auto& x : s) {
    const Box& b = std::get<Box>(x.shape);
    iv.push_back({b.lo[2], b.hi[2]});
    lo = std::min(lo, b.lo[2]);
    hi = std::max(hi, b.hi[2]);
  }
  long k0 = static_cast<long>(std::floor((lo - z_anchor) / h + 1e-9));
  long k1 = static_cast<long>(std::ceil((hi - z_anchor) / h - 1e-9));
  std::vector<Layer> out;
  for (long k = k0; k < k1; ++k) {
    double a = z_anchor + k * h, b = a + h;
    std::vector<double> ev{a, b};
    for (auto& i : iv) {
      if (i.a > a && i.a < b) ev.push_back(i.a);
      if (i.b > a && i.b < b) ev.push_back(i.b);
    }
    std::sort(ev.begin(), ev.end());
    double mp = 0, zp = 0, mn = 0, zn = 0;
    for (size_t e = 0; e + 1 < ev.size(); ++e) {
      double u = ev[e], v = ev[e + 1];
      if (!(v > u)) continue;
      double m = 0.5 * (u + v), net = 0;
      for (size_t j = 0; j < s.size(); ++j)
        if (iv[j].a <= m && m <= iv[j].b) net += s[j].rho;
      double q = net * (v - u);
      if (q > 0) {
        mp += q;
        zp += q * m;
      } else if (q < 0) {
        mn -= q;
        zn -= q * m;
      }
    }
    if (mp > 0) out.push_back({zp / mp, mp});
    if (mn > 0) out.push_back({zn / mn, -mn});
  }
  return out;
}

// Cross-section of a rod layout: signed mass per unit length at (x, y),
// stored in Point::x[0..1] and Point::m.
inline std::vector<Point> rod_section(const std::vector<SignedShape>& s, const RodLayout& L, double h) {
  std::vector<Point> pts;
  long n = static_cast<long>(std::ceil(L.r_max / h - 1e-9));
  double zc = 0.5 * (L.z0 + L.z1), hz = std::min(h, 0.25 * (L.z1 - L.z0));
  for (long j = -n; j < n; ++j)
    for (long i = -n; i < n; ++i) {
      Vec3 lo{L.cx + i * h, L.cy + j * h, zc - 0.5 * hz};
      CellSplit c = integrate_cell(s, lo, lo + Vec3{h, h, hz});
      c.mp /= hz;
      c.mn /= hz;
      c.cp = (1.0 / hz) * c.cp;
      c.cn = (1.0 / hz) * c.cn;
      push_split(c, 0.0, pts);
    }
  return pts;
}

}  // namespace dps::oracle
