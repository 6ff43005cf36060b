#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <variant>
#include <vector>

#include "dpsolid/constants.hpp"
#include "dpsolid/error.hpp"

namespace dps::oracle {

using Vec3 = std::array<double, 3>;

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

struct Box {
  Vec3 lo{}, hi{};
};

// Circular cylinder with its axis along z.
struct Cylinder {
  double cx = 0, cy = 0, radius = 0, z0 = 0, z1 = 0;
};

struct Ball {
  Vec3 center{};
  double radius = 0;
};

using Shape = std::variant<Box, Cylinder, Ball>;

inline double shape_volume(const Shape& s) {
  return std::visit(
      [](auto&& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Box>)
          return (v.hi[0] - v.lo[0]) * (v.hi[1] - v.lo[1]) * (v.hi[2] - v.lo[2]);
        else if constexpr (std::is_same_v<T, Cylinder>)
          return pi * v.radius * v.radius * (v.z1 - v.z0);
        else
          return 4.0 / 3.0 * pi * v.radius * v.radius * v.radius;
      },
      s);
}

inline Box bounding_box(const Shape& s) {
  return std::visit(
      [](auto&& v) -> Box {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Box>)
          return v;
        else if constexpr (std::is_same_v<T, Cylinder>)
          return Box{{v.cx - v.radius, v.cy - v.radius, v.z0}, {v.cx + v.radius, v.cy + v.radius, v.z1}};
        else
          return Box{v.center - Vec3{v.radius, v.radius, v.radius},
                     v.center + Vec3{v.radius, v.radius, v.radius}};
      },
      s);
}

inline Vec3 shape_center(const Shape& s) {
  Box b = bounding_box(s);
  return 0.5 * (b.lo + b.hi);
}

inline double min_feature(const Shape& s) {
  return std::visit(
      [](auto&& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Box>)
          return std::min({v.hi[0] - v.lo[0], v.hi[1] - v.lo[1], v.hi[2] - v.lo[2]});
        else if constexpr (std::is_same_v<T, Cylinder>)
          return std::min(2.0 * v.radius, v.z1 - v.z0);
        else
          return 2.0 * v.radius;
      },
      s);
}

inline void validate_shape(const Shape& s) {
  std::visit(
      [](auto&& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Box>) {
          for (int k = 0; k < 3; ++k)
            if (!(v.hi[k] > v.lo[k])) throw InvalidInput("box must have positive extent");
        } else if constexpr (std::is_same_v<T, Cylinder>) {
          if (!(v.radius > 0) || !(v.z1 > v.z0)) throw InvalidInput("bad cylinder");
        } else {
          if (!(v.radius > 0)) throw InvalidInput("ball radius must be positive");
        }
      },
      s);
}

inline Shape translated(const Shape& s, const Vec3& d) {
  return std::visit(
      [&](auto v) -> Shape {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Box>) {
          v.lo = v.lo + d;
          v.hi = v.hi + d;
        } else if constexpr (std::is_same_v<T, Cylinder>) {
          v.cx += d[0];
          v.cy += d[1];
          v.z0 += d[2];
          v.z1 += d[2];
        } else {
          v.center = v.center + d;
        }
        return v;
      },
      s);
}

struct Interval {
  double a = 0, b = 0;
};

// The intersection of the shape with the line through p parallel to axis ax.
inline std::optional<Interval> chord(const Shape& s, int ax, const Vec3& p) {
  return std::visit(
      [&](auto&& v) -> std::optional<Interval> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Box>) {
          for (int k = 0; k < 3; ++k)
            if (k != ax && (p[k] < v.lo[k] || p[k] > v.hi[k])) return std::nullopt;
          return Interval{v.lo[ax], v.hi[ax]};
        } else if constexpr (std::is_same_v<T, Cylinder>) {
          if (ax == 2) {
            double dx = p[0] - v.cx, dy = p[1] - v.cy;
            if (dx * dx + dy * dy > v.radius * v.radius) return std::nullopt;
            return Interval{v.z0, v.z1};
          }
          if (p[2] < v.z0 || p[2] > v.z1) return std::nullopt;
          int t = ax == 0 ? 1 : 0;
          double c_ax = ax == 0 ? v.cx : v.cy, c_t = t == 0 ? v.cx : v.cy;
          double dt = p[t] - c_t, q = v.radius * v.radius - dt * dt;
          if (q < 0) return std::nullopt;
          double half = std::sqrt(q);
          return Interval{c_ax - half, c_ax + half};
        } else {
          double q = v.radius * v.radius;
          for (int k = 0; k < 3; ++k)
            if (k != ax) q -= (p[k] - v.center[k]) * (p[k] - v.center[k]);
          if (q < 0) return std::nullopt;
          double half = std::sqrt(q);
          return Interval{v.center[ax] - half, v.center[ax] + half};
        }
      },
      s);
}

// Coordinates along axis t where the chord length stops being smooth.
inline void transverse_breaks(const Shape& s, int t, std::vector<double>& out) {
  std::visit(
      [&](auto&& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Box>) {
          out.push_back(v.lo[t]);
          out.push_back(v.hi[t]);
        } else if constexpr (std::is_same_v<T, Cylinder>) {
          if (t == 2) {
            out.push_back(v.z0);
            out.push_back(v.z1);
          } else {
            double c = t == 0 ? v.cx : v.cy;
            out.push_back(c - v.radius);
            out.push_back(c + v.radius);
          }
        } else {
          out.push_back(v.center[t] - v.radius);
          out.push_back(v.center[t] + v.radius);
        }
      },
      s);
}

inline bool contains(const Shape& s, const Vec3& p) {
  return std::visit(
      [&](auto&& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Box>) {
          for (int k = 0; k < 3; ++k)
            if (p[k] < v.lo[k] || p[k] > v.hi[k]) return false;
          return true;
        } else if constexpr (std::is_same_v<T, Cylinder>) {
          double dx = p[0] - v.cx, dy = p[1] - v.cy;
          return p[2] >= v.z0 && p[2] <= v.z1 && dx * dx + dy * dy <= v.radius * v.radius;
        } else {
          Vec3 d = p - v.center;
          return dot(d, d) <= v.radius * v.radius;
        }
      },
      s);
}

enum class Overlap { Outside, Inside, Partial };

// Classifies an axis-aligned cell against a convex shape.
inline Overlap classify_cell(const Shape& s, const Vec3& lo, const Vec3& hi) {
  Box bb = bounding_box(s);
  for (int k = 0; k < 3; ++k)
    if (hi[k] <= bb.lo[k] || lo[k] >= bb.hi[k]) return Overlap::Outside;
  if (auto* ball = std::get_if<Ball>(&s)) {
    double d2 = 0;
    for (int k = 0; k < 3; ++k) {
      double c = std::clamp(ball->center[k], lo[k], hi[k]) - ball->center[k];
      d2 += c * c;
    }
    if (d2 >= ball->radius * ball->radius) return Overlap::Outside;
  }
  if (auto* cyl = std::get_if<Cylinder>(&s)) {
    double dx = std::clamp(cyl->cx, lo[0], hi[0]) - cyl->cx;
    double dy = std::clamp(cyl->cy, lo[1], hi[1]) - cyl->cy;
    if (dx * dx + dy * dy >= cyl->radius * cyl->radius) return Overlap::Outside;
  }
  for (int c = 0; c < 8; ++c) {
    Vec3 p{(c & 1) ? hi[0] : lo[0], (c & 2) ? hi[1] : lo[1], (c & 4) ? hi[2] : lo[2]};
    if (!contains(s, p)) return Overlap::Partial;
  }
  return Overlap::Inside;
}

inline bool is_curved(const Shape& s) { return !std::holds_alternative<Box>(s); }

}  // namespace dps::oracle
