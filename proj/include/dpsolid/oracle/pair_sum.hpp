#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "dpsolid/constants.hpp"
#include "dpsolid/oracle/kernel.hpp"
#include "dpsolid/oracle/voxelize.hpp"

namespace dps::oracle {

// (G/2) Σ_i Σ_j m_i m_j K(r_ij) over one set of signed points, self terms included.
inline double self_sum(const std::vector<Point>& p, const Kernel& K) {
  const size_t n = p.size(), rows = 64;
  size_t chunks = (n + rows - 1) / rows;
  double s = ordered_sum(chunks, [&](size_t c) {
    double acc = 0;
    for (size_t i = c * rows; i < std::min(n, (c + 1) * rows); ++i) {
      const Point& a = p[i];
      double row = 0;
      for (size_t j = i + 1; j < n; ++j) {
        const Point& b = p[j];
        double dx = a.x[0] - b.x[0], dy = a.x[1] - b.x[1], dz = a.x[2] - b.x[2];
        row += b.m * K(std::sqrt(dx * dx + dy * dy + dz * dz), a.s2 + b.s2);
      }
      acc += a.m * (2.0 * row + a.m * K(0.0, 2.0 * a.s2));
    }
    return acc;
  });
  return 0.5 * C::G * s;
}

// (G/2) Σ_{i∈A} Σ_{j∈B} m_i m_j K(r_ij).
inline double cross_sum(const std::vector<Point>& A, const std::vector<Point>& B, const Kernel& K) {
  const size_t rows = 64;
  size_t chunks = (A.size() + rows - 1) / rows;
  double s = ordered_sum(chunks, [&](size_t c) {
    double acc = 0;
    for (size_t i = c * rows; i < std::min(A.size(), (c + 1) * rows); ++i) {
      const Point& a = A[i];
      double row = 0;
      for (const Point& b : B) {
        double dx = a.x[0] - b.x[0], dy = a.x[1] - b.x[1], dz = a.x[2] - b.x[2];
        row += b.m * K(std::sqrt(dx * dx + dy * dy + dz * dz), a.s2 + b.s2);
      }
      acc += a.m * row;
    }
    return acc;
  });
  return 0.5 * C::G * s;
}

// Merges (key, coefficient) pairs whose keys agree to within tol.
inline std::vector<std::pair<double, double>> merge_classes(std::vector<std::pair<double, double>> v,
                                                            double tol) {
  std::sort(v.begin(), v.end());
  std::vector<std::pair<double, double>> out;
  for (auto& [k, c] : v) {
    if (!out.empty() && k - out.back().first <= tol)
      out.back().second += c;
    else
      out.push_back({k, c});
  }
  return out;
}

// Plate: both sets are layers repeated on an nx×ny lateral lattice of cells
// hx×hy. Pairs of cells depend only on the lateral offset, which appears
// (nx-|i|)(ny-|j|) times; layer pairs are grouped by |Δz|.
inline double plate_sum(const std::vector<Layer>& A, const std::vector<Layer>& B, long nx, long ny,
                        double hx, double hy, double S, const Kernel& K) {
  double cell = hx * hy, hz_tol = 1e-9 * std::min(hx, hy);
  std::vector<std::pair<double, double>> raw;
  for (auto& a : A)
    for (auto& b : B) raw.push_back({std::abs(a.z - b.z), a.q * b.q * cell * cell});
  auto cls = merge_classes(std::move(raw), hz_tol);
  std::vector<double> dz2(cls.size()), cf(cls.size());
  double dz2_max = 0;
  for (size_t k = 0; k < cls.size(); ++k) {
    dz2[k] = cls[k].first * cls[k].first;
    cf[k] = cls[k].second;
    dz2_max = std::max(dz2_max, dz2[k]);
  }
  double far = S > 0 ? 36.0 * 2.0 * S : 0.0;  // r² beyond which erf = 1
  if (K.softening > 0) far = std::numeric_limits<double>::infinity();
  // Beyond 8·max|Δz| the layer sum is the series Σ_j b_j M_j / r^(2j+1) in the
  // moments M_j = Σ C Δz^(2j); six terms leave a relative error below 1e-11.
  constexpr double b[6] = {1.0, -0.5, 0.375, -0.3125, 0.2734375, -0.24609375};
  double M[6] = {};
  for (size_t k = 0; k < cf.size(); ++k) {
    double p = cf[k];
    for (int j = 0; j < 6; ++j, p *= dz2[k]) M[j] += b[j] * p;
  }
  double series = std::max(far, 64.0 * dz2_max);
  double s = ordered_sum(static_cast<size_t>(nx), [&](size_t ii) {
    long i = static_cast<long>(ii);
    double wi = double(nx - i) * (i ? 2.0 : 1.0), acc = 0;
    for (long j = 0; j < ny; ++j) {
      double w = wi * double(ny - j) * (j ? 2.0 : 1.0);
      double r2 = (i * hx) * (i * hx) + (j * hy) * (j * hy), t = 0;
      if (r2 > series) {
        double inv = 1.0 / r2;
        t = (M[0] + inv * (M[1] + inv * (M[2] + inv * (M[3] + inv * (M[4] + inv * M[5]))))) / std::sqrt(r2);
      } else if (r2 > far) {
        for (size_t k = 0; k < cf.size(); ++k) t += cf[k] / std::sqrt(r2 + dz2[k]);
      } else {
        for (size_t k = 0; k < cf.size(); ++k) t += cf[k] * K(std::sqrt(r2 + dz2[k]), S);
      }
      acc += w * t;
    }
    return acc;
  });
  return 0.5 * C::G * s;
}

// Rod: cross-section points (mass per length) repeated on n axial cells of
// length hz. Point pairs are grouped by their transverse distance.
inline double rod_sum(const std::vector<Point>& A, const std::vector<Point>& B, long n, double hz, double S,
                      const Kernel& K) {
  std::vector<std::pair<double, double>> raw;
  raw.reserve(A.size() * B.size());
  for (auto& a : A)
    for (auto& b : B) {
      double dx = a.x[0] - b.x[0], dy = a.x[1] - b.x[1];
      raw.push_back({dx * dx + dy * dy, a.m * b.m * hz * hz});
    }
  auto cls = merge_classes(std::move(raw), 1e-12 * hz * hz);
  const size_t per = 256;
  size_t chunks = (cls.size() + per - 1) / per;
  double s = ordered_sum(chunks, [&](size_t c) {
    double acc = 0;
    for (size_t k = c * per; k < std::min(cls.size(), (c + 1) * per); ++k) {
      double r2 = cls[k].first, t = 0;
      for (long d = 0; d < n; ++d) {
        double z = d * hz;
        t += double(n - d) * (d ? 2.0 : 1.0) * K(std::sqrt(r2 + z * z), S);
      }
      acc += cls[k].second * t;
    }
    return acc;
  });
  return 0.5 * C::G * s;
}

}  // namespace dps::oracle
