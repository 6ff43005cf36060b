#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "dpsolid/constants.hpp"
#include "dpsolid/oracle/geometry.hpp"

namespace dps::oracle {

// A signed point mass smeared as an isotropic Gaussian of variance s2 per axis.
struct Point {
  Vec3 x{};
  double m = 0;
  double s2 = 0;
};

// Interaction kernel 1/r between two Gaussians with summed variance S,
// i.e. erf(r/√(2S))/r. Beyond six widths erf is 1 to double precision.
struct Kernel {
  double softening = 0;

  double operator()(double r, double S) const {
    if (softening > 0) return 1.0 / std::sqrt(r * r + softening * softening);
    if (S <= 0) return 1.0 / r;
    double a = std::sqrt(2.0 * S);
    if (r > 6.0 * a) return 1.0 / r;
    if (r < 1e-8 * a) return std::sqrt(2.0 / (pi * S));
    return std::erf(r / a) / r;
  }

  // dK/dr.
  double derivative(double r, double S) const {
    if (softening > 0) {
      double q = r * r + softening * softening;
      return -r / (q * std::sqrt(q));
    }
    if (S <= 0) return -1.0 / (r * r);
    double a = std::sqrt(2.0 * S);
    if (r > 6.0 * a) return -1.0 / (r * r);
    if (r < 1e-6 * a) return -4.0 * r / (3.0 * sqrt_pi * a * a * a);
    double z = r / a;
    return 2.0 / (sqrt_pi * a) * std::exp(-z * z) / r - std::erf(z) / (r * r);
  }
};

inline unsigned worker_count() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

// Sums fn(k) for k in [0, n_chunks). Chunk results are stored by index and
// added in order, so the total does not depend on thread scheduling.
template <class F>
double ordered_sum(size_t n_chunks, F&& fn) {
  std::vector<double> part(n_chunks, 0.0);
  unsigned nt = std::min<size_t>(worker_count(), n_chunks);
  if (nt <= 1) {
    for (size_t k = 0; k < n_chunks; ++k) part[k] = fn(k);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t)
      pool.emplace_back([&] {
        for (size_t k; (k = next.fetch_add(1)) < n_chunks;) part[k] = fn(k);
      });
    for (auto& th : pool) th.join();
  }
  double s = 0, c = 0;  // Neumaier
  for (double v : part) {
    double t = s + v;
    c += std::abs(s) >= std::abs(v) ? (s - t) + v : (v - t) + s;
    s = t;
  }
  return s + c;
}

}  // namespace dps::oracle
