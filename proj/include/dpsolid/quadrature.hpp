#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/legendre.hpp>
#include <boost/math/tools/roots.hpp>

#include "dpsolid/error.hpp"

namespace dps::quad {

struct Rule {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;
};

// Gauss-Legendre rule of order n. Rules are built once and shared; the
// cache is guarded so concurrent first use is safe.
inline const Rule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Rule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) {
    if (n < 1) throw InvalidInput("Gauss-Legendre order must be >= 1");
    auto r = std::make_unique<Rule>();
    std::vector<double> z = boost::math::legendre_p_zeros<double>(n);  // z >= 0, ascending
    auto weight = [n](double xi) {
      double dp = boost::math::legendre_p_prime<double>(n, xi);
      return 2.0 / ((1.0 - xi * xi) * dp * dp);
    };
    for (auto it = z.rbegin(); it != z.rend(); ++it) {
      if (*it == 0.0) continue;
      r->x.push_back(-*it);
      r->w.push_back(weight(*it));
    }
    for (double xi : z) {
      r->x.push_back(xi);
      r->w.push_back(weight(xi));
    }
    slot = std::move(r);
  }
  return *slot;
}

// Fixed-order GL over [a, b].
template <class F>
double gl(F&& f, double a, double b, int n = 20) {
  const Rule& r = gauss_legendre(n);
  double h = 0.5 * (b - a), c = 0.5 * (a + b), s = 0.0;
  for (size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(c + h * r.x[i]);
  return s * h;
}

// Composite GL over consecutive breakpoints.
template <class F>
double gl_panels(F&& f, const std::vector<double>& breaks, int n = 20) {
  double s = 0.0;
  for (size_t i = 0; i + 1 < breaks.size(); ++i) s += gl(f, breaks[i], breaks[i + 1], n);
  return s;
}

struct Result {
  double value = 0.0;
  double error = 0.0;
};

// Adaptive Gauss-Kronrod (G7/K15) on [a, b]; b may be +infinity. Finite
// intervals are mapped onto [0, 1] first: on very short intervals the boost
// error test never passes and the recursion runs to max_depth everywhere.
template <class F>
Result adaptive(F&& f, double a, double b, double rel_tol = 1e-10, unsigned max_depth = 30) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  double err = 0.0;
  if (std::isinf(b)) {
    double v = GK::integrate(f, a, b, max_depth, rel_tol, &err);
    return {v, err};
  }
  double w = b - a;
  double v = GK::integrate([&](double u) { return f(a + w * u); }, 0.0, 1.0, max_depth, rel_tol, &err);
  return {v * w, std::abs(err * w)};
}

// Bisection on a bracketing interval. Stops when the bracket is narrower than
// rel_tol times its midpoint or after max_iter halvings.
template <class F>
double bisect(F&& f, double lo, double hi, double rel_tol, unsigned max_iter = 80) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) throw NumericalError("bisection interval does not bracket a root");
  std::uintmax_t iters = max_iter;
  auto tol = [rel_tol](double l, double h) { return std::abs(h - l) <= rel_tol * std::abs(0.5 * (l + h)); };
  auto [l, h] = boost::math::tools::bisect(f, lo, hi, tol, iters);
  return 0.5 * (l + h);
}

}  // namespace dps::quad
