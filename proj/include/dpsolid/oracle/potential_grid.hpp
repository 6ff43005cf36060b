#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "dpsolid/constants.hpp"
#include "dpsolid/oracle/distribution.hpp"
#include "dpsolid/quadrature.hpp"

namespace dps::oracle {

// Spherically symmetric pieces (Gaussian nuclei, uniform balls) handled by
// radial quadrature: the potential of each piece comes from the shell theorem,
// and the mutual energy of two pieces is a 2-D integral of one density
// against the other's potential. No closed-form kernel is used.
struct RadialPiece {
  Vec3 c{};
  double m = 0;      // signed mass
  double width = 0;  // sigma for a Gaussian, radius for a ball
  bool gaussian = true;

  double density(double r) const {
    double a = std::abs(m);
    if (gaussian) {
      double s = width;
      return a / (std::pow(2.0 * pi, 1.5) * s * s * s) * std::exp(-0.5 * r * r / (s * s));
    }
    return r <= width ? 3.0 * a / (4.0 * pi * width * width * width) : 0.0;
  }
  double support() const { return gaussian ? 10.0 * width : width; }
  std::vector<double> breaks() const {
    if (!gaussian) return {0.0, width};
    std::vector<double> b{0.0};
    for (double k : {0.5, 1.0, 2.0, 3.0, 4.5, 6.5, 10.0}) b.push_back(k * width);
    return b;
  }

  // Potential of |m| at distance xi, per unit G (negative).
  double potential(double xi, int n) const {
    auto br = breaks();
    double inner = 0, outer = 0;
    for (size_t k = 0; k + 1 < br.size(); ++k) {
      double a = br[k], b = br[k + 1];
      if (xi >= b) {
        inner += quad::gl([&](double r) { return r * r * density(r); }, a, b, n);
      } else if (xi <= a) {
        outer += quad::gl([&](double r) { return r * density(r); }, a, b, n);
      } else {
        inner += quad::gl([&](double r) { return r * r * density(r); }, a, xi, n);
        outer += quad::gl([&](double r) { return r * density(r); }, xi, b, n);
      }
    }
    double M = 4.0 * pi * inner;
    if (xi <= 0) return -4.0 * pi * outer;
    return -(M / xi + 4.0 * pi * outer);
  }
};

inline std::vector<RadialPiece> radial_pieces(const MassDistribution& d, double sign) {
  std::vector<RadialPiece> out;
  for (auto& c : d.parts) {
    if (auto* g = std::get_if<GaussianCloud>(&c)) {
      for (auto& s : g->sites) out.push_back({s.center, sign * s.mass, s.sigma, true});
    } else if (auto* L = std::get_if<GaussianLattice>(&c)) {
      for (auto& s : lattice_sites(*L)) out.push_back({s.center, sign * s.mass, s.sigma, true});
    } else if (auto* u = std::get_if<UniformShape>(&c); u && std::holds_alternative<Ball>(u->shape)) {
      const Ball& b = std::get<Ball>(u->shape);
      out.push_back({b.center, sign * u->rho * shape_volume(b), b.radius, false});
    } else {
      throw DomainError("the potential-grid method handles Gaussian nuclei and uniform balls only");
    }
  }
  return out;
}

// ∫ρ_a Φ_b d³x per unit G.
inline double mutual_integral(const RadialPiece& a, const RadialPiece& b, int n) {
  double D = norm(b.c - a.c);
  auto ab = a.breaks();
  auto bb = b.breaks();
  auto inner = [&](double r) {
    if (r == 0) return 2.0 * b.potential(D, n);
    if (D < 1e-12 * (a.support() + b.support())) return 2.0 * b.potential(r, n);
    // ∫_{-1}^{1} Φ(ξ) dμ = (1/(rD)) ∫_{|r-D|}^{r+D} Φ(ξ) ξ dξ
    double lo = std::abs(r - D), hi = r + D;
    std::vector<double> br{lo};
    for (double x : bb)
      if (x > lo && x < hi) br.push_back(x);
    br.push_back(hi);
    double s = quad::gl_panels([&](double xi) { return b.potential(xi, n) * xi; }, br, n);
    return s / (r * D);
  };
  double s = 0;
  for (size_t k = 0; k + 1 < ab.size(); ++k)
    s += quad::gl([&](double r) { return r * r * a.density(r) * inner(r); }, ab[k], ab[k + 1], n);
  return 2.0 * pi * s;
}

struct GridResult {
  double value = 0, error = 0;
};

inline GridResult potential_grid_energy(const SuperposedPair& p, int n = 16) {
  auto pieces = radial_pieces(p.state1, +1.0);
  auto neg = radial_pieces(p.state2, -1.0);
  pieces.insert(pieces.end(), neg.begin(), neg.end());
  auto total = [&](int order) {
    double e = 0;
    for (size_t i = 0; i < pieces.size(); ++i)
      for (size_t j = 0; j < pieces.size(); ++j) {
        double sgn = (pieces[i].m > 0) == (pieces[j].m > 0) ? 1.0 : -1.0;
        e += sgn * mutual_integral(pieces[i], pieces[j], order);
      }
    return -0.5 * C::G * e;
  };
  double a = total(n), b = total(n + 8);
  return {b, std::abs(a - b)};
}

}  // namespace dps::oracle
