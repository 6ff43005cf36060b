#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "dpsolid/constants.hpp"
#include "dpsolid/error.hpp"
#include "dpsolid/materials.hpp"
#include "dpsolid/quadrature.hpp"

namespace dps {

// f_σ(x) = 1 - (√π/x) erf(x/2): the normalised mutual work of two
// identical Gaussian nuclei separated by x standard deviations.
// Below x = 0.1 the Taylor series is summed instead; it is exact to
// rounding there and avoids the cancellation in 1 - (...).
inline double f_sigma(double x) {
  if (!(x >= 0.0)) throw InvalidInput("f_sigma needs x >= 0");
  if (std::isinf(x)) return 1.0;
  if (x < 0.1) {
    double x2 = x * x;
    return x2 * (1.0 / 12 - x2 * (1.0 / 160 - x2 * (1.0 / 2688 - x2 * (1.0 / 55296 - x2 / 1351680.0))));
  }
  return 1.0 - sqrt_pi / x * std::erf(0.5 * x);
}

inline double nucleus_dp_energy(double m, double sigma, double ds) {
  if (!(m > 0.0) || !(sigma > 0.0)) throw InvalidInput("nucleus mass and width must be positive");
  if (!(ds >= 0.0)) throw InvalidInput("displacement must be >= 0");
  return C::G * m * m / (sqrt_pi * sigma) * f_sigma(ds / sigma);
}

enum class GeometryCase { DisplacedPlate, ExtendedPlate, ExtendedRod, ExtendedSphere };
enum class Model { PenroseFull, DiosiSmeared };
enum class Profile { Delta, Uniform, LinearRadial, QuadraticRadial };
enum class Regime { SmallDisplacement, Intermediate, LargeDisplacement };

inline const char* to_string(GeometryCase g) {
  switch (g) {
    case GeometryCase::DisplacedPlate: return "displaced_plate";
    case GeometryCase::ExtendedPlate: return "extended_plate";
    case GeometryCase::ExtendedRod: return "extended_rod";
    case GeometryCase::ExtendedSphere: return "extended_sphere";
  }
  return "?";
}

inline const char* to_string(Model m) {
  return m == Model::PenroseFull ? "penrose" : "diosi";
}

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::SmallDisplacement: return "small";
    case Regime::Intermediate: return "intermediate";
    case Regime::LargeDisplacement: return "large";
  }
  return "?";
}

inline double geometric_factor(GeometryCase g) {
  switch (g) {
    case GeometryCase::DisplacedPlate: return 1.0;
    case GeometryCase::ExtendedPlate: return 1.0 / 3.0;
    case GeometryCase::ExtendedRod: return 0.5;
    case GeometryCase::ExtendedSphere: return 0.6;
  }
  return 0.0;
}

// How the local displacement u·Δs is distributed over the nuclei: all at Δs
// for a rigid shift, uniform in u for a plate under linear strain, 2u du for
// radial rod expansion, 3u² du for a sphere.
inline Profile profile_of(GeometryCase g) {
  switch (g) {
    case GeometryCase::DisplacedPlate: return Profile::Delta;
    case GeometryCase::ExtendedPlate: return Profile::Uniform;
    case GeometryCase::ExtendedRod: return Profile::LinearRadial;
    case GeometryCase::ExtendedSphere: return Profile::QuadraticRadial;
  }
  return Profile::Delta;
}

// ⟨f_σ(u x)⟩ over the profile measure. Written as (1/x)∫₀^x w(t/x) f(t) dt
// and integrated on dyadic panels, so large x costs only log2(x) panels.
inline double averaged_f(Profile p, double x) {
  if (!(x >= 0.0)) throw InvalidInput("averaged_f needs x >= 0");
  if (p == Profile::Delta) return f_sigma(x);
  if (x == 0.0) return 0.0;
  auto w = [p](double u) {
    switch (p) {
      case Profile::Uniform: return 1.0;
      case Profile::LinearRadial: return 2.0 * u;
      case Profile::QuadraticRadial: return 3.0 * u * u;
      default: return 1.0;
    }
  };
  std::vector<double> br{0.0};
  for (double b = 1.0; b < x; b *= 2.0) br.push_back(b);
  br.push_back(x);
  double s = quad::gl_panels([&](double t) { return w(t / x) * f_sigma(t); }, br, 24);
  return s / x;
}

// Printed large-x geometric functions for the plates; rods and spheres use
// the profile average, which is what those closed forms approximate.
inline double geometric_function(GeometryCase g, double x) {
  if (!(x > 4.0))
    throw DomainError("geometric_function is defined for x > 4; use total_energy below that");
  switch (g) {
    case GeometryCase::DisplacedPlate: return 1.0 - sqrt_pi / x;
    case GeometryCase::ExtendedPlate:
      return 1.0 - (2.0 + 0.5 * sqrt_pi - sqrt_pi * std::log(4.0)) / x - sqrt_pi * std::log(x) / x;
    default: return averaged_f(profile_of(g), x);
  }
}

struct SuperposedSolid {
  GeometryCase geometry = GeometryCase::DisplacedPlate;
  DerivedMaterial material;
  double volume = 0.0;        // m^3
  double displacement = 0.0;  // m
  Model model = Model::PenroseFull;
};

struct EnergyBreakdown {
  double short_distance = 0.0;
  double long_distance = 0.0;
  double total = 0.0;
  Regime regime = Regime::SmallDisplacement;
  double chi = 0.0;
  double xi = 0.0;
  std::vector<std::string> warnings;
};

inline double chi_factor(const DerivedMaterial& m) {
  double r = m.g_bar / m.sigma;
  return 24.0 * pi * sqrt_pi / (m.q_hat * r * r * r);
}

inline double xi_factor(const DerivedMaterial& m) {
  return 2.0 * pi * sqrt_pi / (m.q_hat * m.g_bar / m.sigma);
}

inline void check_solid(const SuperposedSolid& s) {
  if (!(s.volume > 0.0)) throw InvalidInput("volume must be positive");
  if (!(s.displacement >= 0.0)) throw InvalidInput("displacement must be >= 0");
  if (!(s.material.sigma > 0.0) || !(s.material.rho > 0.0))
    throw InvalidInput("material must be derived before use");
}

// T̄·V·⟨f_σ⟩(Δs/σ). The average is evaluated exactly for every Δs, which
// reduces to α/12·x² for small x and to F_geo(x) for large x.
inline double short_distance_energy(const SuperposedSolid& s) {
  check_solid(s);
  if (s.model == Model::DiosiSmeared) return 0.0;
  double x = s.displacement / s.material.sigma;
  return s.material.T_G_S * s.volume * averaged_f(profile_of(s.geometry), x);
}

inline double long_distance_energy(GeometryCase g, double ds, double rho, double V) {
  if (!(ds >= 0.0) || !(rho > 0.0) || !(V > 0.0)) throw InvalidInput("bad long-distance arguments");
  return 2.0 * pi * geometric_factor(g) * C::G * V * rho * rho * ds * ds;
}

inline Regime classify(const DerivedMaterial& m, double ds) {
  if (ds <= m.sigma) return Regime::SmallDisplacement;
  if (ds < m.g_bar) return Regime::Intermediate;
  return Regime::LargeDisplacement;
}

inline EnergyBreakdown total_energy(const SuperposedSolid& s) {
  check_solid(s);
  EnergyBreakdown b;
  b.chi = chi_factor(s.material);
  b.xi = xi_factor(s.material);
  b.regime = classify(s.material, s.displacement);
  b.short_distance = short_distance_energy(s);
  b.long_distance = long_distance_energy(s.geometry, s.displacement, s.material.rho, s.volume);
  b.total = b.short_distance + b.long_distance;
  if (s.displacement >= 0.01 * std::cbrt(s.volume))
    b.warnings.push_back("displacement is not small against the body size; the continuum term is "
                         "a leading-order estimate");
  return b;
}

// Three-band estimate. Band edges use a factor of 10 for "much smaller" and
// "much larger".
inline double rule_of_thumb_energy(const SuperposedSolid& s) {
  check_solid(s);
  const auto& m = s.material;
  double ds = s.displacement, a = geometric_factor(s.geometry);
  double base = m.T_G_S * s.volume;
  if (10.0 * ds <= m.sigma) {
    double x = ds / m.sigma;
    return a / 12.0 * base * x * x;
  }
  if (ds > 5.0 * m.sigma && ds <= m.g_bar) return base;
  if (ds >= 10.0 * m.g_bar) {
    double y = ds / m.g_bar;
    return a * xi_factor(m) * base * y * y;
  }
  throw AmbiguousBand("displacement lies between the rule-of-thumb bands; use total_energy");
}

inline double lifetime(double E) {
  if (!(E >= 0.0)) throw InvalidInput("energy must be >= 0");
  if (E == 0.0) return std::numeric_limits<double>::infinity();
  return C::hbar / E;
}

}  // namespace dps
