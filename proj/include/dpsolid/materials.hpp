#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "dpsolid/constants.hpp"
#include "dpsolid/error.hpp"

namespace dps {

struct CompositionEntry {
  std::string element;
  double mass_u = 0.0;    // nucleus mass in u
  double fraction = 0.0;  // N_i / N
};

struct Composition {
  std::vector<CompositionEntry> entries;

  // Builds a composition from counts per formula unit, e.g. Al2O3 = {2, 3}.
  static Composition from_counts(
      const std::vector<std::tuple<std::string, double, double>>& counts) {
    double total = 0.0;
    for (auto& [el, m, n] : counts) total += n;
    Composition c;
    for (auto& [el, m, n] : counts) c.entries.push_back({el, m, n / total});
    c.validate();
    return c;
  }

  static Composition element(const std::string& el, double mass_u) {
    return Composition{{{el, mass_u, 1.0}}};
  }

  void validate() const {
    if (entries.empty()) throw InvalidInput("empty composition");
    double sum = 0.0;
    for (auto& e : entries) {
      if (!(e.mass_u > 0.0)) throw InvalidInput("nonpositive nucleus mass for " + e.element);
      if (!(e.fraction > 0.0)) throw InvalidInput("nonpositive fraction for " + e.element);
      sum += e.fraction;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw InvalidInput("composition fractions do not sum to 1");
  }

  bool single_element() const { return entries.size() == 1; }
};

struct Material {
  std::string name;
  Composition composition;
  double rho = 0.0;      // kg/m^3
  double theta_D = 0.0;  // K
  std::optional<double> v_par;    // m/s
  std::optional<double> v_perp;   // m/s
  std::optional<double> alpha_L;  // 1/K
  std::optional<double> rho_ohm;  // Ω·m
  std::optional<double> E_e;      // Pa
  std::optional<double> eps_r;
  std::optional<double> d33;  // m/V

  double need(const std::optional<double>& v, const char* field) const {
    if (!v) throw MissingProperty(name, field);
    return *v;
  }
};

struct DerivedMaterial {
  std::string name;
  double rho = 0.0;
  double m_bar = 0.0;  // kg
  double g_bar = 0.0;  // m
  double q_hat = 1.0;
  double sigma = 0.0;      // m
  double T_G_S = 0.0;      // J/m^3
  double temperature = 0;  // K
};

// Σ f_i m_i in kg.
inline double mean_mass(const Composition& c) {
  c.validate();
  double m = 0.0;
  for (auto& e : c.entries) m += e.fraction * e.mass_u;
  return m * C::u;
}

// Σ f_i m_i² / m̄². Exactly 1 for a single element.
inline double quadratic_mass_factor(const Composition& c) {
  c.validate();
  if (c.single_element()) return 1.0;
  double m1 = 0.0, m2 = 0.0;
  for (auto& e : c.entries) {
    m1 += e.fraction * e.mass_u;
    m2 += e.fraction * e.mass_u * e.mass_u;
  }
  return m2 / (m1 * m1);
}

inline double lattice_constant(double m_bar, double rho) { return std::cbrt(m_bar / rho); }

inline double sigma_debye(const Material& mat, double T) {
  if (!(mat.theta_D > 0.0)) throw MissingProperty(mat.name, "theta_D");
  if (!(T > 0.0)) throw InvalidInput("temperature must be positive");
  double m = mean_mass(mat.composition);
  return C::hbar * std::sqrt(3.0 * T / (m * C::k_B)) / (mat.theta_D);
}

// Debye cutoff from sound velocities. The velocity factor enters with a cube
// root, which is what follows from k_D = (6π²/ḡ³)^(1/3) and reproduces the
// tabulated σ_v values.
inline double sigma_sound(const Material& mat, double T) {
  if (!mat.v_par) throw MissingProperty(mat.name, "v_par");
  if (!(T > 0.0)) throw InvalidInput("temperature must be positive");
  double vl = *mat.v_par;
  double vt = mat.v_perp.value_or(vl);
  double m = mean_mass(mat.composition);
  double g = lattice_constant(m, mat.rho);
  double s = (1.0 / (vl * vl * vl) + 2.0 / (vt * vt * vt)) / (18.0 * pi * pi);
  return std::sqrt(3.0 * C::k_B * T / m) * std::cbrt(s) * g;
}

inline double energy_density(double q_hat, double rho, double g_bar, double sigma) {
  return C::G * q_hat * rho * rho * g_bar * g_bar * g_bar / (sqrt_pi * sigma);
}

inline DerivedMaterial derive(const Material& mat, double T = 300.0) {
  if (!(mat.rho > 0.0)) throw InvalidInput("material '" + mat.name + "' needs rho > 0");
  DerivedMaterial d;
  d.name = mat.name;
  d.rho = mat.rho;
  d.temperature = T;
  d.m_bar = mean_mass(mat.composition);
  d.q_hat = quadratic_mass_factor(mat.composition);
  d.g_bar = lattice_constant(d.m_bar, mat.rho);
  d.sigma = sigma_debye(mat, T);
  d.T_G_S = energy_density(d.q_hat, d.rho, d.g_bar, d.sigma);
  return d;
}

}  // namespace dps
