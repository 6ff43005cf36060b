#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dpsolid/constants.hpp"
#include "dpsolid/dp_core.hpp"
#include "dpsolid/error.hpp"
#include "dpsolid/materials.hpp"

namespace dps {

// Temperature and model variant shared by all component calculations.
struct Conditions {
  double temperature = 300.0;
  Model model = Model::PenroseFull;
};

struct CapacitorSpec {
  double A = 0, d = 0, d_m = 0;
  Material dielectric, plates;
};

struct ConductorSpec {
  double l = 0, l_e = 0, r = 0;
  Material material;

  double resistance() const {
    return material.need(material.rho_ohm, "rho_ohm") * l / (pi * r * r);
  }
  double volume() const { return pi * r * r * l; }
};

struct PhotodiodeSpec {
  double d = 70e-6, r = 250e-6;
  Material material;
  double R_d = 500.0;

  double volume() const { return pi * r * r * d; }
};

struct PiezoSpec {
  double A = 0, d = 0, d_m = 0;
  Material piezo, plates;
  int layers = 1;

  double capacitance() const { return C::eps0 * piezo.need(piezo.eps_r, "eps_r") * A / d; }
};

using ComponentSpec = std::variant<CapacitorSpec, ConductorSpec, PhotodiodeSpec, PiezoSpec>;

struct Detail {
  std::string label;
  double value = 0;
  std::string unit;
};

struct ComponentResult {
  std::string name;
  std::string kind;
  double E_G = 0;
  double T_G = std::numeric_limits<double>::infinity();
  std::optional<double> settling;
  double displacement = 0;        // m
  double displacement_ratio = 0;  // Δs/σ
  bool settling_warning = false;
  std::vector<Detail> details;
  std::vector<std::string> warnings;
  std::string error;  // set when the component could not be evaluated
  bool numerical_failure = false;

  bool ok() const { return error.empty(); }
  const Detail* detail(const std::string& label) const {
    for (auto& d : details)
      if (d.label == label) return &d;
    return nullptr;
  }
};

namespace detail {

inline void check_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InvalidInput(std::string(what) + " must be positive");
}

inline void validate(const CapacitorSpec& c) {
  check_positive(c.A, "capacitor area");
  check_positive(c.d, "dielectric thickness");
  check_positive(c.d_m, "plate thickness");
}

inline void validate(const ConductorSpec& c) {
  check_positive(c.l, "conductor length");
  check_positive(c.r, "conductor radius");
  check_positive(c.l_e, "effective length");
  if (c.l_e > c.l) throw InvalidInput("effective length exceeds the conductor length");
}

inline void validate(const PhotodiodeSpec& p) {
  check_positive(p.d, "disc thickness");
  check_positive(p.r, "disc radius");
  check_positive(p.R_d, "diode resistance");
}

inline void validate(const PiezoSpec& p) {
  check_positive(p.A, "piezo area");
  check_positive(p.d, "piezo thickness");
  check_positive(p.d_m, "plate thickness");
  if (p.layers < 1) throw InvalidInput("piezo needs at least one layer");
}

inline std::optional<std::string> aspect_warning(double A, double d, double d_m) {
  if (std::sqrt(A) < 10.0 * std::max(d, d_m))
    return "sqrt(A) is below 10x the layer thickness; the thin-plate energy is a rough estimate";
  return std::nullopt;
}

inline double solid_energy(GeometryCase g, const Material& m, double V, double ds, const Conditions& c) {
  if (ds == 0.0) return 0.0;
  SuperposedSolid s{g, derive(m, c.temperature), V, ds, c.model};
  return total_energy(s).total;
}

}  // namespace detail

// Compression of the dielectric, each plate moving by Δs = Δd/2 under the
// change ε₀ε_r²·V·ΔV/d² of the electrostatic pressure.
inline double capacitor_displacement(const CapacitorSpec& c, double V, double dV) {
  detail::validate(c);
  double eps = c.dielectric.need(c.dielectric.eps_r, "eps_r");
  double E = c.dielectric.need(c.dielectric.E_e, "E_e");
  return C::eps0 * eps * eps * V * std::abs(dV) / (E * c.d);
}

// Dielectric as an extended plate plus both metal plates rigidly displaced.
inline double capacitor_dp_energy(const CapacitorSpec& c, double ds, const Conditions& cond = {}) {
  detail::validate(c);
  return detail::solid_energy(GeometryCase::ExtendedPlate, c.dielectric, c.A * c.d, ds, cond) +
         2.0 * detail::solid_energy(GeometryCase::DisplacedPlate, c.plates, c.A * c.d_m, ds, cond);
}

// Leading small-displacement term of the above.
inline double capacitor_small_ds_energy(const CapacitorSpec& c, double ds, double T = 300.0) {
  detail::validate(c);
  auto d = derive(c.dielectric, T), m = derive(c.plates, T);
  return c.A / 12.0 *
         (c.d * d.T_G_S / (3.0 * d.sigma * d.sigma) + 2.0 * c.d_m * m.T_G_S / (m.sigma * m.sigma)) * ds * ds;
}

inline double polarisation_displacement(const CapacitorSpec& c, double dV) {
  detail::validate(c);
  double eps = c.dielectric.need(c.dielectric.eps_r, "eps_r");
  return C::eps0 * (eps - 1.0) * mean_mass(c.dielectric.composition) * std::abs(dV) /
         (C::e * c.dielectric.rho * c.d);
}

// Mass of the electrons moved onto the plates.
inline double charge_mass_dp_energy(const CapacitorSpec& c, double dV) {
  detail::validate(c);
  double eps = c.dielectric.need(c.dielectric.eps_r, "eps_r");
  return 2.0 * pi * C::G * C::eps0 * C::eps0 * C::m_e * C::m_e * eps * eps * c.A * dV * dV /
         (C::e * C::e * c.d);
}

// Adiabatic Joule heating with 3k_B per atom.
inline double joule_temperature_rise(const ConductorSpec& c, double i2t, double T = 300.0) {
  detail::validate(c);
  if (!(i2t >= 0.0)) throw InvalidInput("current-squared integral must be >= 0");
  double rho_ohm = c.material.need(c.material.rho_ohm, "rho_ohm");
  double g = derive(c.material, T).g_bar, R = c.resistance();
  return g * g * g * R * R * i2t / (3.0 * C::k_B * rho_ohm * c.l * c.l);
}

inline std::pair<double, double> thermal_displacements(const ConductorSpec& c, double dT) {
  detail::validate(c);
  double a = c.material.need(c.material.alpha_L, "alpha_L");
  return {a * 0.5 * c.l_e * dT, a * c.r * dT};
}

// Short-distance part of a linearly strained plate along the wire plus the
// continuum part of radial rod expansion.
inline double conductor_dp_energy(const ConductorSpec& c, double ds_par, double ds_perp,
                                  const Conditions& cond = {}) {
  detail::validate(c);
  if (!(ds_par >= 0.0) || !(ds_perp >= 0.0)) throw InvalidInput("displacements must be >= 0");
  double V = c.volume(), e = 0.0;
  if (ds_par > 0.0) {
    SuperposedSolid s{GeometryCase::ExtendedPlate, derive(c.material, cond.temperature), V, ds_par, cond.model};
    e += short_distance_energy(s);
  }
  if (ds_perp > 0.0) e += long_distance_energy(GeometryCase::ExtendedRod, ds_perp, c.material.rho, V);
  return e;
}

inline double piezo_displacement(const PiezoSpec& p, double V) {
  detail::validate(p);
  return p.layers * p.piezo.need(p.piezo.d33, "d33") * V / 2.0;
}

inline double piezo_dp_energy(const PiezoSpec& p, double ds, const Conditions& cond = {}) {
  detail::validate(p);
  return detail::solid_energy(GeometryCase::ExtendedPlate, p.piezo, p.A * p.d, ds, cond) +
         2.0 * detail::solid_energy(GeometryCase::DisplacedPlate, p.plates, p.A * p.d_m, ds, cond);
}

// Continuum-only form, valid once Δs is well beyond the lattice constant.
inline double piezo_long_distance_energy(const PiezoSpec& p, double ds) {
  detail::validate(p);
  return 2.0 * pi * C::G * p.A *
         (p.d * p.piezo.rho * p.piezo.rho / 3.0 + 2.0 * p.d_m * p.plates.rho * p.plates.rho) * ds * ds;
}

inline double settling_time(const CapacitorSpec& c) {
  return c.d / (2.0 * c.dielectric.need(c.dielectric.v_par, "v_par"));
}
inline double settling_time(const ConductorSpec& c) {
  return c.l_e / (2.0 * c.material.need(c.material.v_par, "v_par"));
}
inline double settling_time(const PiezoSpec& p) {
  return p.d / (2.0 * p.piezo.need(p.piezo.v_par, "v_par")) + p.d_m / p.plates.need(p.plates.v_par, "v_par");
}
inline double settling_time(const PhotodiodeSpec&) {
  throw DomainError("no settling-time model for the photodiode disc");
}
inline double settling_time(const ComponentSpec& s) {
  return std::visit([](const auto& c) { return settling_time(c); }, s);
}

// Settling counts as not short against the lifetime once it reaches half of it.
inline constexpr double settling_warning_fraction = 0.5;

// Fills T_G from E_G and sets the settling flag.
inline void finalize(ComponentResult& r) {
  r.T_G = lifetime(r.E_G);
  if (r.settling && *r.settling >= settling_warning_fraction * r.T_G) {
    r.settling_warning = true;
    r.warnings.push_back("settling time is not small against the lifetime");
  }
}

template <class Spec>
std::optional<double> try_settling(const Spec& s, ComponentResult& r) {
  try {
    return settling_time(s);
  } catch (const MissingProperty& e) {
    r.warnings.push_back(std::string("settling time unavailable: ") + e.what());
  } catch (const DomainError&) {
  }
  return std::nullopt;
}

// Capacitor switching from V - ΔV/2 to V + ΔV/2: compression plus the minor
// polarisation and charge-mass contributions.
inline ComponentResult capacitor_result(const std::string& name, const CapacitorSpec& c, double V, double dV,
                                        const Conditions& cond = {}) {
  ComponentResult r;
  r.name = name;
  r.kind = "capacitor";
  double ds = capacitor_displacement(c, V, dV);
  double sigma = derive(c.dielectric, cond.temperature).sigma;
  double e_comp = capacitor_dp_energy(c, ds, cond);
  double ds_pol = polarisation_displacement(c, dV);
  double e_pol = detail::solid_energy(GeometryCase::DisplacedPlate, c.dielectric, c.A * c.d, ds_pol, cond);
  double e_q = charge_mass_dp_energy(c, dV);
  r.E_G = e_comp + e_pol + e_q;
  r.displacement = ds;
  r.displacement_ratio = ds / sigma;
  r.settling = try_settling(c, r);
  r.details = {{"compression_displacement", ds, "m"},
               {"compression_energy", e_comp, "J"},
               {"polarisation_displacement", ds_pol, "m"},
               {"polarisation_energy", e_pol, "J"},
               {"charge_mass_energy", e_q, "J"},
               {"charge_mass_lifetime", lifetime(e_q), "s"}};
  if (auto w = detail::aspect_warning(c.A, c.d, c.d_m)) r.warnings.push_back(*w);
  finalize(r);
  return r;
}

inline ComponentResult conductor_result(const std::string& name, const ConductorSpec& c, double i2t,
                                        const Conditions& cond = {}) {
  ComponentResult r;
  r.name = name;
  r.kind = "conductor";
  double dT = joule_temperature_rise(c, i2t, cond.temperature);
  auto [par, perp] = thermal_displacements(c, dT);
  r.E_G = conductor_dp_energy(c, par, perp, cond);
  r.displacement = par;
  r.displacement_ratio = par / derive(c.material, cond.temperature).sigma;
  r.settling = try_settling(c, r);
  r.details = {{"resistance", c.resistance(), "Ω"},
               {"temperature_rise", dT, "K"},
               {"ds_par", par, "m"},
               {"ds_perp", perp, "m"}};
  finalize(r);
  return r;
}

inline double photodiode_temperature_rise(const PhotodiodeSpec& p, double i2t, double T = 300.0) {
  detail::validate(p);
  if (!(i2t >= 0.0)) throw InvalidInput("current-squared integral must be >= 0");
  double g = derive(p.material, T).g_bar;
  return p.R_d * i2t * g * g * g / (3.0 * C::k_B * p.volume());
}

// Disc heated by the diode's own resistance, expanding radially like a rod.
inline ComponentResult photodiode_dp_energy(const PhotodiodeSpec& p, double i2t, const Conditions& cond = {},
                                            const std::string& name = "photodiode") {
  ComponentResult r;
  r.name = name;
  r.kind = "photodiode";
  double dT = photodiode_temperature_rise(p, i2t, cond.temperature);
  double dr = p.material.need(p.material.alpha_L, "alpha_L") * p.r * dT;
  r.E_G = detail::solid_energy(GeometryCase::ExtendedRod, p.material, p.volume(), dr, cond);
  r.displacement = dr;
  r.displacement_ratio = dr / derive(p.material, cond.temperature).sigma;
  r.details = {{"temperature_rise", dT, "K"}, {"dr", dr, "m"}};
  finalize(r);
  return r;
}

}  // namespace dps
