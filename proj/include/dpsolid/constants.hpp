#pragma once

// CODATA 2018 values, SI units.
namespace dps {

struct PhysicalConstants {
  static constexpr double G = 6.67430e-11;         // m^3 kg^-1 s^-2
  static constexpr double hbar = 1.054571817e-34;  // J s
  static constexpr double k_B = 1.380649e-23;      // J/K
  static constexpr double u = 1.66053906660e-27;   // kg
  static constexpr double eps0 = 8.8541878128e-12; // F/m
  static constexpr double e = 1.602176634e-19;     // C
  static constexpr double m_e = 9.1093837015e-31;  // kg
};

using C = PhysicalConstants;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double sqrt_pi = 1.77245385090551602730;

}  // namespace dps
