#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dpsolid/components.hpp"
#include "dpsolid/quadrature.hpp"

namespace dps {

struct CircuitSpec {
  double V_B = 420.0;
  double V_E = 15.0;
  double R_d = 500.0;
  double R = 2000.0;
  double C = 390e-12;
  double I_q = 1e-4;

  void validate() const {
    for (double v : {V_B, V_E, R_d, R, C, I_q})
      if (!(v > 0.0) || !std::isfinite(v)) throw InvalidInput("circuit values must be positive");
  }
  double I0() const { return V_E / (R + R_d); }
  double tau() const { return (R + R_d) * C; }
  bool avalanche() const { return I_q < I0(); }
};

// Bias-loop quench: the exponential discharge current falls to I_q.
inline double quench_time(const CircuitSpec& c) {
  c.validate();
  if (!c.avalanche()) return 0.0;
  return c.tau() * std::log(c.I0() / c.I_q);
}

inline double avalanche_current(const CircuitSpec& c, double t) {
  c.validate();
  if (!(t >= 0.0)) throw InvalidInput("time must be >= 0");
  if (t > quench_time(c)) return 0.0;
  return c.I0() * std::exp(-t / c.tau());
}

inline double current_squared_integral(const CircuitSpec& c) {
  double ts = quench_time(c);
  if (ts == 0.0) return 0.0;
  double I0 = c.I0(), tau = c.tau();
  return 0.5 * I0 * I0 * tau * -std::expm1(-2.0 * ts / tau);
}

inline double piezo_time_constant(const CircuitSpec& c, const PiezoSpec& p) { return c.R_d * p.capacitance(); }

inline double piezo_voltage(const CircuitSpec& c, const PiezoSpec& p, double t) {
  c.validate();
  if (!(t >= 0.0)) throw InvalidInput("time must be >= 0");
  return c.V_E * -std::expm1(-t / piezo_time_constant(c, p));
}

// Piezo path: the charging current (V_E - V)/R_d falls to I_q.
inline double piezo_quench_time(const CircuitSpec& c, const PiezoSpec& p) {
  c.validate();
  double I0 = c.V_E / c.R_d;
  if (c.I_q >= I0) return 0.0;
  return piezo_time_constant(c, p) * std::log(I0 / c.I_q);
}

struct LifetimeSolution {
  double T = std::numeric_limits<double>::infinity();
  bool reached = false;
  double cumulative_at_max = 0;  // ∫₀^t_max E dt
};

// T with ∫₀^T E dt = ħ. The bracket is found by halving down from t_max and
// refined by bisection on the cumulative integral.
inline LifetimeSolution generalized_lifetime(const std::function<double(double)>& E, double t_max,
                                             double rel_tol = 1e-10) {
  if (!(t_max > 0.0)) throw InvalidInput("t_max must be positive");
  auto F = [&](double t) {
    if (t <= 0.0) return 0.0;
    return quad::adaptive(
               [&](double s) {
                 double e = E(s);
                 if (!(e >= 0.0) || !std::isfinite(e)) throw NumericalError("energy must be nonnegative and finite");
                 return e;
               },
               0.0, t, 1e-9, 15)
        .value;
  };
  LifetimeSolution sol;
  sol.cumulative_at_max = F(t_max);
  if (sol.cumulative_at_max < C::hbar) return sol;
  double hi = t_max, Fhi = sol.cumulative_at_max, lo = 0.5 * hi;
  for (;;) {
    double Flo = F(lo);
    if (Flo > Fhi * (1.0 + 1e-9)) throw NumericalError("cumulative energy integral is not monotone");
    if (Flo < C::hbar) break;
    hi = lo;
    Fhi = Flo;
    lo *= 0.5;
    if (lo < std::numeric_limits<double>::min()) throw NumericalError("lifetime underflows");
  }
  sol.T = quad::bisect([&](double t) { return F(t) - C::hbar; }, lo, hi, rel_tol, 80);
  sol.reached = true;
  return sol;
}

struct DetectorScenario {
  CircuitSpec circuit;
  CapacitorSpec capacitor;
  ConductorSpec resistor, wire;
  PhotodiodeSpec photodiode;
  std::optional<PiezoSpec> piezo;
  Conditions conditions;
  double horizon = 1.0;  // s, cap for the time-dependent lifetime search
};

inline constexpr double piezo_max_frequency = 3e6;  // Hz

struct LifetimeReport {
  std::vector<ComponentResult> components;
  double i2t = 0;
  double t_s = 0;
  std::optional<double> piezo_t_s;
  std::optional<bool> piezo_before_quench;
  std::string bottleneck;
  double combined_E_G = 0;
  double combined_T_G = std::numeric_limits<double>::infinity();
  Model model = Model::PenroseFull;
  std::vector<std::string> warnings;

  const ComponentResult* find(const std::string& name) const {
    for (auto& c : components)
      if (c.name == name) return &c;
    return nullptr;
  }
};

// Smallest lifetime among evaluated components; equal lifetimes resolve by
// name so the result does not depend on list order.
inline std::string bottleneck_of(const std::vector<ComponentResult>& cs) {
  const ComponentResult* best = nullptr;
  for (auto& c : cs) {
    if (!c.ok()) continue;
    if (!best || c.T_G < best->T_G || (c.T_G == best->T_G && c.name < best->name)) best = &c;
  }
  return best ? best->name : std::string();
}

// Instantaneous piezo energy while it charges.
inline double piezo_energy_at(const DetectorScenario& s, double t) {
  const PiezoSpec& p = *s.piezo;
  return piezo_dp_energy(p, piezo_displacement(p, piezo_voltage(s.circuit, p, t)), s.conditions);
}

inline ComponentResult piezo_result(const DetectorScenario& s, double t_s_piezo) {
  const PiezoSpec& p = *s.piezo;
  ComponentResult r;
  r.name = "piezo";
  r.kind = "piezo";
  auto sol = generalized_lifetime([&](double t) { return piezo_energy_at(s, t); }, s.horizon);
  r.settling = try_settling(p, r);
  double tc = piezo_time_constant(s.circuit, p);
  r.details = {{"C_p", p.capacitance(), "F"}, {"R_d_C_p", tc, "s"}};
  if (!sol.reached) {
    // ∫E dt over the horizon stays below ħ
    r.E_G = sol.cumulative_at_max / s.horizon;
    r.T_G = std::numeric_limits<double>::infinity();
    r.warnings.push_back("lifetime not reached within the search horizon");
    return r;
  }
  double ds = piezo_displacement(p, piezo_voltage(s.circuit, p, sol.T));
  // time-averaged energy, so that T_G·E_G = ħ still holds
  r.E_G = C::hbar / sol.T;
  r.T_G = sol.T;
  r.displacement = ds;
  r.displacement_ratio = ds / derive(p.piezo, s.conditions.temperature).sigma;
  r.details.push_back({"voltage_at_T_G", piezo_voltage(s.circuit, p, sol.T), "V"});
  r.details.push_back({"ds_at_T_G", ds, "m"});
  r.details.push_back({"energy_at_T_G", piezo_energy_at(s, sol.T), "J"});
  r.details.push_back({"piezo_quench_time", t_s_piezo, "s"});
  if (r.settling && *r.settling >= settling_warning_fraction * r.T_G) {
    r.settling_warning = true;
    r.warnings.push_back("settling time is not small against the lifetime");
  }
  if (1.0 / r.T_G > piezo_max_frequency)
    r.warnings.push_back("1/T_G exceeds the 3 MHz working range of PZT piezos");
  if (s.circuit.C < 10.0 * p.capacitance())
    r.warnings.push_back("bias capacitor is not much larger than the piezo capacitance");
  if (auto w = detail::aspect_warning(p.A, p.d, p.d_m)) r.warnings.push_back(*w);
  return r;
}

template <class F>
void guarded(std::vector<ComponentResult>& out, const std::string& name, const std::string& kind, F&& f) {
  try {
    out.push_back(f());
  } catch (const Error& e) {
    ComponentResult r;
    r.name = name;
    r.kind = kind;
    r.error = e.what();
    r.numerical_failure = dynamic_cast<const NumericalError*>(&e) != nullptr;
    out.push_back(std::move(r));
  }
}

inline LifetimeReport evaluate_detector(const DetectorScenario& s) {
  s.circuit.validate();
  LifetimeReport rep;
  rep.model = s.conditions.model;
  rep.i2t = current_squared_integral(s.circuit);
  rep.t_s = quench_time(s.circuit);
  if (!s.circuit.avalanche()) rep.warnings.push_back("latching current exceeds the initial current; no avalanche");
  const Conditions& c = s.conditions;
  double V_mean = s.circuit.V_B + 0.5 * s.circuit.V_E;
  auto& out = rep.components;
  guarded(out, "capacitor", "capacitor",
          [&] { return capacitor_result("capacitor", s.capacitor, V_mean, s.circuit.V_E, c); });
  guarded(out, "resistor", "conductor", [&] { return conductor_result("resistor", s.resistor, rep.i2t, c); });
  guarded(out, "wire", "conductor", [&] { return conductor_result("wire", s.wire, rep.i2t, c); });
  guarded(out, "photodiode", "photodiode", [&] { return photodiode_dp_energy(s.photodiode, rep.i2t, c); });
  if (s.piezo) {
    double tp = piezo_quench_time(s.circuit, *s.piezo);
    rep.piezo_t_s = tp;
    guarded(out, "piezo", "piezo", [&] { return piezo_result(s, tp); });
  }
  double constant = 0.0;
  for (auto& r : out) {
    if (!r.ok()) continue;
    rep.combined_E_G += r.E_G;
    if (r.kind != "piezo") constant += r.E_G;
  }
  rep.bottleneck = bottleneck_of(out);
  const ComponentResult* pz = rep.find("piezo");
  if (pz && pz->ok()) {
    rep.piezo_before_quench = pz->T_G < *rep.piezo_t_s;
    auto sol = generalized_lifetime([&](double t) { return constant + piezo_energy_at(s, t); }, s.horizon);
    rep.combined_T_G = sol.T;
  } else {
    rep.combined_T_G = lifetime(rep.combined_E_G);
  }
  for (auto& r : out)
    if (!r.ok()) rep.warnings.push_back(r.name + ": " + r.error);
  return rep;
}

using Trace = std::vector<std::pair<double, double>>;

inline Trace sample(const std::function<double(double)>& f, double t_end, int n) {
  Trace tr;
  for (int i = 0; i <= n; ++i) {
    double t = t_end * i / n;
    tr.push_back({t, f(t)});
  }
  return tr;
}

inline Trace current_trace(const CircuitSpec& c, int n = 200) {
  double ts = quench_time(c);
  return sample([&](double t) { return avalanche_current(c, t); }, 1.25 * std::max(ts, c.tau()), n);
}

inline Trace piezo_voltage_trace(const DetectorScenario& s, int n = 200) {
  double tc = piezo_time_constant(s.circuit, *s.piezo);
  return sample([&](double t) { return piezo_voltage(s.circuit, *s.piezo, t); }, 8.0 * tc, n);
}

inline Trace piezo_energy_trace(const DetectorScenario& s, int n = 200) {
  double tc = piezo_time_constant(s.circuit, *s.piezo);
  return sample([&](double t) { return piezo_energy_at(s, t); }, 8.0 * tc, n);
}

}  // namespace dps
