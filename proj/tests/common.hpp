#pragma once

#include <cmath>
#include <string>

#include "dpsolid/bundled_data.hpp"
#include "dpsolid/catalog.hpp"
#include "dpsolid/scenario.hpp"

namespace testutil {

inline const dps::Catalog& catalog() {
  static const dps::Catalog c = dps::Catalog::parse(dps::bundled::catalog);
  return c;
}

inline std::string bundled(const std::string& name) {
  for (auto& s : dps::bundled::scenarios)
    if (name == s.name) return s.text;
  throw dps::ValidationError("no bundled scenario " + name);
}

inline dps::scenario::Scenario scenario(const std::string& name) {
  return dps::scenario::parse(bundled(name), catalog());
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Slope of log f against log x from two points.
template <class F>
double loglog_slope(F&& f, double x0, double x1) {
  return std::log(f(x1) / f(x0)) / std::log(x1 / x0);
}

}  // namespace testutil
