#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dpsolid/kv.hpp"
#include "dpsolid/materials.hpp"
#include "dpsolid/units.hpp"

namespace dps {

namespace detail {

struct FieldInfo {
  const char* name;
  units::Dim dim;
};

inline const std::vector<FieldInfo>& material_fields() {
  using namespace units;
  static const std::vector<FieldInfo> f = {
      {"rho", dim::density},          {"theta_D", dim::temperature},
      {"v_par", dim::velocity},       {"v_perp", dim::velocity},
      {"alpha_L", dim::inv_temperature}, {"rho_ohm", dim::resistivity},
      {"E_e", dim::pressure},         {"eps_r", dim::none},
      {"d33", dim::length_per_volt},
  };
  return f;
}

inline void set_field(Material& m, const std::string& key, double v) {
  if (key == "rho") m.rho = v;
  else if (key == "theta_D") m.theta_D = v;
  else if (key == "v_par") m.v_par = v;
  else if (key == "v_perp") m.v_perp = v;
  else if (key == "alpha_L") m.alpha_L = v;
  else if (key == "rho_ohm") m.rho_ohm = v;
  else if (key == "E_e") m.E_e = v;
  else if (key == "eps_r") m.eps_r = v;
  else if (key == "d33") m.d33 = v;
  else throw ValidationError("unknown material field '" + key + "'");
}

// "Al:26.98:2, O:16.00:3" with masses scaled by mass_factor to u.
inline Composition parse_composition(const std::string& text, double mass_factor_u, int line) {
  std::vector<std::tuple<std::string, double, double>> counts;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, ',')) {
    item = kv::trim(item);
    std::vector<std::string> parts;
    std::string p;
    std::istringstream is(item);
    while (std::getline(is, p, ':')) parts.push_back(kv::trim(p));
    if (parts.size() < 2 || parts.size() > 3 || parts[0].empty())
      throw ValidationError("composition item '" + item + "' is not element:mass[:count]", line);
    try {
      double m = std::stod(parts[1]) * mass_factor_u;
      double n = parts.size() == 3 ? std::stod(parts[2]) : 1.0;
      counts.emplace_back(parts[0], m, n);
    } catch (const std::logic_error&) {
      throw ValidationError("bad number in composition item '" + item + "'", line);
    }
  }
  try {
    return Composition::from_counts(counts);
  } catch (const InvalidInput& e) {
    throw ValidationError(e.what(), line);
  }
}

}  // namespace detail

class Catalog {
 public:
  std::vector<Material> materials;

  const Material& get(const std::string& name) const {
    for (auto& m : materials)
      if (m.name == name) return m;
    throw ValidationError("material '" + name + "' is not in the catalog");
  }
  Material& get(const std::string& name) {
    return const_cast<Material&>(static_cast<const Catalog&>(*this).get(name));
  }
  bool has(const std::string& name) const {
    for (auto& m : materials)
      if (m.name == name) return true;
    return false;
  }

  // Applies "field = quantity" overrides from a scenario section.
  void apply_override(const std::string& name, const kv::Section& s) {
    Material& m = get(name);
    for (auto& e : s.entries) {
      const detail::FieldInfo* fi = nullptr;
      for (auto& f : detail::material_fields())
        if (e.key == f.name) fi = &f;
      if (!fi) throw ValidationError("unknown material field '" + e.key + "'", e.line);
      try {
        detail::set_field(m, e.key, units::parse_as(e.value, fi->dim, e.key));
      } catch (const ValidationError& err) {
        throw ValidationError(err.what(), e.line);
      }
    }
  }

  static Catalog parse(const std::string& text) {
    kv::Document doc = kv::parse(text);
    const kv::Section* ub = doc.find("units");
    if (!ub) {
      if (doc.sections.empty()) return Catalog{};
      throw ValidationError("catalog lacks a [units] block");
    }
    std::map<std::string, double> factor;
    double comp_factor = 1.0;
    for (auto& e : ub->entries) {
      units::Unit u;
      try {
        u = units::parse_unit(e.value);
      } catch (const ValidationError& err) {
        throw ValidationError(err.what(), e.line);
      }
      if (e.key == "composition") {
        if (!(u.dim == units::dim::mass))
          throw ValidationError("composition unit must be a mass", e.line);
        comp_factor = u.factor / C::u;
        continue;
      }
      const detail::FieldInfo* fi = nullptr;
      for (auto& f : detail::material_fields())
        if (e.key == f.name) fi = &f;
      if (!fi) throw ValidationError("unknown field '" + e.key + "' in [units]", e.line);
      if (!(u.dim == fi->dim))
        throw ValidationError("unit for '" + e.key + "' must be " + units::dim_name(fi->dim),
                              e.line);
      factor[e.key] = u.factor;
    }
    Catalog cat;
    for (auto& s : doc.sections) {
      if (s.name == "units") continue;
      if (s.name.empty()) throw ValidationError("catalog entries must sit in [material] sections");
      Material m;
      m.name = s.name;
      const kv::Entry* comp = s.find("composition");
      if (!comp) throw ValidationError("material [" + s.name + "] lacks composition", s.line);
      m.composition = detail::parse_composition(comp->value, comp_factor, comp->line);
      for (auto& e : s.entries) {
        if (e.key == "composition") continue;
        auto it = factor.find(e.key);
        if (it == factor.end())
          throw ValidationError("field '" + e.key + "' has no unit in [units]", e.line);
        double v;
        try {
          size_t pos = 0;
          v = std::stod(e.value, &pos);
          if (kv::trim(e.value.substr(pos)).size() != 0) throw std::invalid_argument("trailing");
        } catch (const std::logic_error&) {
          throw ValidationError("catalog values are bare numbers; got '" + e.value + "'", e.line);
        }
        detail::set_field(m, e.key, v * it->second);
      }
      if (!(m.rho > 0.0)) throw ValidationError("material [" + s.name + "] needs rho > 0", s.line);
      if (!(m.theta_D > 0.0))
        throw ValidationError("material [" + s.name + "] needs theta_D > 0", s.line);
      cat.materials.push_back(std::move(m));
    }
    return cat;
  }

  static Catalog load(const std::string& path) { return parse(kv::read_file(path)); }
};

}  // namespace dps
