#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dpsolid/catalog.hpp"
#include "dpsolid/detector.hpp"
#include "dpsolid/kv.hpp"
#include "dpsolid/units.hpp"

// Scenario files use the kv syntax with a unit on every dimensioned value:
//
//   schema = 1
//   temperature = 300 K
//   model = penrose
//
//   [materials.Si]          # override fields of a catalog entry
//   rho_ohm = 5 Ω·cm
//
//   [circuit]  V_B V_E R_d R C I_q
//   [capacitor]  A d d_m dielectric plates [V dV]
//   [resistor] / [wire]  l [l_e] r material [i2t]
//   [photodiode]  d r material [R_d] [i2t]
//   [piezo]  (A | diameter) d d_m piezo plates [layers] [V]
//   [solid]  geometry material volume displacement [sweep_min sweep_max sweep_points]
//   [detector]  [horizon]
namespace dps::scenario {

inline constexpr int schema_version = 1;

struct SolidSection {
  GeometryCase geometry = GeometryCase::DisplacedPlate;
  std::string material;
  double volume = 0;
  double displacement = 0;
  std::optional<double> sweep_min, sweep_max;
  int sweep_points = 41;
};

struct CapacitorDrive {
  std::optional<double> V, dV;
};

struct Scenario {
  int schema = schema_version;
  double temperature = 300.0;
  Model model = Model::PenroseFull;
  Catalog catalog;
  std::optional<CircuitSpec> circuit;
  std::optional<CapacitorSpec> capacitor;
  CapacitorDrive capacitor_drive;
  std::optional<ConductorSpec> resistor, wire;
  std::map<std::string, double> i2t;  // per-section override
  std::optional<PhotodiodeSpec> photodiode;
  std::optional<PiezoSpec> piezo;
  std::optional<double> piezo_voltage;
  std::optional<SolidSection> solid;
  double horizon = 1.0;

  Conditions conditions() const { return {temperature, model}; }
  bool has_detector() const { return circuit && capacitor && resistor && wire && photodiode; }
  DetectorScenario detector() const;
};

inline Model parse_model(const std::string& s) {
  if (s == "penrose") return Model::PenroseFull;
  if (s == "diosi") return Model::DiosiSmeared;
  throw ValidationError("model must be 'penrose' or 'diosi', got '" + s + "'");
}

inline GeometryCase parse_geometry(const std::string& s) {
  for (auto g : {GeometryCase::DisplacedPlate, GeometryCase::ExtendedPlate, GeometryCase::ExtendedRod,
                 GeometryCase::ExtendedSphere})
    if (s == to_string(g)) return g;
  throw ValidationError("unknown geometry '" + s + "'");
}

namespace detail {

// Typed access to one section; every lookup reports the offending line.
class Reader {
 public:
  explicit Reader(const kv::Section& s) : s_(s) {}

  const kv::Entry& entry(const std::string& key) const {
    const kv::Entry* e = s_.find(key);
    if (!e) throw ValidationError("[" + s_.name + "] needs '" + key + "'", s_.line);
    return *e;
  }
  bool has(const std::string& key) const { return s_.has(key); }

  double quantity(const std::string& key, const units::Dim& dim) const {
    const kv::Entry& e = entry(key);
    try {
      return units::parse_as(e.value, dim, key);
    } catch (const ValidationError& err) {
      throw ValidationError(err.what(), e.line);
    }
  }
  std::optional<double> optional(const std::string& key, const units::Dim& dim) const {
    if (!has(key)) return std::nullopt;
    return quantity(key, dim);
  }
  double positive(const std::string& key, const units::Dim& dim) const {
    double v = quantity(key, dim);
    if (!(v > 0.0)) throw ValidationError("'" + key + "' must be positive", entry(key).line);
    return v;
  }
  const std::string& text(const std::string& key) const { return entry(key).value; }
  int integer(const std::string& key) const {
    const kv::Entry& e = entry(key);
    try {
      size_t pos = 0;
      int v = std::stoi(e.value, &pos);
      if (pos != e.value.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::logic_error&) {
      throw ValidationError("'" + key + "' must be an integer", e.line);
    }
  }
  const Material& material(const Catalog& cat, const std::string& key) const {
    const kv::Entry& e = entry(key);
    if (!cat.has(e.value)) throw ValidationError("material '" + e.value + "' is not in the catalog", e.line);
    return cat.get(e.value);
  }

 private:
  const kv::Section& s_;
};

inline ConductorSpec read_conductor(const Reader& r, const Catalog& cat) {
  using namespace units;
  ConductorSpec c;
  c.l = r.positive("l", dim::length);
  c.l_e = r.has("l_e") ? r.positive("l_e", dim::length) : c.l;
  if (c.l_e > c.l) throw ValidationError("l_e exceeds l", r.entry("l_e").line);
  c.r = r.positive("r", dim::length);
  c.material = r.material(cat, "material");
  return c;
}

// [materials.NAME] either overrides a catalog entry or, with a composition
// key, defines a new one.
inline void apply_material_section(Catalog& cat, const kv::Section& s) {
  std::string name = s.name.substr(std::string("materials.").size());
  if (name.empty()) throw ValidationError("material section needs a name", s.line);
  if (const kv::Entry* comp = s.find("composition")) {
    if (cat.has(name)) throw ValidationError("material '" + name + "' already exists", s.line);
    Material m;
    m.name = name;
    m.composition = dps::detail::parse_composition(comp->value, 1.0, comp->line);
    kv::Section rest{s.name, s.line, {}};
    for (auto& e : s.entries)
      if (e.key != "composition") rest.entries.push_back(e);
    cat.materials.push_back(m);
    cat.apply_override(name, rest);
    if (!(cat.get(name).rho > 0.0) || !(cat.get(name).theta_D > 0.0))
      throw ValidationError("new material '" + name + "' needs rho and theta_D", s.line);
    return;
  }
  if (!cat.has(name)) throw ValidationError("material '" + name + "' is not in the catalog", s.line);
  cat.apply_override(name, s);
}

}  // namespace detail

inline Scenario parse(const std::string& text, Catalog catalog) {
  using namespace units;
  kv::Document doc = kv::parse(text);
  Scenario sc;
  for (auto& s : doc.sections)
    if (s.name.rfind("materials.", 0) == 0) detail::apply_material_section(catalog, s);
  sc.catalog = std::move(catalog);
  const Catalog& cat = sc.catalog;

  for (auto& s : doc.sections) {
    detail::Reader r(s);
    if (s.name.empty()) {
      kv::require_known(s, {"schema", "temperature", "model"});
      if (r.has("schema") && r.integer("schema") != schema_version)
        throw ValidationError("unsupported schema version", r.entry("schema").line);
      if (r.has("temperature")) sc.temperature = r.positive("temperature", dim::temperature);
      if (r.has("model")) {
        try {
          sc.model = parse_model(r.text("model"));
        } catch (const ValidationError& e) {
          throw ValidationError(e.what(), r.entry("model").line);
        }
      }
    } else if (s.name.rfind("materials.", 0) == 0) {
      continue;
    } else if (s.name == "circuit") {
      kv::require_known(s, {"V_B", "V_E", "R_d", "R", "C", "I_q"});
      CircuitSpec c;
      c.V_B = r.positive("V_B", dim::voltage);
      c.V_E = r.positive("V_E", dim::voltage);
      c.R_d = r.positive("R_d", dim::resistance);
      c.R = r.positive("R", dim::resistance);
      c.C = r.positive("C", dim::capacitance);
      c.I_q = r.positive("I_q", dim::current);
      sc.circuit = c;
    } else if (s.name == "capacitor") {
      kv::require_known(s, {"A", "d", "d_m", "dielectric", "plates", "V", "dV"});
      CapacitorSpec c;
      c.A = r.positive("A", dim::area);
      c.d = r.positive("d", dim::length);
      c.d_m = r.positive("d_m", dim::length);
      c.dielectric = r.material(cat, "dielectric");
      c.plates = r.material(cat, "plates");
      sc.capacitor = c;
      sc.capacitor_drive = {r.optional("V", dim::voltage), r.optional("dV", dim::voltage)};
    } else if (s.name == "resistor" || s.name == "wire") {
      kv::require_known(s, {"l", "l_e", "r", "material", "i2t"});
      (s.name == "resistor" ? sc.resistor : sc.wire) = detail::read_conductor(r, cat);
      if (auto v = r.optional("i2t", dim::current2_time)) sc.i2t[s.name] = *v;
    } else if (s.name == "photodiode") {
      kv::require_known(s, {"d", "r", "material", "R_d", "i2t"});
      PhotodiodeSpec p;
      p.d = r.positive("d", dim::length);
      p.r = r.positive("r", dim::length);
      p.material = r.material(cat, "material");
      if (r.has("R_d")) p.R_d = r.positive("R_d", dim::resistance);
      sc.photodiode = p;
      if (auto v = r.optional("i2t", dim::current2_time)) sc.i2t[s.name] = *v;
    } else if (s.name == "piezo") {
      kv::require_known(s, {"A", "diameter", "d", "d_m", "piezo", "plates", "layers", "V"});
      PiezoSpec p;
      if (r.has("A") == r.has("diameter"))
        throw ValidationError("[piezo] needs exactly one of 'A' and 'diameter'", s.line);
      if (r.has("A")) {
        p.A = r.positive("A", dim::area);
      } else {
        double D = r.positive("diameter", dim::length);
        p.A = pi * 0.25 * D * D;
      }
      p.d = r.positive("d", dim::length);
      p.d_m = r.positive("d_m", dim::length);
      p.piezo = r.material(cat, "piezo");
      p.plates = r.material(cat, "plates");
      if (r.has("layers")) {
        p.layers = r.integer("layers");
        if (p.layers < 1) throw ValidationError("layers must be >= 1", r.entry("layers").line);
      }
      sc.piezo = p;
      sc.piezo_voltage = r.optional("V", dim::voltage);
    } else if (s.name == "solid") {
      kv::require_known(s, {"geometry", "material", "volume", "displacement", "sweep_min", "sweep_max",
                            "sweep_points"});
      SolidSection so;
      try {
        so.geometry = parse_geometry(r.text("geometry"));
      } catch (const ValidationError& e) {
        throw ValidationError(e.what(), r.entry("geometry").line);
      }
      so.material = r.material(cat, "material").name;
      so.volume = r.positive("volume", dim::volume);
      so.displacement = r.quantity("displacement", dim::length);
      if (so.displacement < 0) throw ValidationError("displacement must be >= 0", r.entry("displacement").line);
      so.sweep_min = r.optional("sweep_min", dim::length);
      so.sweep_max = r.optional("sweep_max", dim::length);
      if (so.sweep_min.has_value() != so.sweep_max.has_value())
        throw ValidationError("sweep needs both sweep_min and sweep_max", s.line);
      if (so.sweep_min && !(*so.sweep_min > 0 && *so.sweep_max > *so.sweep_min))
        throw ValidationError("sweep needs 0 < sweep_min < sweep_max", s.line);
      if (r.has("sweep_points")) {
        so.sweep_points = r.integer("sweep_points");
        if (so.sweep_points < 2) throw ValidationError("sweep_points must be >= 2", r.entry("sweep_points").line);
      }
      sc.solid = so;
    } else if (s.name == "detector") {
      kv::require_known(s, {"horizon"});
      if (r.has("horizon")) sc.horizon = r.positive("horizon", dim::time);
    } else {
      throw ValidationError("unknown section [" + s.name + "]", s.line);
    }
  }
  return sc;
}

inline DetectorScenario Scenario::detector() const {
  if (!has_detector())
    throw ValidationError("detector scenario needs [circuit], [capacitor], [resistor], [wire] and [photodiode]");
  DetectorScenario d;
  d.circuit = *circuit;
  d.capacitor = *capacitor;
  d.resistor = *resistor;
  d.wire = *wire;
  d.photodiode = *photodiode;
  d.piezo = piezo;
  d.conditions = conditions();
  d.horizon = horizon;
  return d;
}

}  // namespace dps::scenario
