#pragma once

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "dpsolid/constants.hpp"
#include "dpsolid/error.hpp"

// Small unit grammar for scenario and catalog files.
//
//   quantity := number [ws] unit
//   unit     := term { ('·' | '*' | '.' | ws) term } [ '/' term { sep term } ]
//   term     := [prefix] symbol [exponent]
//
// Everything after '/' is in the denominator, so "W/m·K" means W/(m·K).
namespace dps::units {

// Exponents of length, mass, time, temperature, current.
struct Dim {
  std::array<int, 5> e{};
  constexpr bool operator==(const Dim&) const = default;
  constexpr Dim operator*(const Dim& o) const {
    Dim r;
    for (int i = 0; i < 5; ++i) r.e[i] = e[i] + o.e[i];
    return r;
  }
  constexpr Dim pow(int p) const {
    Dim r;
    for (int i = 0; i < 5; ++i) r.e[i] = e[i] * p;
    return r;
  }
};

inline constexpr Dim make_dim(int L, int M, int T, int K, int I) {
  return Dim{{L, M, T, K, I}};
}

namespace dim {
inline constexpr Dim none = make_dim(0, 0, 0, 0, 0);
inline constexpr Dim length = make_dim(1, 0, 0, 0, 0);
inline constexpr Dim area = make_dim(2, 0, 0, 0, 0);
inline constexpr Dim volume = make_dim(3, 0, 0, 0, 0);
inline constexpr Dim mass = make_dim(0, 1, 0, 0, 0);
inline constexpr Dim time = make_dim(0, 0, 1, 0, 0);
inline constexpr Dim temperature = make_dim(0, 0, 0, 1, 0);
inline constexpr Dim current = make_dim(0, 0, 0, 0, 1);
inline constexpr Dim velocity = make_dim(1, 0, -1, 0, 0);
inline constexpr Dim density = make_dim(-3, 1, 0, 0, 0);
inline constexpr Dim voltage = make_dim(2, 1, -3, 0, -1);
inline constexpr Dim resistance = make_dim(2, 1, -3, 0, -2);
inline constexpr Dim resistivity = make_dim(3, 1, -3, 0, -2);
inline constexpr Dim capacitance = make_dim(-2, -1, 4, 0, 2);
inline constexpr Dim pressure = make_dim(-1, 1, -2, 0, 0);
inline constexpr Dim energy = make_dim(2, 1, -2, 0, 0);
inline constexpr Dim inv_temperature = make_dim(0, 0, 0, -1, 0);
inline constexpr Dim length_per_volt = make_dim(-1, -1, 3, 0, 1);
inline constexpr Dim current2_time = make_dim(0, 0, 1, 0, 2);
inline constexpr Dim rate_density = make_dim(-3, 0, -1, 0, 0);  // MHz/cm^3
}  // namespace dim

inline std::string dim_name(const Dim& d) {
  static const char* sym[5] = {"m", "kg", "s", "K", "A"};
  std::string num, den;
  for (int i = 0; i < 5; ++i) {
    int p = d.e[i];
    if (p == 0) continue;
    std::string& s = p > 0 ? num : den;
    if (!s.empty()) s += "·";
    s += sym[i];
    if (std::abs(p) != 1) s += "^" + std::to_string(std::abs(p));
  }
  if (num.empty() && den.empty()) return "1";
  if (num.empty()) num = "1";
  return den.empty() ? num : num + "/" + den;
}

struct Unit {
  double factor = 1.0;  // multiply a value in this unit to get SI
  Dim dim = dim::none;
};

namespace detail {

struct Symbol {
  std::string_view name;
  double factor;
  Dim dim;
  bool prefixable;
};

inline const std::vector<Symbol>& symbols() {
  static const std::vector<Symbol> s = {
      {"m", 1.0, dim::length, true},
      {"g", 1e-3, dim::mass, true},
      {"s", 1.0, dim::time, true},
      {"K", 1.0, dim::temperature, false},
      {"A", 1.0, dim::current, true},
      {"V", 1.0, dim::voltage, true},
      {"Ω", 1.0, dim::resistance, true},
      {"ohm", 1.0, dim::resistance, true},
      {"F", 1.0, dim::capacitance, true},
      {"Hz", 1.0, make_dim(0, 0, -1, 0, 0), true},
      {"Pa", 1.0, dim::pressure, true},
      {"J", 1.0, dim::energy, true},
      {"W", 1.0, make_dim(2, 1, -3, 0, 0), true},
      {"C", 1.0, make_dim(0, 0, 1, 0, 1), true},
      {"u", C::u, dim::mass, false},
      {"Å", 1e-10, dim::length, false},
      {"angstrom", 1e-10, dim::length, false},
      {"1", 1.0, dim::none, false},
  };
  return s;
}

struct Prefix {
  std::string_view name;
  double factor;
};

inline const std::vector<Prefix>& prefixes() {
  static const std::vector<Prefix> p = {
      {"G", 1e9},  {"M", 1e6},  {"k", 1e3},   {"c", 1e-2},
      {"m", 1e-3}, {"μ", 1e-6}, {"µ", 1e-6},  {"u", 1e-6},
      {"n", 1e-9}, {"p", 1e-12}, {"f", 1e-15},
  };
  return p;
}

// Splits a trailing exponent off a term: ^-2, ², ³, ⁻¹ ...
inline int split_exponent(std::string& term) {
  auto pos = term.find('^');
  if (pos != std::string::npos) {
    std::string ex = term.substr(pos + 1);
    term.resize(pos);
    int v = 0;
    auto [p, ec] = std::from_chars(ex.data(), ex.data() + ex.size(), v);
    if (ec != std::errc() || p != ex.data() + ex.size() || v == 0)
      throw ValidationError("bad unit exponent '^" + ex + "'");
    return v;
  }
  static const std::vector<std::pair<std::string_view, int>> sup = {
      {"⁻¹", -1}, {"⁻²", -2}, {"⁻³", -3}, {"¹", 1}, {"²", 2}, {"³", 3}};
  for (auto& [s, v] : sup) {
    if (term.size() > s.size() &&
        std::string_view(term).substr(term.size() - s.size()) == s) {
      term.resize(term.size() - s.size());
      return v;
    }
  }
  return 1;
}

inline Unit parse_term(std::string term) {
  int ex = split_exponent(term);
  for (auto& s : symbols()) {
    if (term == s.name) return Unit{std::pow(s.factor, ex), s.dim.pow(ex)};
  }
  for (auto& p : prefixes()) {
    if (term.size() <= p.name.size() || term.compare(0, p.name.size(), p.name) != 0)
      continue;
    std::string rest = term.substr(p.name.size());
    for (auto& s : symbols()) {
      if (s.prefixable && rest == s.name)
        return Unit{std::pow(p.factor * s.factor, ex), s.dim.pow(ex)};
    }
  }
  throw ValidationError("unknown unit '" + term + "'");
}

}  // namespace detail

inline Unit parse_unit(std::string_view text) {
  Unit u;
  bool denom = false;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    Unit t = detail::parse_term(cur);
    if (denom) {
      u.factor /= t.factor;
      u.dim = u.dim * t.dim.pow(-1);
    } else {
      u.factor *= t.factor;
      u.dim = u.dim * t.dim;
    }
    cur.clear();
  };
  const std::string_view dot = "·";
  for (size_t i = 0; i < text.size();) {
    char c = text[i];
    if (text.substr(i, dot.size()) == dot) {
      flush();
      i += dot.size();
    } else if (c == '*' || c == ' ' || c == '\t' || c == '.') {
      flush();
      ++i;
    } else if (c == '/') {
      flush();
      if (denom) throw ValidationError("unit '" + std::string(text) + "' has two '/'");
      denom = true;
      ++i;
    } else {
      cur += c;
      ++i;
    }
  }
  flush();
  return u;
}

struct Quantity {
  double si = 0.0;
  Dim dim = dim::none;
};

inline Quantity parse_quantity(std::string_view text) {
  size_t b = 0;
  while (b < text.size() && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  text.remove_prefix(b);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) throw ValidationError("empty quantity");
  double v = 0.0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc()) throw ValidationError("expected a number in '" + std::string(text) + "'");
  std::string_view rest(p, text.data() + text.size() - p);
  Unit u = parse_unit(rest);
  return Quantity{v * u.factor, u.dim};
}

// Parses text and checks it carries the expected dimension. A dimensioned
// field with no unit is an error; units are never implied.
inline double parse_as(std::string_view text, const Dim& expected,
                       const std::string& field = "value") {
  Quantity q = parse_quantity(text);
  if (!(q.dim == expected)) {
    throw ValidationError("field '" + field + "' expects " + dim_name(expected) + ", got '" +
                          std::string(text) + "' (" + dim_name(q.dim) + ")");
  }
  return q.si;
}

}  // namespace dps::units
