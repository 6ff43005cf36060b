#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "dpsolid/oracle/geometry.hpp"

namespace dps::oracle {

struct GaussianSite {
  Vec3 center{};
  double mass = 0;   // kg
  double sigma = 0;  // m, per-axis standard deviation
};

// A handful of explicitly placed Gaussian nuclei.
struct GaussianCloud {
  std::vector<GaussianSite> sites;
};

// Simple cubic lattice of identical Gaussian nuclei. Each site is jittered
// by up to jitter·spacing per axis from a seeded generator.
struct GaussianLattice {
  Vec3 origin{};
  double spacing = 0;
  std::array<int, 3> counts{1, 1, 1};
  double site_mass = 0;
  double sigma = 0;
  double jitter = 0;  // fraction of spacing, at most 0.1
  std::uint64_t seed = 1;
};

// Cubic cells of uniform density. Densities must be >= 0.
struct VoxelGrid {
  Vec3 origin{};
  double h = 0;
  std::array<int, 3> n{0, 0, 0};
  std::vector<double> density;  // x fastest

  double at(int i, int j, int k) const { return density[(static_cast<size_t>(k) * n[1] + j) * n[0] + i]; }
};

struct UniformShape {
  Shape shape;
  double rho = 0;  // kg/m^3
};

using Component = std::variant<GaussianCloud, GaussianLattice, VoxelGrid, UniformShape>;

// A mass distribution is a superposition of components.
struct MassDistribution {
  std::vector<Component> parts;

  MassDistribution() = default;
  MassDistribution(std::initializer_list<Component> c) : parts(c) {}
};

inline std::vector<GaussianSite> lattice_sites(const GaussianLattice& L) {
  std::vector<GaussianSite> out;
  std::mt19937_64 rng(L.seed);
  std::uniform_real_distribution<double> u(-L.jitter * L.spacing, L.jitter * L.spacing);
  for (int k = 0; k < L.counts[2]; ++k)
    for (int j = 0; j < L.counts[1]; ++j)
      for (int i = 0; i < L.counts[0]; ++i) {
        Vec3 p = L.origin + L.spacing * Vec3{double(i), double(j), double(k)};
        if (L.jitter > 0) {
          double a = u(rng), b = u(rng), c = u(rng);
          p = p + Vec3{a, b, c};
        }
        out.push_back({p, L.site_mass, L.sigma});
      }
  return out;
}

inline void validate(const Component& c) {
  std::visit(
      [](auto&& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, GaussianCloud>) {
          if (v.sites.empty()) throw InvalidInput("empty Gaussian cloud");
          for (auto& s : v.sites)
            if (!(s.mass > 0) || !(s.sigma > 0)) throw InvalidInput("Gaussian sites need mass, sigma > 0");
        } else if constexpr (std::is_same_v<T, GaussianLattice>) {
          if (!(v.spacing > 0) || !(v.site_mass > 0) || !(v.sigma > 0))
            throw InvalidInput("lattice needs spacing, site mass and sigma > 0");
          if (v.jitter < 0 || v.jitter > 0.1) throw InvalidInput("lattice jitter must lie in [0, 0.1]");
          for (int n : v.counts)
            if (n < 1) throw InvalidInput("lattice counts must be >= 1");
        } else if constexpr (std::is_same_v<T, VoxelGrid>) {
          if (!(v.h > 0)) throw InvalidInput("voxel size must be positive");
          size_t n = size_t(v.n[0]) * v.n[1] * v.n[2];
          if (n == 0 || v.density.size() != n) throw InvalidInput("voxel grid size mismatch");
          for (double d : v.density)
            if (!(d >= 0)) throw InvalidInput("voxel densities must be >= 0");
        } else {
          validate_shape(v.shape);
          if (!(v.rho > 0)) throw InvalidInput("shape density must be positive");
        }
      },
      c);
}

inline double total_mass(const Component& c) {
  return std::visit(
      [](auto&& v) -> double {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, GaussianCloud>) {
          double m = 0;
          for (auto& s : v.sites) m += s.mass;
          return m;
        } else if constexpr (std::is_same_v<T, GaussianLattice>) {
          return v.site_mass * v.counts[0] * v.counts[1] * v.counts[2];
        } else if constexpr (std::is_same_v<T, VoxelGrid>) {
          double m = 0;
          for (double d : v.density) m += d;
          return m * v.h * v.h * v.h;
        } else {
          return v.rho * shape_volume(v.shape);
        }
      },
      c);
}

inline double total_mass(const MassDistribution& d) {
  double m = 0;
  for (auto& c : d.parts) m += total_mass(c);
  return m;
}

inline MassDistribution translated(const MassDistribution& d, const Vec3& s) {
  MassDistribution out;
  for (auto c : d.parts) {
    std::visit(
        [&](auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, GaussianCloud>) {
            for (auto& site : v.sites) site.center = site.center + s;
          } else if constexpr (std::is_same_v<T, GaussianLattice> || std::is_same_v<T, VoxelGrid>) {
            v.origin = v.origin + s;
          } else {
            v.shape = translated(v.shape, s);
          }
        },
        c);
    out.parts.push_back(std::move(c));
  }
  return out;
}

// The two branches of a superposition. Their masses must agree.
struct SuperposedPair {
  MassDistribution state1, state2;

  SuperposedPair() = default;
  SuperposedPair(MassDistribution a, MassDistribution b) : state1(std::move(a)), state2(std::move(b)) {
    validate();
  }

  void validate() const {
    if (state1.parts.empty() || state2.parts.empty()) throw InvalidInput("empty superposition branch");
    for (auto& c : state1.parts) oracle::validate(c);
    for (auto& c : state2.parts) oracle::validate(c);
    double m1 = total_mass(state1), m2 = total_mass(state2);
    if (std::abs(m1 - m2) > 1e-9 * std::max(std::abs(m1), std::abs(m2)))
      throw InvalidInput("superposed branches must carry equal mass");
  }
};

enum class Method { PairwiseSum, PotentialGrid, FieldForm };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::PairwiseSum: return "pairwise";
    case Method::PotentialGrid: return "potential-grid";
    case Method::FieldForm: return "field-form";
  }
  return "?";
}

struct QuadratureSpec {
  Method method = Method::PairwiseSum;
  int resolution = 32;            // cells across the shortest feature
  double target_rel_err = 1e-3;
  double softening = 0;           // Plummer length; 0 selects Gaussian-smeared cells
  double feature = 0;             // overrides the automatic shortest feature, m

  void validate() const {
    if (resolution < 4) throw InvalidInput("quadrature resolution must be >= 4");
    if (!(target_rel_err > 0) || target_rel_err > 0.1)
      throw InvalidInput("target relative error must lie in (0, 0.1]");
    if (softening < 0 || feature < 0) throw InvalidInput("negative softening or feature length");
  }
};

}  // namespace dps::oracle
