#pragma once

#include <chrono>
#include <cmath>

#include "dpsolid/oracle/dp_energy.hpp"

namespace dps::oracle {

struct InterferenceResult {
  OracleResult E_A, E_B, E_AB, E_BA;
  OracleResult combined;  // dp_energy of A and B superposed together

  double ratio() const {  // (E_AB + E_BA) / (E_A + E_B)
    return (E_AB.value + E_BA.value) / (E_A.value + E_B.value);
  }
};

inline bool is_empty(const SuperposedPair& p) { return p.state1.parts.empty() && p.state2.parts.empty(); }

// Splits the energy of a combination of two solids into the two self terms
// and the two cross terms. Every term is discretised on the grid of the
// combination so the four parts add up to the combined energy.
inline InterferenceResult interference_terms(const SuperposedPair& A, const SuperposedPair& B,
                                             const QuadratureSpec& q = {}) {
  q.validate();
  A.validate();
  InterferenceResult r;
  auto t0 = std::chrono::steady_clock::now();
  if (is_empty(B)) {
    r.E_A = dp_energy(A, q);
    r.E_B = r.E_AB = r.E_BA = finish({0.0}, q, q.method, "empty", t0);
    r.combined = r.E_A;
    return r;
  }
  B.validate();
  SuperposedPair AB = merged(A, B);
  std::string eng;
  r.E_A = finish(level_sums(A, A, true, AB, q, &eng), q, q.method, eng, t0);
  r.E_B = finish(level_sums(B, B, true, AB, q), q, q.method, eng, t0);
  r.E_AB = finish(level_sums(A, B, false, AB, q), q, q.method, eng, t0);
  r.E_BA = finish(level_sums(B, A, false, AB, q), q, q.method, eng, t0);
  r.combined = finish(level_sums(AB, AB, true, AB, q), q, q.method, eng, t0);
  return r;
}

}  // namespace dps::oracle
