#pragma once

#include <vector>

#include "fglforge/fgl.hpp"

namespace fglforge {

// l = p^s * l_prime with p not dividing l_prime.
struct CyclicGroupDatum {
  long l = 1;
  long p = 2;
  long s = 0;
  long l_prime = 1;
};

CyclicGroupDatum cyclic_datum(long l, long p);

// Free-module presentation of R[[u]] modulo the multiplication series of l,
// or (when T_omega > 0) modulo the relation [l]u = omega over R[[omega]].
// Basis is 1, u, ..., u^{rank-1} in both cases.
struct ModulePresentation {
  RingSpec spec;
  CyclicGroupDatum d;
  long rank = 0;
  long T_u = 0;
  long T_omega = 0;  // 0 for the plain quotient
  // Highest number of times the division revisited a single slot: 1 when the
  // relation's leading coefficient divides cleanly, larger when lower-order
  // scalar-divisible terms force repeated lifting (bounded by the scalar
  // nilpotency depth).
  int lift_depth = 0;
  // Plain quotient: rank x rank multiplication-by-u matrix, column j = image
  // of the basis element u^j.
  std::vector<std::vector<CoefElem>> u_action;
  // Relation presentation: row j is the omega-series coefficient of u^j in
  // the expansion of u^rank (series variable = omega, truncation T_omega).
  std::vector<USeries> uk_rows;
};

ModulePresentation cohomology_of_Bmu(const FormalGroupLaw& law, const CyclicGroupDatum& d,
                                     long T);

ModulePresentation leray_hirsch_presentation(const FormalGroupLaw& law,
                                             const CyclicGroupDatum& d, long T_u,
                                             long T_omega);

// Certificates tying the two presentations together: setting omega to 0 must
// reproduce the plain quotient, and substituting the defining series for
// omega must reproduce u^rank through every order the truncations control.
struct OmegaCoherence {
  bool zero_matches = false;
  bool tautology_ok = false;
  long checked_to = 0;  // u-order (exclusive) through which the tautology held
  bool pass() const { return zero_matches && tautology_ok; }
};

OmegaCoherence leray_coherence_check(const FormalGroupLaw& law, const ModulePresentation& lh);

// Index of nilpotency of the u-action matrix after reduction mod m_0
// (expected: exactly the rank). Returns -1 if it fails to vanish by rank.
long u_nilpotency_index(const ModulePresentation& pres);

}  // namespace fglforge
