#pragma once

#include <string>

#include "fglforge/biseries.hpp"

namespace fglforge {

// Commutative one-dimensional formal group law, stored as a truncated
// bivariate series F over its coefficient ring together with the rational
// logarithm it was assembled from. Reductions keep a rational companion of
// the logarithm so multiplication series can be solved at truncations far
// beyond the stored bivariate order.
struct FormalGroupLaw {
  RingSpec spec;
  long T = 0;       // bivariate truncation order of F
  BiSeries F;
  bool has_log = false;
  RingSpec log_spec;  // rational companion ring of the logarithm
  USeries log;        // sum lambda_i u^{p^i} with lambda_0 = 1
  std::string provenance;
};

// The p-typical logarithm with coefficients solved degree by degree from the
// defining p-multiplication display: lambda_i = (sum_{k>=1} lambda_{i-k}
// v_k^{p^{i-k}}) / (p - p^{p^i}). Killed generators drop out of the sum.
USeries ptypical_log(const RingSpec& rational_spec, long T);

// Assemble the universal p-typical law at truncation T over the integral
// polynomial ring: exponential by reversion, F = exp(log x + log y), with
// every coefficient checked to be p-locally integral, and the
// p-multiplication display re-verified by substitution. Throws when any of
// these certificates fail. n and cutoff default from T.
FormalGroupLaw build_ptypical(long p, long T, int n = -1, long cutoff = -1);

// Coefficient-wise reduction onto a quotient or localized ring, carrying a
// matching rational companion logarithm.
FormalGroupLaw reduce_fgl(const FormalGroupLaw& law, const RingSpec& target);

struct LawAxiomsReport {
  bool unit_ok = false;
  bool comm_ok = false;
  bool assoc_ok = false;
  bool pseries_ok = false;
  long assoc_T = 0;  // trivariate order the associativity check ran at
  bool pass() const { return unit_ok && comm_ok && assoc_ok && pseries_ok; }
};

// Unit, commutativity, associativity (via full symmetry of F(F(x,y),z)) and
// agreement of the p-multiplication chain with its generator display.
LawAxiomsReport verify_law_axioms(const FormalGroupLaw& law, long assoc_T = -1);

// Multiplication-by-l series [l](u) at truncation T (default: the law's own
// order). Above the stored bivariate order two fast routes exist: the
// Frobenius-monomial route for Z/p-scalar Laurent rings, and the logarithm
// solve through the rational companion. Both agree with the binary addition
// chain on the window where the chain is available; unit tests pin that.
USeries l_series(const FormalGroupLaw& law, long l, long T = -1);

// Series iota with F(u, iota(u)) = 0.
USeries formal_inverse(const FormalGroupLaw& law);

// [p](u) folded from the generator display p u (+) v_1 u^p (+) v_2 u^{p^2}...
// with (+) the law's addition; killed generators contribute nothing.
USeries pseries_via_display(const FormalGroupLaw& law, long T = -1);

BiSeries bs_truncate(const BiSeries& f, long T2);

}  // namespace fglforge
