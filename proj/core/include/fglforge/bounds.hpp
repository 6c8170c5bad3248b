#pragma once

#include <gmpxx.h>

#include <vector>

#include "fglforge/euler.hpp"
#include "fglforge/fgl.hpp"

namespace fglforge {

// Slice heights of a filtered module whose associated graded pieces are
// height-n_j quotients.
struct LandweberFiltration {
  std::vector<long> heights;
};

// [p]u over the height-h quotient of the integral ring, at any truncation
// the logarithm route can reach.
USeries pseries_mod_ih(long p, int h, long T);

// The unit-led cofactor pi with [p]u = u^{p^h} * pi(u) mod I_h, evaluated on
// the j-th p-power series: pi[j] := pi([p^j]u). pi[0](0) = v_h.
USeries pi_series(long p, int h, long j, long T);

struct UPowersCertificate {
  long p = 2;
  int h = 1;
  long a = 1;
  long T = 0;
  long shift = 0;        // p^{ah}, the monomial prefactor's order
  bool pass = false;
  long first_mismatch = -1;  // slot of the first disagreement, -1 when none
};

// Certifies [p^a]u = u^{p^{ah}} * pi[0]^{p^{(a-1)h}} * ... * pi[a-1] mod I_h
// through order T, computing the left side by an independent composition
// chain.
UPowersCertificate verify_upowers(long p, int h, long a, long T);

// Sum over all (weight exponent, height) pairs of p^{n_j * w}.
mpz_class bound_B(long p, const std::vector<long>& weight_exponents,
                  const LandweberFiltration& filt);

struct LensBound {
  mpz_class C;  // sum of p^{s n_j}
  mpz_class r;  // minimal admissible order: q(q-1) C
};

LensBound lens_bound(long p, long q, long s, const LandweberFiltration& filt);

// Minimal n with 2(p^n - 1) > m + 1 (the generator degree must clear the
// dimension range strictly).
long choose_height(long m, long p);

// Synthetic filtered module acted on by an Euler product: the product part
// acts diagonally slice by slice (after specializing every generator to 1),
// and the nilpotent part is given as strictly lower-triangular connecting
// blocks of scalar u-series. Scalars are Z/p^r; slices of positive height
// are p-torsion, so r must be 1 unless every height is 0.
struct FilteredModuleModel {
  long p = 2;
  int r = 1;
  std::vector<long> heights;  // n_j per slice
  std::vector<long> weights;  // weights defining the acting Euler product
  // eplus[i][j]: series mapping slice j into slice i; must vanish for i >= j.
  std::vector<std::vector<std::vector<unsigned long>>> eplus;
};

// Per-slice diagonal series: the Euler product of the weights over the
// height-n quotient (height 0 = the integral ring), all generators set to 1,
// scalars mod p^r. Exposed so tests and corrupted controls can build models
// from the same ingredients as the checker.
std::vector<unsigned long> euler_scalar_series(long p, int r, long height,
                                               const std::vector<long>& weights, long T);

struct KernelVanishingCertificate {
  long p = 2;
  int r = 1;
  long q = 1;
  long A = 0;
  mpz_class B;
  long window = 0;  // A + qB, the tested quotient order
  // The telescoping argument needs the diagonal and nilpotent parts to
  // commute; checked exactly, not assumed.
  bool intertwine_ok = false;
  bool nilpotent_ok = false;  // e_+^q = 0 at the window
  bool geometric_ok = false;  // e * sum_i Pi^{q-i} e_+^{i-1} = Pi^q - e_+^q
  bool kernel_empty_mod_A = false;
  long kernel_gens = 0;
  long kernel_min_order = -1;  // least u-order in any kernel generator
  bool pass() const {
    return intertwine_ok && nilpotent_ok && geometric_ok && kernel_empty_mod_A;
  }
};

KernelVanishingCertificate kernel_vanishing_check(const FilteredModuleModel& model, long A,
                                                  long q);

}  // namespace fglforge
