#pragma once

#include <vector>

#include "fglforge/fgl.hpp"
#include "fglforge/zpr_linalg.hpp"

namespace fglforge {

// Product of multiplication series over a weight list: the Euler class of
// the direct sum of the corresponding line summands.
struct EulerClass {
  RingSpec spec;
  long T = 0;
  std::vector<long> weights;
  USeries e;
};

EulerClass euler_of_weights(const FormalGroupLaw& law, const std::vector<long>& weights,
                            long T = -1);

// Expected leading order: sum over weights of p^{n w} with w the p-adic
// valuation of the weight and n the ring's Laurent generator index.
long euler_leading_order(const RingSpec& spec, const std::vector<long>& weights);

struct LeadingFormReport {
  long k_expected = 0;
  long k_found = -1;
  CoefElem lead;       // reduced representative mod m_0 at the leading slot
  CoefElem lead_full;  // full coefficient at the leading slot
  bool order_ok = false;
  bool unit_ok = false;
  // Whether everything above the leading slot lies in m_0. Reported as data:
  // it holds for deeper scalar rings and can fail over Z/p, where the
  // certificate below is the meaningful one.
  bool remainder_in_m0 = false;
  bool pass() const { return order_ok && unit_ok; }
};

LeadingFormReport leading_form(const EulerClass& ec);

// Synthetic injectivity model for multiplication by the Euler class on a
// free module with a filtration: the slot the weights claim as leading acts
// diagonally through its residue mod m_0, the remainder routes each basis
// vector to the next strictly higher filtration level. A corrupted class
// whose claimed slot died therefore shows up as a kernel instead of being
// re-fitted at a later slot. Kernel is computed over Z/p^r after
// specializing every generator to 1, restricted to the window of slots that
// stay inside the truncation.
struct ABInjectivityReport {
  long rank = 0;
  long k = 0;        // leading order used for the window
  long window = 0;   // domain slots per basis vector: j < T - k
  bool injective = false;
  std::vector<std::vector<unsigned long>> kernel;  // generators, empty when injective
};

ABInjectivityReport ab_injectivity_check(const EulerClass& ec, long rank,
                                         const std::vector<long>& filt_degrees);

}  // namespace fglforge
