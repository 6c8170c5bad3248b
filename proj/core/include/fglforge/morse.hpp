#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "fglforge/euler.hpp"

namespace fglforge {

// Fixed-point combinatorics of a circle action: one connected component of
// the fixed locus, described by the free-module generators of its own
// cohomology, its even Morse index, the circle weights on its normal bundle,
// and the moment value used to order the attaching sequence.
struct FixedComponentDatum {
  std::string name;
  std::vector<long> generator_degrees;
  long morse_index = 0;
  std::vector<long> normal_weights;
  mpq_class moment_value = 0;
};

// Certificate for one attaching step: the Euler class of the negative part
// of the normal bundle has unit-led leading term at the expected exponent,
// which is what splits the step's extension.
struct SplitCertificate {
  std::string name;
  long k = 0;
  bool order_ok = false;
  bool unit_ok = false;
  bool pass() const { return order_ok && unit_ok; }
};

struct AssembledModule {
  long p = 2;
  int r = 1;
  int n = 1;
  std::vector<std::string> gen_names;  // source component per generator
  std::vector<long> gen_degrees;       // morse index + component degree
  std::vector<std::string> order;      // component names in moment order
  std::vector<SplitCertificate> splits;
  bool degenerate = false;  // empty fixed locus
  long rank() const { return static_cast<long>(gen_degrees.size()); }
};

// Attach components in increasing moment order, splitting each step via the
// unit-led Euler certificate of its negative normal weights. Duplicate
// moment values are rejected (the order would be undefined), as are odd
// Morse indices and indices inconsistent with the count of negative weights.
AssembledModule assemble(const std::vector<FixedComponentDatum>& data, long p, int r, int n);

// Free rank-d module over Z/p^r counts p^{rd} elements (one period's worth,
// the inverted generator set to 1).
mpz_class module_cardinality(long p, int r, long rank);

struct MorseEqualityCertificate {
  mpz_class fixed_side;      // product of component cardinalities
  mpz_class assembled_side;  // cardinality of the assembled module
  bool equal = false;
  bool all_splits_ok = false;
  bool degenerate = false;
  AssembledModule assembled;
  bool pass() const { return equal && all_splits_ok; }
};

MorseEqualityCertificate morse_equality_check(const std::vector<FixedComponentDatum>& data,
                                              long p, int r, int n);

// Kernel of Euler-class multiplication on the m-truncated module of one
// component, plus the two cardinality inequalities evaluated against the
// assembled module (the fixed side is the whole fixed locus).
struct KernelWindowCertificate {
  std::string component;
  long m = 0;
  long k = 0;
  bool window_empty = false;  // m < k: nothing to certify
  long kernel_gens = 0;
  long kernel_min_slot = -1;
  bool low_window_trivial = false;  // ker meets span{u^j : j <= m-k} only in 0
  bool top_window_only = false;     // every generator lives in the top k slots
  mpz_class euler_lhs, euler_rhs;   // |K(F)|^{m+1} - |K(F)|^{k+1} <= |K(M_trunc)|
  bool euler_bound_ok = false;
  mpz_class leray_lhs, leray_rhs;  // |K(M_trunc)| <= |K(M)|^{m+1}
  bool leray_bound_ok = false;
  bool pass() const {
    return window_empty || (low_window_trivial && euler_bound_ok && leray_bound_ok);
  }
};

KernelWindowCertificate kernel_window_check(const std::vector<FixedComponentDatum>& data,
                                            std::size_t component_index, long m,
                                            const AssembledModule& assembled);

}  // namespace fglforge
