#pragma once

#include <gmpxx.h>

#include <array>
#include <string>
#include <vector>

#include "fglforge/ringspec.hpp"

namespace fglforge {

class JsonWriter;

// One monomial: exponent vector and a scalar. Exactly one of q / m is live,
// decided by the owning spec: q for rational-scalar kinds, m (a residue in
// [0, modulus)) for modular ones.
struct Term {
  ExpVec e;
  mpq_class q;
  unsigned long m = 0;
};

// Element of a coefficient ring. Terms are kept normalized: canonical order
// (descending full degree, then ascending lex on exponents), no zero scalars,
// no out-of-window monomials, quotient relations applied.
struct CoefElem {
  RingSpec spec;
  std::vector<Term> terms;

  bool is_zero() const { return terms.empty(); }
  std::size_t term_count() const { return terms.size(); }
};

CoefElem coef_zero(const RingSpec& s);
CoefElem coef_one(const RingSpec& s);
CoefElem coef_int(const RingSpec& s, long v);
CoefElem coef_mpq(const RingSpec& s, const mpq_class& v);
CoefElem coef_gen(const RingSpec& s, int k, int e = 1);
CoefElem coef_mono(const RingSpec& s, const ExpVec& e, const mpq_class& c);

CoefElem operator+(const CoefElem& a, const CoefElem& b);
CoefElem operator-(const CoefElem& a, const CoefElem& b);
CoefElem operator-(const CoefElem& a);
CoefElem operator*(const CoefElem& a, const CoefElem& b);
bool operator==(const CoefElem& a, const CoefElem& b);
CoefElem coef_scale(const CoefElem& a, const mpq_class& c);
CoefElem coef_scale_int(const CoefElem& a, long c);

// Sum-of-products accumulator: raw monomials pile up and are normalized once
// when taken, so a slot assembled from many contributions pays one sort
// instead of one per contribution. Modular specs skip the rational payload
// entirely. Reusable after take().
class CoefAccum {
 public:
  explicit CoefAccum(const RingSpec& s);
  void add(const CoefElem& a);                            // += a
  void add_product(const CoefElem& a, const CoefElem& b); // += a * b
  bool empty() const { return tq_.empty() && tm_.empty(); }
  CoefElem take();

 private:
  RingSpec spec_;
  std::array<long, kMaxGens> wdeg_;  // per-generator window degrees
  std::array<long, kMaxGens> fdeg_;  // per-generator full degrees
  std::vector<Term> tq_;  // rational-scalar path
  std::vector<std::pair<ExpVec, unsigned long>> tm_;  // modular path
};

// Raise all generator exponents and the scalar to the p-th power. Only valid
// in characteristic p (prime scalar modulus), where it is a ring map.
CoefElem coef_frobenius(const CoefElem& a);

// Canonical representative after killing the ideal: M0 drops every monomial
// with a positive non-inverted exponent and reduces scalars mod p (except in
// the purely rational kind, where scalars stay); Ih(h) drops v_{<h} monomials
// and reduces scalars mod p.
CoefElem reduce_mod_ideal(const CoefElem& a, const Ideal& ideal);

// True when the M0-reduction is a single monomial with an invertible scalar,
// which is exactly invertibility in the window-truncated ring.
bool coef_is_unit(const CoefElem& a);

struct CoefInverse {
  CoefElem inv;
  bool exact = false;     // false when the lift-depth cap cut the expansion
  int depth_used = 0;     // m_0-adic iterations consumed
};

inline constexpr int kDefaultLiftDepth = 12;

// Inverse in the window-truncated ring via a geometric expansion around the
// unit monomial. Terminates exactly when the complement of that monomial is
// nilpotent (always for Z/p^r scalars and for window-bounded monomials);
// otherwise stops at depth_cap and reports exact = false.
CoefInverse coef_inverse(const CoefElem& a, int depth_cap = kDefaultLiftDepth);

// Ring-change homomorphism along the legal reduction chains
// (rational -> integral -> quotients/Laurent -> Z/p^r). Throws when the
// requested pair of specs is not connected by such a map or when a scalar
// fails the p-integrality required by the target.
CoefElem reduce_coef(const CoefElem& a, const RingSpec& target);

struct HomDegree {
  bool homogeneous = false;
  long degree = 0;  // meaningful when homogeneous and nonzero
  bool zero = false;
};
HomDegree coef_degree(const CoefElem& a);

// Evaluate with every generator set to 1, scalars taken mod the target
// modulus. Only meaningful for modular specs.
unsigned long coef_specialize_units(const CoefElem& a);

std::string coef_text(const CoefElem& a);
void coef_json(const CoefElem& a, JsonWriter& w);

// Residue helpers shared with the linear algebra layer.
unsigned long mod_add(unsigned long a, unsigned long b, unsigned long m);
unsigned long mod_sub(unsigned long a, unsigned long b, unsigned long m);
unsigned long mod_mul(unsigned long a, unsigned long b, unsigned long m);
unsigned long mod_pow(unsigned long a, unsigned long e, unsigned long m);
// Inverse of a unit modulo p^r (a must be coprime to p).
unsigned long mod_inv_ppow(unsigned long a, long p, int r);
int padic_val_ul(unsigned long a, long p);  // valuation, r means "zero mod p^r"
mpq_class mpq_from_string(const std::string& s);

}  // namespace fglforge
