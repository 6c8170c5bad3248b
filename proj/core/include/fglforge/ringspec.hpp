#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace fglforge {

// Coefficient rings for the series engine. Everything is a graded subquotient
// of a polynomial ring on generators v_1, v_2, ... over p-local scalars, with
// deg v_k = -2(p^k - 1). The series variable u carries degree 2, so a series
// slot u^j pairs with coefficients of degree d - 2j when the series is
// homogeneous of degree d.
enum class RingKind {
  RationalVPoly,  // exact rational scalars, polynomial generators
  BPTruncated,    // p-locally integral scalars, polynomial generators
  EnRing,         // p-locally integral, v_n inverted
  KprRing,        // scalars Z/p^r, only v_n retained and inverted
};

// Hard cap on retained generators. Generators above a spec's n never appear;
// 10 covers every truncation this library is used at (p^10 slots would be
// far past any feasible window).
inline constexpr int kMaxGens = 10;

// Exponents of v_1..v_10; slot k-1 belongs to v_k. Negative entries are legal
// only for the inverted generator of a Laurent kind.
using ExpVec = std::array<int16_t, kMaxGens>;

ExpVec expvec_zero();
ExpVec expvec_gen(int k, int e);
ExpVec expvec_add(const ExpVec& a, const ExpVec& b);
bool expvec_is_zero(const ExpVec& e);

struct RingSpec {
  RingKind kind = RingKind::RationalVPoly;
  long p = 2;
  int r = 1;   // scalar exponent: modulus p^r for KprRing and quotient views
  int n = 1;   // top retained generator index (0 = constants only)
  // Monomials whose window degree drops below -degree_cutoff are discarded.
  // Window degree ignores the inverted generator, so truncation commutes
  // with multiplication by units.
  long degree_cutoff = 64;
  // Quotient view by the invariant prime ideal (p, v_1..v_{ih-1}); only for
  // BPTruncated. Low generators vanish and scalars become residues mod p^r;
  // r > 1 keeps extra p-adic digits for solvers that divide by powers of p.
  int ih = 0;
  // Kill generators below this index while keeping scalars as they are.
  // Used for rational models with a prescribed bottom generator.
  int vkill = 0;

  long scalar_modulus() const;  // 0 for exact rationals, else p^r or p
  bool modular() const { return scalar_modulus() != 0; }
  bool charp() const { return scalar_modulus() == p; }
  bool rational_scalars() const { return scalar_modulus() == 0; }
  // Scalars must embed into Z_(p) (every kind except RationalVPoly).
  bool p_local_integral() const;
  int unit_gen() const;  // index of the inverted generator, 0 if none
  int low_gen() const;   // smallest live generator index (n+1 when none)
  bool gen_alive(int k) const;
  long gen_degree(int k) const;  // -2(p^k - 1)
  long full_degree(const ExpVec& e) const;
  long window_degree(const ExpVec& e) const;
  bool in_window(const ExpVec& e) const;
  void check_valid() const;  // throws std::invalid_argument on bad data
  std::string describe() const;
  bool operator==(const RingSpec& o) const = default;
};

RingSpec rational_vpoly(long p, int n, long cutoff);
RingSpec bp_truncated(long p, int n, long cutoff);
RingSpec bp_mod_ih(long p, int h, int n, long cutoff);
RingSpec en_ring(long p, int n, long cutoff);
RingSpec kpr_ring(long p, int r, int n);

// Reduction ideals recognised by reduce_mod_ideal and lowest_term.
struct Ideal {
  enum class Tag { None, M0, Ih };
  Tag tag = Tag::None;
  int h = 0;
  static Ideal none() { return {Tag::None, 0}; }
  static Ideal m0() { return {Tag::M0, 0}; }
  static Ideal ih(int h) { return {Tag::Ih, h}; }
  bool operator==(const Ideal& o) const = default;
};

// Generator count so that a p-typical law truncated at u-order T sees every
// contributing generator: largest n with p^n < T.
int gens_for_truncation(long p, long T);

// Default window wide enough for every coefficient of a degree-2 homogeneous
// series truncated at u-order T.
long cutoff_for_truncation(long T);

}  // namespace fglforge
