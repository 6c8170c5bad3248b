#pragma once

#include <climits>
#include <map>
#include <string>
#include <vector>

#include "fglforge/coef.hpp"

namespace fglforge {

inline constexpr long kNoHomDeg = LONG_MIN;

// Truncated series sum_{j < T} c[j] u^j with coefficients in one ring.
// When homdeg is set the series is homogeneous of that degree with |u| = 2,
// i.e. c[j] is homogeneous of degree homdeg - 2j; arithmetic maintains the
// flag when it can and clears it otherwise. Binary operations require equal
// truncation orders: callers must truncate or extend explicitly.
struct USeries {
  RingSpec spec;
  long T = 0;
  std::vector<CoefElem> c;
  long homdeg = kNoHomDeg;

  bool is_zero() const;
};

USeries us_zero(const RingSpec& s, long T, long homdeg = kNoHomDeg);
USeries us_u(const RingSpec& s, long T);                       // the series u
USeries us_monomial(const CoefElem& coef, long k, long T);     // coef * u^k
USeries us_const(const CoefElem& coef, long T);

USeries operator+(const USeries& a, const USeries& b);
USeries operator-(const USeries& a, const USeries& b);
USeries operator-(const USeries& a);
USeries operator*(const USeries& a, const USeries& b);
bool operator==(const USeries& a, const USeries& b);

USeries us_scale(const CoefElem& c, const USeries& f);
USeries us_scale_int(long c, const USeries& f);
// f * (coef * u^k), dropping slots past T.
USeries us_mul_umono(const USeries& f, const CoefElem& coef, long k);

USeries us_truncate(const USeries& f, long T2);
// Widen the truncation with zero slots. Only sound when the caller knows the
// dropped tail genuinely vanishes (e.g. slot support on a sparse grid); the
// call sites document why.
USeries us_extend_zero(const USeries& f, long T2);
// Divide by u^k; the low k slots must vanish.
USeries us_shift_div(const USeries& f, long k);

long us_lowest_slot(const USeries& f);  // -1 when zero

// Memoized powers of a fixed series. In prime characteristic exponents are
// split along base-p digits so p-th powers ride the Frobenius ring map
// instead of repeated multiplication.
class UPowerTable {
 public:
  explicit UPowerTable(USeries g);
  const USeries& pow(long k);  // k >= 1

 private:
  std::map<long, USeries> memo_;
};

USeries us_power(const USeries& g, long k);  // k >= 0
USeries us_frobenius(const USeries& f);      // prime characteristic only

// f(g) for g with zero constant slot; power table supplied by the caller
// when several compositions share one inner series.
USeries us_compose(const USeries& f, const USeries& g);
USeries us_compose(const USeries& f, UPowerTable& gpow, const RingSpec& gspec, long gT);

// Multiplicative inverse of a series with unit constant slot.
USeries us_series_inverse(const USeries& f);

// Compositional inverse of f = (unit) u + O(u^2). Quadratic-cost term solve;
// intended for the modest truncations where it is used.
USeries us_reversion(const USeries& f);

struct LowestTerm {
  bool found = false;
  long ord = -1;
  CoefElem coef;  // reduced representative mod the ideal
};
// First slot whose coefficient survives reduction mod the ideal.
LowestTerm us_lowest_term(const USeries& f, const Ideal& ideal);

USeries us_reduce_coef(const USeries& f, const RingSpec& target);
USeries us_reduce_ideal(const USeries& f, const Ideal& ideal);

std::string us_text(const USeries& f, const std::string& var = "u");
class JsonWriter;
void us_json(const USeries& f, JsonWriter& w, const std::string& var = "u");

// Throws unless every nonzero slot is homogeneous of degree homdeg - 2j.
void us_check_homogeneous(const USeries& f, long homdeg);

}  // namespace fglforge
