#pragma once

#include <string>
#include <vector>

#include "fglforge/useries.hpp"

namespace fglforge {

// Truncated bivariate series sum c_{ij} x^i y^j over i + j < T, stored by
// total degree blocks: index (i, j) lives at (i+j)(i+j+1)/2 + j.
struct BiSeries {
  RingSpec spec;
  long T = 0;
  std::vector<CoefElem> t;
  long homdeg = kNoHomDeg;  // c_{ij} homogeneous of degree homdeg - 2(i+j)

  const CoefElem& at(long i, long j) const;
  void set(long i, long j, CoefElem v);
};

BiSeries bs_zero(const RingSpec& s, long T, long homdeg = kNoHomDeg);
BiSeries operator+(const BiSeries& a, const BiSeries& b);
BiSeries operator-(const BiSeries& a, const BiSeries& b);
BiSeries operator*(const BiSeries& a, const BiSeries& b);
bool operator==(const BiSeries& a, const BiSeries& b);
BiSeries bs_scale(const CoefElem& c, const BiSeries& f);

bool bs_is_symmetric(const BiSeries& f);
BiSeries bs_reduce_coef(const BiSeries& f, const RingSpec& target);

// x + y plus higher terms from two univariate ingredient series placed on
// the axes: A(x, y) = g(x) + g(y).
BiSeries bs_axes_sum(const USeries& g);

// f(A) for a univariate outer f with f(0) = 0 allowed nonzero constant; the
// inner bivariate A must have zero constant slot.
BiSeries bs_compose_outer(const USeries& f, const BiSeries& A);

// F(f(u), g(u)) as a univariate series; f and g need zero constant slots.
USeries bs_subst_uu(const BiSeries& F, const USeries& f, const USeries& g);

std::string bs_text(const BiSeries& f);
class JsonWriter;
void bs_json(const BiSeries& f, JsonWriter& w);

// Trivariate companion used by the associativity certificate; same total
// degree storage with i + j + k < T.
struct TriSeries {
  RingSpec spec;
  long T = 0;
  std::vector<CoefElem> t;

  const CoefElem& at(long i, long j, long k) const;
  void set(long i, long j, long k, CoefElem v);
};

TriSeries tri_zero(const RingSpec& s, long T);
TriSeries operator+(const TriSeries& a, const TriSeries& b);
TriSeries operator*(const TriSeries& a, const TriSeries& b);
bool operator==(const TriSeries& a, const TriSeries& b);
TriSeries tri_scale(const CoefElem& c, const TriSeries& f);

// Place a bivariate series on two of the three variables (0=x, 1=y, 2=z).
TriSeries tri_from_bi(const BiSeries& f, int var_a, int var_b, long T);

// F(S, t) where S is trivariate with zero constant slot and t is one of the
// three variables.
TriSeries tri_subst_bi(const BiSeries& F, const TriSeries& S, int var_t);

// Reindex variables: result(i, j, k) = f applied to the permuted exponents,
// perm maps result axis -> source axis.
TriSeries tri_permute(const TriSeries& f, const std::array<int, 3>& perm);

}  // namespace fglforge
