#include "fglforge/euler.hpp"

#include <algorithm>
#include <stdexcept>

namespace fglforge {

EulerClass euler_of_weights(const FormalGroupLaw& law, const std::vector<long>& weights,
                            long T) {
  if (T < 0) T = law.T;
  if (T < 1) throw std::invalid_argument("euler truncation out of range");
  EulerClass ec;
  ec.spec = law.spec;
  ec.T = T;
  ec.weights = weights;
  ec.e = us_const(coef_one(law.spec), T);
  ec.e.homdeg = 0;
  for (long w : weights) {
    if (w == 0) throw std::invalid_argument("weight 0 has no invertible Euler factor");
    ec.e = ec.e * l_series(law, w, T);
  }
  return ec;
}

long euler_leading_order(const RingSpec& spec, const std::vector<long>& weights) {
  if (spec.unit_gen() == 0)
    throw std::domain_error("leading order needs a ring with an inverted generator");
  long total = 0;
  for (long w : weights) {
    if (w == 0) throw std::invalid_argument("weight 0 has no invertible Euler factor");
    unsigned long aw = (w < 0) ? static_cast<unsigned long>(-(w + 1)) + 1
                               : static_cast<unsigned long>(w);
    int v = padic_val_ul(aw, spec.p);
    long k = 1;
    for (long i = 0; i < spec.n * v; ++i) {
      if (k > (1L << 40)) throw std::domain_error("leading order overflows the truncation");
      k *= spec.p;
    }
    total += k;
    if (total > (1L << 41)) throw std::domain_error("leading order overflows the truncation");
  }
  return total;
}

LeadingFormReport leading_form(const EulerClass& ec) {
  LeadingFormReport rep;
  rep.k_expected = euler_leading_order(ec.spec, ec.weights);
  LowestTerm lt = us_lowest_term(ec.e, Ideal::m0());
  rep.k_found = lt.found ? lt.ord : -1;
  if (lt.found) {
    rep.lead = lt.coef;
    rep.lead_full = ec.e.c[lt.ord];
    rep.unit_ok = coef_is_unit(lt.coef);
  }
  rep.order_ok = lt.found && lt.ord == rep.k_expected;
  rep.remainder_in_m0 = lt.found;
  if (lt.found) {
    for (long j = lt.ord + 1; j < ec.T; ++j) {
      if (!reduce_mod_ideal(ec.e.c[j], Ideal::m0()).is_zero()) {
        rep.remainder_in_m0 = false;
        break;
      }
    }
  }
  return rep;
}

ABInjectivityReport ab_injectivity_check(const EulerClass& ec, long rank,
                                         const std::vector<long>& filt_degrees) {
  const RingSpec& s = ec.spec;
  unsigned long M = s.scalar_modulus();
  if (M < 2) throw std::domain_error("injectivity model needs modular scalars");
  if (rank < 1 || static_cast<size_t>(rank) != filt_degrees.size())
    throw std::invalid_argument("rank must match the filtration list");

  int r = 0;
  for (unsigned long m = M; m > 1; m /= static_cast<unsigned long>(s.p)) {
    if (m % static_cast<unsigned long>(s.p) != 0)
      throw std::domain_error("scalar modulus is not a prime power");
    ++r;
  }

  ABInjectivityReport rep;
  rep.rank = rank;
  // The slot under test is the one the weights claim, not whatever the series
  // happens to lead with: a corrupted series with a dead claimed slot must
  // show up as a kernel, not get its leading form re-fitted.
  rep.k = euler_leading_order(s, ec.weights);
  rep.window = ec.T - rep.k;
  if (rep.window <= 0)
    throw std::invalid_argument("truncation too small; need T > " + std::to_string(rep.k));

  // Split e = L + m with L the part of the claimed slot surviving mod m_0.
  // L acts diagonally, m raises each basis vector to the next strictly higher
  // filtration level.
  CoefElem lead = reduce_mod_ideal(ec.e.c[rep.k], Ideal::m0());
  unsigned long dv = coef_specialize_units(lead);
  std::vector<unsigned long> mv(ec.T, 0);
  for (long j = 0; j < ec.T; ++j) {
    CoefElem c = ec.e.c[j];
    if (j == rep.k) c = c - lead;
    mv[j] = coef_specialize_units(c);
  }

  std::vector<long> next(rank, -1);
  for (long i = 0; i < rank; ++i) {
    long best = -1;
    for (long t = 0; t < rank; ++t) {
      if (filt_degrees[t] <= filt_degrees[i]) continue;
      if (best < 0 || filt_degrees[t] < filt_degrees[best]) best = t;
    }
    next[i] = best;
  }

  long W = rep.window;
  ZprMatrix A(rank * ec.T, rank * W);
  for (long i = 0; i < rank; ++i) {
    for (long j = 0; j < W; ++j) {
      long col = i * W + j;
      A.at(i * ec.T + (j + rep.k), col) = dv;
      if (next[i] < 0) continue;
      for (long jp = 0; jp < ec.T; ++jp) {
        if (mv[jp] == 0 || j + jp >= ec.T) continue;
        long row = next[i] * ec.T + (j + jp);
        A.at(row, col) = mod_add(A.at(row, col), mv[jp], M);
      }
    }
  }

  rep.kernel = zpr_kernel(A, s.p, r);
  rep.injective = rep.kernel.empty();
  return rep;
}

}  // namespace fglforge
