#include "fglforge/cyclic.hpp"

#include <stdexcept>
#include <string>

namespace fglforge {

CyclicGroupDatum cyclic_datum(long l, long p) {
  if (l < 1) throw std::invalid_argument("group order must be positive");
  if (p < 2) throw std::invalid_argument("bad prime");
  CyclicGroupDatum d;
  d.l = l;
  d.p = p;
  d.s = 0;
  d.l_prime = l;
  while (d.l_prime % p == 0) {
    d.l_prime /= p;
    ++d.s;
  }
  return d;
}

namespace {

long pow_long(long b, long e) {
  long r = 1;
  for (long i = 0; i < e; ++i) {
    if (r > (1L << 40)) throw std::domain_error("rank overflows the truncation");
    r *= b;
  }
  return r;
}

struct RelationData {
  USeries g;
  long k = 0;
  CoefElem lead_inv;
  int inv_depth = 0;
};

RelationData relation_for(const FormalGroupLaw& law, const CyclicGroupDatum& d, long T) {
  if (law.spec.unit_gen() == 0)
    throw std::domain_error("presentation needs a ring with an inverted generator");
  if (law.spec.p != d.p) throw std::invalid_argument("datum prime does not match the law");
  RelationData rd;
  rd.k = pow_long(d.p, d.s * law.spec.n);
  if (T <= rd.k)
    throw std::invalid_argument("truncation too small; need T > " + std::to_string(rd.k));
  rd.g = l_series(law, d.l, T);
  LowestTerm lt = us_lowest_term(rd.g, Ideal::m0());
  if (!lt.found || lt.ord != rd.k || !coef_is_unit(lt.coef))
    throw std::logic_error("relation series has no unit-led leading term at the expected order");
  CoefInverse ci = coef_inverse(rd.g.c[rd.k]);
  if (!ci.exact) throw std::logic_error("leading coefficient inverse did not terminate");
  rd.lead_inv = ci.inv;
  rd.inv_depth = ci.depth_used;
  return rd;
}

int scalar_depth(const RingSpec& s) {
  unsigned long M = s.scalar_modulus();
  if (M == 0) return kDefaultLiftDepth;
  int r = 0;
  for (unsigned long m = M; m > 1; m /= static_cast<unsigned long>(s.p)) ++r;
  return r;
}

}  // namespace

ModulePresentation cohomology_of_Bmu(const FormalGroupLaw& law, const CyclicGroupDatum& d,
                                     long T) {
  RelationData rd = relation_for(law, d, T);
  const long k = rd.k;

  ModulePresentation pres;
  pres.spec = law.spec;
  pres.d = d;
  pres.rank = k;
  pres.T_u = T;
  pres.T_omega = 0;

  // Reduce u^k against the relation: repeatedly clear the lowest surviving
  // slot >= k. Clearing slot t adds terms below t only with scalar-divisible
  // coefficients, so the revisit count per slot is bounded by the scalar
  // nilpotency depth.
  std::vector<CoefElem> W(T, coef_zero(law.spec));
  W[k] = coef_one(law.spec);
  std::vector<int> visits(T, 0);
  long guard = (T + k) * (scalar_depth(law.spec) + 2) * 4;
  int depth = 0;
  for (long iter = 0;; ++iter) {
    if (iter > guard) throw std::logic_error("division against the relation did not terminate");
    long t = -1;
    for (long j = k; j < T; ++j) {
      if (!W[j].is_zero()) {
        t = j;
        break;
      }
    }
    if (t < 0) break;
    depth = std::max(depth, ++visits[t]);
    CoefElem m = W[t] * rd.lead_inv;
    W[t] = coef_zero(law.spec);
    for (long j = 1; j < T; ++j) {
      if (j == k || t - k + j >= T) continue;
      const CoefElem& gj = rd.g.c[j];
      if (gj.is_zero()) continue;
      W[t - k + j] = W[t - k + j] - m * gj;
    }
  }
  pres.lift_depth = depth;

  pres.u_action.assign(k, std::vector<CoefElem>(k, coef_zero(law.spec)));
  for (long j = 0; j + 1 < k; ++j) pres.u_action[j + 1][j] = coef_one(law.spec);
  for (long i = 0; i < k; ++i) pres.u_action[i][k - 1] = W[i];
  return pres;
}

ModulePresentation leray_hirsch_presentation(const FormalGroupLaw& law,
                                             const CyclicGroupDatum& d, long T_u,
                                             long T_omega) {
  if (T_omega < 2) throw std::invalid_argument("need at least two omega slots");
  RelationData rd = relation_for(law, d, T_u);
  const long k = rd.k;

  ModulePresentation pres;
  pres.spec = law.spec;
  pres.d = d;
  pres.rank = k;
  pres.T_u = T_u;
  pres.T_omega = T_omega;

  // Same reduction, but against [l]u - omega: clearing slot t both spreads
  // the relation's other terms and shifts an omega power onto slot t - k.
  USeries zero = us_zero(law.spec, T_omega);
  std::vector<USeries> W(T_u, zero);
  W[k] = us_const(coef_one(law.spec), T_omega);
  std::vector<int> visits(T_u, 0);
  long guard = (T_u + k) * (scalar_depth(law.spec) + 2) * 4 * T_omega;
  int depth = 0;
  for (long iter = 0;; ++iter) {
    if (iter > guard) throw std::logic_error("relation substitution did not terminate");
    long t = -1;
    for (long j = k; j < T_u; ++j) {
      if (!W[j].is_zero()) {
        t = j;
        break;
      }
    }
    if (t < 0) break;
    depth = std::max(depth, ++visits[t]);
    USeries m = us_scale(rd.lead_inv, W[t]);
    W[t] = zero;
    for (long j = 1; j < T_u; ++j) {
      if (j == k || t - k + j >= T_u) continue;
      const CoefElem& gj = rd.g.c[j];
      if (gj.is_zero()) continue;
      W[t - k + j] = W[t - k + j] - us_scale(gj, m);
    }
    W[t - k] = W[t - k] + us_mul_umono(m, coef_one(law.spec), 1);
  }
  pres.lift_depth = depth;
  pres.uk_rows.assign(W.begin(), W.begin() + k);
  return pres;
}

OmegaCoherence leray_coherence_check(const FormalGroupLaw& law, const ModulePresentation& lh) {
  OmegaCoherence oc;
  if (lh.T_omega < 1 || lh.rank < 1) return oc;

  ModulePresentation plain = cohomology_of_Bmu(law, lh.d, lh.T_u);
  oc.zero_matches = true;
  for (long j = 0; j < lh.rank; ++j) {
    if (!(lh.uk_rows[j].c[0] == plain.u_action[j][lh.rank - 1])) {
      oc.zero_matches = false;
      break;
    }
  }

  // Substitute the defining series for omega. Rows are only known through
  // omega-order T_omega, so the comparison is valid through u-order
  // ord(inner) * T_omega.
  USeries inner = l_series(law, lh.d.l, lh.T_u);
  long ord = us_lowest_slot(inner);
  if (ord < 1) return oc;
  long valid = std::min(lh.T_u, ord * lh.T_omega);
  USeries acc = us_zero(lh.spec, lh.T_u);
  for (long j = 0; j < lh.rank; ++j) {
    USeries row = us_extend_zero(lh.uk_rows[j], lh.T_u);
    USeries sub = us_compose(row, inner);
    acc = acc + us_mul_umono(sub, coef_one(lh.spec), j);
  }
  oc.tautology_ok = true;
  for (long m = 0; m < valid; ++m) {
    CoefElem want = (m == lh.rank) ? coef_one(lh.spec) : coef_zero(lh.spec);
    if (!(acc.c[m] == want)) {
      oc.tautology_ok = false;
      break;
    }
  }
  oc.checked_to = valid;
  return oc;
}

long u_nilpotency_index(const ModulePresentation& pres) {
  const long k = pres.rank;
  if (k < 1 || pres.u_action.empty()) return -1;
  std::vector<std::vector<CoefElem>> A(k, std::vector<CoefElem>(k, coef_zero(pres.spec)));
  for (long i = 0; i < k; ++i)
    for (long j = 0; j < k; ++j) A[i][j] = reduce_mod_ideal(pres.u_action[i][j], Ideal::m0());
  auto is_zero_mat = [&](const std::vector<std::vector<CoefElem>>& M) {
    for (long i = 0; i < k; ++i)
      for (long j = 0; j < k; ++j)
        if (!reduce_mod_ideal(M[i][j], Ideal::m0()).is_zero()) return false;
    return true;
  };
  std::vector<std::vector<CoefElem>> P = A;
  for (long e = 1; e <= k; ++e) {
    if (is_zero_mat(P)) return e;
    if (e == k) break;
    std::vector<std::vector<CoefElem>> Q(k, std::vector<CoefElem>(k, coef_zero(pres.spec)));
    for (long i = 0; i < k; ++i)
      for (long j = 0; j < k; ++j) {
        for (long t = 0; t < k; ++t) Q[i][j] = Q[i][j] + P[i][t] * A[t][j];
        Q[i][j] = reduce_mod_ideal(Q[i][j], Ideal::m0());
      }
    P = Q;
  }
  return -1;
}

}  // namespace fglforge
