#include "fglforge/morse.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "fglforge/zpr_linalg.hpp"

namespace fglforge {

namespace {

std::vector<long> negative_weights(const FixedComponentDatum& c) {
  std::vector<long> neg;
  for (long w : c.normal_weights)
    if (w < 0) neg.push_back(w);
  return neg;
}

void validate_component(const FixedComponentDatum& c) {
  if (c.morse_index < 0 || c.morse_index % 2 != 0)
    throw std::invalid_argument("component '" + c.name + "': morse index must be even and >= 0");
  for (long w : c.normal_weights)
    if (w == 0)
      throw std::invalid_argument("component '" + c.name + "': zero normal weight");
  long neg = static_cast<long>(negative_weights(c).size());
  if (2 * neg != c.morse_index)
    throw std::invalid_argument("component '" + c.name +
                                "': morse index must be twice the negative weight count");
}

FormalGroupLaw small_kpr_law(long p, int r, int n, long T) {
  long T0 = std::min<long>(8, std::max<long>(2, T));
  int gens = gens_for_truncation(p, std::max<long>(T, p + 1));
  if (gens < n) gens = n;
  long cutoff = cutoff_for_truncation(T);
  FormalGroupLaw base = build_ptypical(p, T0, gens, cutoff);
  return reduce_fgl(base, kpr_ring(p, r, n));
}

}  // namespace

AssembledModule assemble(const std::vector<FixedComponentDatum>& data, long p, int r, int n) {
  AssembledModule out;
  out.p = p;
  out.r = r;
  out.n = n;
  out.degenerate = data.empty();
  if (data.empty()) return out;

  for (const auto& c : data) validate_component(c);

  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return data[a].moment_value < data[b].moment_value;
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (data[order[i - 1]].moment_value == data[order[i]].moment_value)
      throw std::invalid_argument("duplicate moment values; attaching order undefined");
  }

  RingSpec kspec = kpr_ring(p, r, n);
  long maxk = 0;
  for (const auto& c : data) {
    std::vector<long> neg = negative_weights(c);
    if (!neg.empty()) maxk = std::max(maxk, euler_leading_order(kspec, neg));
  }

  FormalGroupLaw law;
  bool have_law = false;
  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    const FixedComponentDatum& c = data[order[oi]];
    out.order.push_back(c.name);
    std::vector<long> neg = negative_weights(c);
    if (!neg.empty()) {
      if (!have_law) {
        law = small_kpr_law(p, r, n, maxk + 4);
        have_law = true;
      }
      EulerClass ec = euler_of_weights(law, neg, euler_leading_order(kspec, neg) + 4);
      LeadingFormReport lf = leading_form(ec);
      SplitCertificate sc;
      sc.name = c.name;
      sc.k = lf.k_expected;
      sc.order_ok = lf.order_ok;
      sc.unit_ok = lf.unit_ok;
      out.splits.push_back(sc);
    }
    for (long d : c.generator_degrees) {
      out.gen_names.push_back(c.name);
      out.gen_degrees.push_back(c.morse_index + d);
    }
  }
  return out;
}

mpz_class module_cardinality(long p, int r, long rank) {
  if (rank < 0) throw std::invalid_argument("rank must be non-negative");
  mpz_class card;
  mpz_ui_pow_ui(card.get_mpz_t(), static_cast<unsigned long>(p),
                static_cast<unsigned long>(r * rank));
  return card;
}

MorseEqualityCertificate morse_equality_check(const std::vector<FixedComponentDatum>& data,
                                              long p, int r, int n) {
  MorseEqualityCertificate cert;
  cert.assembled = assemble(data, p, r, n);
  cert.degenerate = cert.assembled.degenerate;
  long fixed_rank = 0;
  for (const auto& c : data) fixed_rank += static_cast<long>(c.generator_degrees.size());
  cert.fixed_side = module_cardinality(p, r, fixed_rank);
  cert.assembled_side = module_cardinality(p, r, cert.assembled.rank());
  cert.equal = cert.fixed_side == cert.assembled_side;
  cert.all_splits_ok = true;
  for (const auto& sc : cert.assembled.splits)
    if (!sc.pass()) cert.all_splits_ok = false;
  return cert;
}

KernelWindowCertificate kernel_window_check(const std::vector<FixedComponentDatum>& data,
                                            std::size_t component_index, long m,
                                            const AssembledModule& assembled) {
  if (component_index >= data.size()) throw std::invalid_argument("component index out of range");
  if (m < 0) throw std::invalid_argument("need m >= 0");
  const FixedComponentDatum& comp = data[component_index];
  validate_component(comp);
  const long p = assembled.p;
  const int r = assembled.r;
  const int n = assembled.n;

  KernelWindowCertificate cert;
  cert.component = comp.name;
  cert.m = m;
  RingSpec kspec = kpr_ring(p, r, n);
  cert.k = euler_leading_order(kspec, comp.normal_weights);

  // Cardinality comparisons: left sides evaluated from the fixed-point data,
  // right sides from the assembled module; the Morse equality makes them
  // agree on honest input, so each doubles as a corruption detector.
  long fixed_rank = 0;
  for (const auto& c : data) fixed_rank += static_cast<long>(c.generator_degrees.size());
  mpz_class KF = module_cardinality(p, r, fixed_rank);
  mpz_class KM = module_cardinality(p, r, assembled.rank());
  mpz_class KF_m, KF_k, KM_m;
  mpz_pow_ui(KF_m.get_mpz_t(), KF.get_mpz_t(), static_cast<unsigned long>(m + 1));
  mpz_pow_ui(KF_k.get_mpz_t(), KF.get_mpz_t(), static_cast<unsigned long>(cert.k + 1));
  mpz_pow_ui(KM_m.get_mpz_t(), KM.get_mpz_t(), static_cast<unsigned long>(m + 1));
  cert.euler_lhs = KF_m - KF_k;
  cert.euler_rhs = KM_m;
  cert.euler_bound_ok = cert.euler_lhs <= cert.euler_rhs;
  cert.leray_lhs = KF_m;
  cert.leray_rhs = KM_m;
  cert.leray_bound_ok = cert.leray_lhs <= cert.leray_rhs;

  if (m < cert.k) {
    cert.window_empty = true;
    return cert;
  }

  const long d = static_cast<long>(comp.generator_degrees.size());
  if (d == 0) {
    cert.low_window_trivial = true;
    cert.top_window_only = true;
    return cert;
  }

  FormalGroupLaw law = small_kpr_law(p, r, n, m + 1);
  EulerClass ec = euler_of_weights(law, comp.normal_weights, m + 1);
  std::vector<unsigned long> sc(static_cast<size_t>(m + 1), 0);
  for (long b = 0; b <= m; ++b) sc[static_cast<size_t>(b)] = coef_specialize_units(ec.e.c[b]);

  const long S = m + 1;
  ZprMatrix A(d * S, d * S);
  for (long g = 0; g < d; ++g)
    for (long j = 0; j < S; ++j)
      for (long b = 0; j + b < S; ++b) {
        if (sc[static_cast<size_t>(b)] == 0) continue;
        A.at(g * S + j + b, g * S + j) = sc[static_cast<size_t>(b)];
      }
  auto ker = zpr_kernel(A, p, r);
  cert.kernel_gens = static_cast<long>(ker.size());
  cert.top_window_only = true;
  for (const auto& gen : ker)
    for (long g = 0; g < d; ++g)
      for (long j = 0; j < S; ++j) {
        if (gen[static_cast<size_t>(g * S + j)] == 0) continue;
        if (cert.kernel_min_slot < 0 || j < cert.kernel_min_slot) cert.kernel_min_slot = j;
        if (j <= m - cert.k) cert.top_window_only = false;
      }

  // The literal window statement: restrict the domain to slots j <= m-k and
  // certify that the restricted kernel vanishes.
  const long low = m - cert.k + 1;  // columns per generator in the low span
  ZprMatrix Alow(d * S, d * low);
  for (long g = 0; g < d; ++g)
    for (long j = 0; j < low; ++j)
      for (long b = 0; j + b < S; ++b) {
        if (sc[static_cast<size_t>(b)] == 0) continue;
        Alow.at(g * S + j + b, g * low + j) = sc[static_cast<size_t>(b)];
      }
  cert.low_window_trivial = zpr_kernel(Alow, p, r).empty();
  return cert;
}

}  // namespace fglforge
