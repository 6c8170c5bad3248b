// Command-line front end for the fgl-forge library: builds laws, evaluates
// multiplication series and Euler classes, emits module presentations and
// certificates. Exit status 0 means every certificate in the job passed,
// 1 means some certificate failed, 2 means the input was unusable.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "fglforge/bounds.hpp"
#include "fglforge/cyclic.hpp"
#include "fglforge/euler.hpp"
#include "fglforge/fgl.hpp"
#include "fglforge/jsonw.hpp"
#include "fglforge/morse.hpp"
#include "fglforge/morse_io.hpp"

using namespace fglforge;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCertFail = 1;
constexpr int kExitInputError = 2;

// Deterministic parallel map: results land by index, so output order never
// depends on scheduling. Errors are collected and the first one is rethrown.
template <typename Body>
void parallel_for(long count, int jobs, Body&& body) {
  if (jobs <= 1 || count <= 1) {
    for (long i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::string> errs(static_cast<size_t>(count));
  std::atomic<long> next{0};
  auto worker = [&] {
    for (;;) {
      long i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (const std::exception& e) {
        errs[static_cast<size_t>(i)] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  long width = std::min<long>(jobs, count);
  for (long t = 0; t < width; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  for (const auto& e : errs)
    if (!e.empty()) throw std::runtime_error(e);
}

// The bivariate table stays at a small order; generator count and degree
// window are sized for the requested series truncation so the deep series
// routes stay available.
FormalGroupLaw make_law(long p, int r, int n, const std::string& kind, long T, long bi_cap) {
  long T0 = std::min(bi_cap, std::max<long>(2, T));
  int gens = gens_for_truncation(p, std::max<long>(T, p + 1));
  if (gens < n) gens = n;
  long cutoff = cutoff_for_truncation(T);
  FormalGroupLaw base = build_ptypical(p, T0, gens, cutoff);
  if (kind == "BP") return base;
  if (kind == "E") return reduce_fgl(base, en_ring(p, n, cutoff));
  return reduce_fgl(base, kpr_ring(p, r, n));
}

void emit(const JsonWriter& w) { std::fputs((w.str() + "\n").c_str(), stdout); }

void json_axioms(JsonWriter& w, const LawAxiomsReport& ax) {
  w.begin_object();
  w.key("unit");
  w.value(ax.unit_ok);
  w.key("commutative");
  w.value(ax.comm_ok);
  w.key("associative");
  w.value(ax.assoc_ok);
  w.key("p_series");
  w.value(ax.pseries_ok);
  w.key("pass");
  w.value(ax.pass());
  w.end_object();
}

struct RingOpts {
  long p = 2;
  int r = 1;
  int n = 1;
  std::string kind = "K";
};

void add_ring_opts(CLI::App* sub, RingOpts& o, const std::vector<std::string>& kinds) {
  sub->add_option("--p", o.p, "prime")->check(CLI::Range(2L, 97L));
  sub->add_option("--r", o.r, "scalar exponent (modulus p^r for kind K)")
      ->check(CLI::Range(1, 8));
  sub->add_option("--n", o.n, "top generator index")->check(CLI::Range(1, 6));
  if (!kinds.empty())
    sub->add_option("--kind", o.kind, "coefficient ring kind")->check(CLI::IsMember(kinds));
}

// ---------------------------------------------------------------------------
// fgl

struct FglOpts {
  RingOpts ring;
  long T = 8;
  std::vector<long> ls;
};

int run_fgl(const FglOpts& o, const std::string& format) {
  FormalGroupLaw law = make_law(o.ring.p, o.ring.r, o.ring.n, o.ring.kind, o.T, 12);
  LawAxiomsReport ax = verify_law_axioms(law, std::min<long>(law.T, 10));
  std::vector<USeries> series;
  series.reserve(o.ls.size());
  for (long l : o.ls) series.push_back(l_series(law, l, o.T));

  if (format == "json") {
    JsonWriter w;
    w.begin_object();
    w.key("schema");
    w.value(1L);
    w.key("job");
    w.value("fgl");
    w.key("ring");
    w.value(law.spec.describe());
    w.key("T");
    w.value(o.T);
    w.key("law_order");
    w.value(law.T);
    w.key("axioms");
    json_axioms(w, ax);
    w.key("F");
    bs_json(law.F, w);
    w.key("series");
    w.begin_array();
    for (size_t i = 0; i < series.size(); ++i) {
      w.begin_object();
      w.key("l");
      w.value(o.ls[i]);
      w.key("series");
      us_json(series[i], w);
      w.end_object();
    }
    w.end_array();
    w.end_object();
    emit(w);
  } else {
    std::printf("ring: %s\n", law.spec.describe().c_str());
    std::printf("law order %ld, series order %ld\n", law.T, o.T);
    std::printf("axioms: unit=%d comm=%d assoc=%d p-series=%d\n", ax.unit_ok, ax.comm_ok,
                ax.assoc_ok, ax.pseries_ok);
    std::printf("F(x,y) = %s\n", bs_text(law.F).c_str());
    for (size_t i = 0; i < series.size(); ++i)
      std::printf("[%ld]u = %s\n", o.ls[i], us_text(series[i]).c_str());
  }
  return ax.pass() ? kExitPass : kExitCertFail;
}

// ---------------------------------------------------------------------------
// euler

struct EulerOpts {
  RingOpts ring;
  long T = 0;  // 0 = leading order + 4
  std::vector<long> weights;
  long ab_rank = 0;
};

int run_euler(const EulerOpts& o, const std::string& format) {
  RingSpec target = (o.ring.kind == "E") ? en_ring(o.ring.p, o.ring.n, 64)
                                         : kpr_ring(o.ring.p, o.ring.r, o.ring.n);
  long k = euler_leading_order(target, o.weights);
  long T = o.T > 0 ? o.T : k + 4;
  FormalGroupLaw law = make_law(o.ring.p, o.ring.r, o.ring.n, o.ring.kind, T, 12);
  EulerClass ec = euler_of_weights(law, o.weights, T);
  LeadingFormReport lf = leading_form(ec);
  bool pass = lf.pass();

  ABInjectivityReport ab;
  if (o.ab_rank > 0) {
    ab = ab_injectivity_check(ec, o.ab_rank, std::vector<long>(o.ab_rank, 0));
    pass = pass && ab.injective;
  }

  if (format == "json") {
    JsonWriter w;
    w.begin_object();
    w.key("schema");
    w.value(1L);
    w.key("job");
    w.value("euler");
    w.key("ring");
    w.value(law.spec.describe());
    w.key("T");
    w.value(T);
    w.key("weights");
    w.begin_array();
    for (long x : o.weights) w.value(x);
    w.end_array();
    w.key("series");
    us_json(ec.e, w);
    w.key("leading");
    w.begin_object();
    w.key("k_expected");
    w.value(lf.k_expected);
    w.key("k_found");
    w.value(lf.k_found);
    w.key("coefficient");
    coef_json(lf.lead, w);
    w.key("order_ok");
    w.value(lf.order_ok);
    w.key("unit_ok");
    w.value(lf.unit_ok);
    w.key("remainder_in_m0");
    w.value(lf.remainder_in_m0);
    w.key("pass");
    w.value(lf.pass());
    w.end_object();
    if (o.ab_rank > 0) {
      w.key("injectivity");
      w.begin_object();
      w.key("rank");
      w.value(ab.rank);
      w.key("window");
      w.value(ab.window);
      w.key("injective");
      w.value(ab.injective);
      w.end_object();
    }
    w.end_object();
    emit(w);
  } else {
    std::printf("ring: %s\n", law.spec.describe().c_str());
    std::printf("e = %s\n", us_text(ec.e).c_str());
    std::printf("leading: k_expected=%ld k_found=%ld coef=%s unit=%d remainder_in_m0=%d %s\n",
                lf.k_expected, lf.k_found, coef_text(lf.lead).c_str(), lf.unit_ok,
                lf.remainder_in_m0, lf.pass() ? "PASS" : "FAIL");
    if (o.ab_rank > 0)
      std::printf("injectivity: rank=%ld window=%ld %s\n", ab.rank, ab.window,
                  ab.injective ? "PASS" : "FAIL");
  }
  return pass ? kExitPass : kExitCertFail;
}

// ---------------------------------------------------------------------------
// cyclic

struct CyclicOpts {
  RingOpts ring;
  long l = 2;
  long T = 0;        // 0 = rank + 4
  long T_omega = 0;  // 0 = skip the relation presentation
};

void text_matrix(const std::vector<std::vector<CoefElem>>& m) {
  size_t rows = m.size();
  if (rows == 0) return;
  size_t cols = m[0].size();
  std::vector<std::vector<std::string>> cell(rows, std::vector<std::string>(cols));
  std::vector<size_t> width(cols, 0);
  for (size_t i = 0; i < rows; ++i)
    for (size_t j = 0; j < cols; ++j) {
      cell[i][j] = coef_text(m[i][j]);
      width[j] = std::max(width[j], cell[i][j].size());
    }
  for (size_t i = 0; i < rows; ++i) {
    std::fputs("  [", stdout);
    for (size_t j = 0; j < cols; ++j)
      std::printf(" %-*s", static_cast<int>(width[j]), cell[i][j].c_str());
    std::fputs(" ]\n", stdout);
  }
}

int run_cyclic(const CyclicOpts& o, const std::string& format) {
  CyclicGroupDatum d = cyclic_datum(o.l, o.ring.p);
  long rank_expected = 1;
  for (long i = 0; i < d.s * o.ring.n; ++i) rank_expected *= o.ring.p;
  long T = o.T > 0 ? o.T : rank_expected + 4;
  FormalGroupLaw law = make_law(o.ring.p, o.ring.r, o.ring.n, o.ring.kind, T, 12);

  ModulePresentation pres = cohomology_of_Bmu(law, d, T);
  long nilp = u_nilpotency_index(pres);
  bool pass = pres.rank == rank_expected && nilp == pres.rank;

  bool have_lh = o.T_omega >= 2;
  ModulePresentation lh;
  OmegaCoherence oc;
  if (have_lh) {
    lh = leray_hirsch_presentation(law, d, T, o.T_omega);
    oc = leray_coherence_check(law, lh);
    pass = pass && oc.pass();
  }

  if (format == "json") {
    JsonWriter w;
    w.begin_object();
    w.key("schema");
    w.value(1L);
    w.key("job");
    w.value("cyclic");
    w.key("ring");
    w.value(law.spec.describe());
    w.key("l");
    w.value(d.l);
    w.key("s");
    w.value(d.s);
    w.key("l_prime");
    w.value(d.l_prime);
    w.key("T");
    w.value(T);
    w.key("rank");
    w.value(pres.rank);
    w.key("rank_expected");
    w.value(rank_expected);
    w.key("lift_depth");
    w.value(static_cast<long>(pres.lift_depth));
    w.key("nilpotency_index");
    w.value(nilp);
    w.key("u_action");
    w.begin_array();
    for (const auto& row : pres.u_action) {
      w.begin_array();
      for (const auto& e : row) coef_json(e, w);
      w.end_array();
    }
    w.end_array();
    if (have_lh) {
      w.key("relation_rows");
      w.begin_array();
      for (const auto& row : lh.uk_rows) us_json(row, w, "w");
      w.end_array();
      w.key("coherence");
      w.begin_object();
      w.key("zero_matches");
      w.value(oc.zero_matches);
      w.key("tautology_ok");
      w.value(oc.tautology_ok);
      w.key("checked_to");
      w.value(oc.checked_to);
      w.key("pass");
      w.value(oc.pass());
      w.end_object();
    }
    w.key("pass");
    w.value(pass);
    w.end_object();
    emit(w);
  } else {
    std::printf("ring: %s\n", law.spec.describe().c_str());
    std::printf("l = %ld = %ld^%ld * %ld\n", d.l, d.p, d.s, d.l_prime);
    std::printf("rank %ld (expected %ld), lift depth %d, nilpotency index %ld\n", pres.rank,
                rank_expected, pres.lift_depth, nilp);
    std::printf("basis: 1");
    for (long j = 1; j < pres.rank; ++j) std::printf(", u^%ld", j);
    std::printf("\nmultiplication by u:\n");
    text_matrix(pres.u_action);
    if (have_lh) {
      std::printf("relation presentation (order %ld in w):\n", o.T_omega);
      for (size_t j = 0; j < lh.uk_rows.size(); ++j)
        std::printf("  u^%ld coefficient: %s\n", static_cast<long>(j),
                    us_text(lh.uk_rows[j], "w").c_str());
      std::printf("coherence: zero_matches=%d tautology=%d checked_to=%ld %s\n",
                  oc.zero_matches, oc.tautology_ok, oc.checked_to, oc.pass() ? "PASS" : "FAIL");
    }
    std::printf("%s\n", pass ? "PASS" : "FAIL");
  }
  return pass ? kExitPass : kExitCertFail;
}

// ---------------------------------------------------------------------------
// bounds

struct PiOpts {
  long p = 2;
  int h = 1;
  long j = 0;
  long T = 8;
};

int run_bounds_pi(const PiOpts& o, const std::string& format) {
  USeries pi = pi_series(o.p, o.h, o.j, o.T);
  bool const_ok = pi.c[0] == coef_gen(pi.spec, o.h);
  if (format == "json") {
    JsonWriter w;
    w.begin_object();
    w.key("schema");
    w.value(1L);
    w.key("job");
    w.value("bounds.pi");
    w.key("ring");
    w.value(pi.spec.describe());
    w.key("h");
    w.value(static_cast<long>(o.h));
    w.key("j");
    w.value(o.j);
    w.key("T");
    w.value(o.T);
    w.key("series");
    us_json(pi, w);
    w.key("constant_is_generator");
    w.value(const_ok);
    w.end_object();
    emit(w);
  } else {
    std::printf("ring: %s\n", pi.spec.describe().c_str());
    std::printf("pi_%d[%ld] = %s\n", o.h, o.j, us_text(pi).c_str());
    std::printf("constant term is v%d: %s\n", o.h, const_ok ? "PASS" : "FAIL");
  }
  return const_ok ? kExitPass : kExitCertFail;
}

struct UpowersOpts {
  long p = 2;
  int h = 1;
  long a = 1;
  long T = 0;  // 0 = p^{ah} + p^h
};

int run_bounds_upowers(const UpowersOpts& o, const std::string& format) {
  long T = o.T;
  if (T <= 0) {
    long shift = 1, ph = 1;
    for (long i = 0; i < o.a * o.h; ++i) shift *= o.p;
    for (long i = 0; i < o.h; ++i) ph *= o.p;
    T = shift + ph;
  }
  UPowersCertificate cert = verify_upowers(o.p, o.h, o.a, T);
  if (format == "json") {
    JsonWriter w;
    w.begin_object();
    w.key("schema");
    w.value(1L);
    w.key("job");
    w.value("bounds.upowers");
    w.key("p");
    w.value(cert.p);
    w.key("h");
    w.value(static_cast<long>(cert.h));
    w.key("a");
    w.value(cert.a);
    w.key("T");
    w.value(cert.T);
    w.key("shift");
    w.value(cert.shift);
    w.key("first_mismatch");
    w.value(cert.first_mismatch);
    w.key("pass");
    w.value(cert.pass);
    w.end_object();
    emit(w);
  } else {
    std::printf("p=%ld h=%d a=%ld T=%ld shift=%ld\n", cert.p, cert.h, cert.a, cert.T,
                cert.shift);
    if (cert.pass)
      std::printf("PASS\n");
    else
      std::printf("FAIL at order %ld\n", cert.first_mismatch);
  }
  return cert.pass ? kExitPass : kExitCertFail;
}

struct BOpts {
  long p = 2;
  std::vector<long> exponents;
  std::vector<long> heights;
};

int run_bounds_B(const BOpts& o, const std::string& format) {
  mpz_class B = bound_B(o.p, o.exponents, LandweberFiltration{o.heights});
  if (format == "json") {
    JsonWriter w;
    w.begin_object();
    w.key("schema");
    w.value(1L);
    w.key("job");
    w.value("bounds.B");
    w.key("p");
    w.value(o.p);
    w.key("B");
    w.value(B.get_str());
    w.end_object();
    emit(w);
  } else {
    std::printf("B = %s\n", B.get_str().c_str());
  }
  return kExitPass;
}

struct LensOpts {
  long p = 2;
  long q = 1;
  long s = 0;
  std::vector<long> heights;
};

int run_bounds_lens(const LensOpts& o, const std::string& format) {
  LensBound lb = lens_bound(o.p, o.q, o.s, LandweberFiltration{o.heights});
  if (format == "json") {
    JsonWriter w;
    w.begin_object();
    w.key("schema");
    w.value(1L);
    w.key("job");
    w.value("bounds.lens");
    w.key("p");
    w.value(o.p);
    w.key("q");
    w.value(o.q);
    w.key("s");
    w.value(o.s);
    w.key("C");
    w.value(lb.C.get_str());
    w.key("r");
    w.value(lb.r.get_str());
    w.end_object();
    emit(w);
  } else {
    std::printf("C = %s\nr = %s\n", lb.C.get_str().c_str(), lb.r.get_str().c_str());
  }
  return kExitPass;
}

struct HeightOpts {
  long m = 0;
  long p = 2;
};

int run_bounds_height(const HeightOpts& o, const std::string& format) {
  long n = choose_height(o.m, o.p);
  if (format == "json") {
    JsonWriter w;
    w.begin_object();
    w.key("schema");
    w.value(1L);
    w.key("job");
    w.value("bounds.height");
    w.key("m");
    w.value(o.m);
    w.key("p");
    w.value(o.p);
    w.key("n");
    w.value(n);
    w.end_object();
    emit(w);
  } else {
    std::printf("n = %ld\n", n);
  }
  return kExitPass;
}

struct KernelOpts {
  long p = 2;
  int r = 1;
  std::vector<long> heights;
  std::vector<long> weights;
  long A = 3;
  long q = 1;
  unsigned long seed = 0;
};

int run_bounds_kernel(const KernelOpts& o, const std::string& format) {
  FilteredModuleModel model;
  model.p = o.p;
  model.r = o.r;
  model.heights = o.heights;
  model.weights = o.weights;
  long t = static_cast<long>(o.heights.size());
  if (o.seed != 0 && t > 1) {
    // Seeded connecting blocks between slices of equal height (equal heights
    // keep the diagonal commuting with the nilpotent part).
    std::mt19937 rng(static_cast<unsigned>(o.seed));
    unsigned long M = 1;
    for (int i = 0; i < o.r; ++i) M *= static_cast<unsigned long>(o.p);
    model.eplus.assign(t, std::vector<std::vector<unsigned long>>(
                              static_cast<size_t>(t), std::vector<unsigned long>()));
    for (long i = 0; i < t; ++i)
      for (long j = i + 1; j < t; ++j) {
        if (o.heights[i] != o.heights[j]) continue;
        std::vector<unsigned long> ser(8, 0);
        long entries = 1 + static_cast<long>(rng() % 2);
        for (long e = 0; e < entries; ++e)
          ser[rng() % ser.size()] = 1 + rng() % (M - 1);
        model.eplus[i][j] = ser;
      }
  }
  KernelVanishingCertificate cert = kernel_vanishing_check(model, o.A, o.q);
  if (format == "json") {
    JsonWriter w;
    w.begin_object();
    w.key("schema");
    w.value(1L);
    w.key("job");
    w.value("bounds.kernel");
    w.key("p");
    w.value(cert.p);
    w.key("r");
    w.value(static_cast<long>(cert.r));
    w.key("q");
    w.value(cert.q);
    w.key("A");
    w.value(cert.A);
    w.key("B");
    w.value(cert.B.get_str());
    w.key("window");
    w.value(cert.window);
    w.key("intertwine_ok");
    w.value(cert.intertwine_ok);
    w.key("nilpotent_ok");
    w.value(cert.nilpotent_ok);
    w.key("geometric_ok");
    w.value(cert.geometric_ok);
    w.key("kernel_empty_mod_A");
    w.value(cert.kernel_empty_mod_A);
    w.key("kernel_gens");
    w.value(cert.kernel_gens);
    w.key("kernel_min_order");
    w.value(cert.kernel_min_order);
    w.key("pass");
    w.value(cert.pass());
    w.end_object();
    emit(w);
  } else {
    std::printf("window %ld = A %ld + q %ld * B %s\n", cert.window, cert.A, cert.q,
                cert.B.get_str().c_str());
    std::printf("intertwine=%d nilpotent=%d geometric=%d kernel_empty_mod_A=%d (gens=%ld "
                "min_order=%ld)\n",
                cert.intertwine_ok, cert.nilpotent_ok, cert.geometric_ok,
                cert.kernel_empty_mod_A, cert.kernel_gens, cert.kernel_min_order);
    std::printf("%s\n", cert.pass() ? "PASS" : "FAIL");
  }
  return cert.pass() ? kExitPass : kExitCertFail;
}

// ---------------------------------------------------------------------------
// morse

struct MorseOpts {
  std::string input = "-";
  RingOpts ring;
  long m = 12;
};

int run_morse(const MorseOpts& o, const std::string& format, int jobs) {
  FixedPointData data;
  if (o.input == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    data = parse_fixed_point_json(ss.str(), "<stdin>");
  } else {
    data = parse_fixed_point_file(o.input);
  }

  MorseEqualityCertificate mq =
      morse_equality_check(data.components, o.ring.p, o.ring.r, o.ring.n);
  const AssembledModule& am = mq.assembled;

  std::vector<KernelWindowCertificate> kws(data.components.size());
  parallel_for(static_cast<long>(data.components.size()), jobs, [&](long i) {
    kws[static_cast<size_t>(i)] =
        kernel_window_check(data.components, static_cast<size_t>(i), o.m, am);
  });

  bool pass = mq.pass();
  for (const auto& kw : kws) pass = pass && kw.pass();

  if (format == "json") {
    JsonWriter w;
    w.begin_object();
    w.key("schema");
    w.value(1L);
    w.key("job");
    w.value("morse");
    w.key("document");
    w.value(data.name);
    w.key("p");
    w.value(o.ring.p);
    w.key("r");
    w.value(static_cast<long>(o.ring.r));
    w.key("n");
    w.value(static_cast<long>(o.ring.n));
    w.key("order");
    w.begin_array();
    for (const auto& name : am.order) w.value(name);
    w.end_array();
    w.key("rank");
    w.value(am.rank());
    w.key("generator_degrees");
    w.begin_array();
    for (long d : am.gen_degrees) w.value(d);
    w.end_array();
    w.key("splits");
    w.begin_array();
    for (const auto& sc : am.splits) {
      w.begin_object();
      w.key("component");
      w.value(sc.name);
      w.key("k");
      w.value(sc.k);
      w.key("order_ok");
      w.value(sc.order_ok);
      w.key("unit_ok");
      w.value(sc.unit_ok);
      w.end_object();
    }
    w.end_array();
    w.key("cardinality");
    w.begin_object();
    w.key("fixed");
    w.value(mq.fixed_side.get_str());
    w.key("assembled");
    w.value(mq.assembled_side.get_str());
    w.key("equal");
    w.value(mq.equal);
    w.key("splits_ok");
    w.value(mq.all_splits_ok);
    w.end_object();
    w.key("kernel_windows");
    w.begin_array();
    for (const auto& kw : kws) {
      w.begin_object();
      w.key("component");
      w.value(kw.component);
      w.key("m");
      w.value(kw.m);
      w.key("k");
      w.value(kw.k);
      w.key("window_empty");
      w.value(kw.window_empty);
      w.key("kernel_gens");
      w.value(kw.kernel_gens);
      w.key("kernel_min_slot");
      w.value(kw.kernel_min_slot);
      w.key("low_window_trivial");
      w.value(kw.low_window_trivial);
      w.key("top_window_only");
      w.value(kw.top_window_only);
      w.key("euler_lhs");
      w.value(kw.euler_lhs.get_str());
      w.key("euler_rhs");
      w.value(kw.euler_rhs.get_str());
      w.key("euler_bound_ok");
      w.value(kw.euler_bound_ok);
      w.key("leray_lhs");
      w.value(kw.leray_lhs.get_str());
      w.key("leray_rhs");
      w.value(kw.leray_rhs.get_str());
      w.key("leray_bound_ok");
      w.value(kw.leray_bound_ok);
      w.key("pass");
      w.value(kw.pass());
      w.end_object();
    }
    w.end_array();
    w.key("pass");
    w.value(pass);
    w.end_object();
    emit(w);
  } else {
    std::printf("document: %s (%zu components)\n", data.name.c_str(), data.components.size());
    std::printf("attaching order:");
    for (const auto& name : am.order) std::printf(" %s", name.c_str());
    std::printf("\nassembled rank %ld, degrees:", am.rank());
    for (long d : am.gen_degrees) std::printf(" %ld", d);
    std::printf("\nsplits:\n");
    for (const auto& sc : am.splits)
      std::printf("  %s: k=%ld order_ok=%d unit_ok=%d\n", sc.name.c_str(), sc.k, sc.order_ok,
                  sc.unit_ok);
    std::printf("cardinality: fixed %s, assembled %s, equal=%d splits_ok=%d\n",
                mq.fixed_side.get_str().c_str(), mq.assembled_side.get_str().c_str(), mq.equal,
                mq.all_splits_ok);
    std::printf("kernel windows at m=%ld:\n", o.m);
    for (const auto& kw : kws) {
      if (kw.window_empty) {
        std::printf("  %s: k=%ld window empty (m < k) PASS\n", kw.component.c_str(), kw.k);
        continue;
      }
      std::printf("  %s: k=%ld gens=%ld min_slot=%ld low_trivial=%d top_only=%d "
                  "euler %s<=%s:%d leray %s<=%s:%d %s\n",
                  kw.component.c_str(), kw.k, kw.kernel_gens, kw.kernel_min_slot,
                  kw.low_window_trivial, kw.top_window_only, kw.euler_lhs.get_str().c_str(),
                  kw.euler_rhs.get_str().c_str(), kw.euler_bound_ok,
                  kw.leray_lhs.get_str().c_str(), kw.leray_rhs.get_str().c_str(),
                  kw.leray_bound_ok, kw.pass() ? "PASS" : "FAIL");
    }
    std::printf("%s\n", pass ? "PASS" : "FAIL");
  }
  return pass ? kExitPass : kExitCertFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fgl-forge: formal-group-law calculus with certificates"};
  app.require_subcommand(1);
  // --h is a height flag below, so help gets no short name anywhere.
  app.set_help_flag("--help", "print help and exit");

  std::string format = "text";
  int jobs = 1;
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--jobs", jobs, "parallel grid width")->check(CLI::Range(1, 64));

  int rc = kExitPass;

  FglOpts fgl_opts;
  CLI::App* fgl = app.add_subcommand("fgl", "build a law, print its table and l-series");
  fgl->fallthrough();
  add_ring_opts(fgl, fgl_opts.ring, {"BP", "E", "K"});
  fgl->add_option("--T", fgl_opts.T, "series truncation order")->check(CLI::Range(2L, 4096L));
  fgl->add_option("--l", fgl_opts.ls, "multiplication series to print (repeatable)");
  fgl->callback([&] { rc = run_fgl(fgl_opts, format); });

  EulerOpts euler_opts;
  CLI::App* euler = app.add_subcommand("euler", "Euler class of a weight list");
  euler->fallthrough();
  add_ring_opts(euler, euler_opts.ring, {"E", "K"});
  euler->add_option("--T", euler_opts.T, "truncation (default: leading order + 4)");
  euler->add_option("--weights", euler_opts.weights, "nonzero circle weights")
      ->required()
      ->expected(1, 64);
  euler->add_option("--ab-rank", euler_opts.ab_rank,
                    "also run the injectivity check on a free module of this rank");
  euler->callback([&] { rc = run_euler(euler_opts, format); });

  CyclicOpts cyc_opts;
  CLI::App* cyc = app.add_subcommand("cyclic", "module presentation for a cyclic group");
  cyc->fallthrough();
  add_ring_opts(cyc, cyc_opts.ring, {"E", "K"});
  cyc->add_option("--l", cyc_opts.l, "group order")->required()->check(CLI::Range(1L, 4096L));
  cyc->add_option("--T", cyc_opts.T, "u-truncation (default: rank + 4)");
  cyc->add_option("--T-omega", cyc_opts.T_omega,
                  "emit the relation presentation to this order in w (0 = skip)");
  cyc->callback([&] { rc = run_cyclic(cyc_opts, format); });

  CLI::App* bounds = app.add_subcommand("bounds", "effective bounds and certificates");
  bounds->require_subcommand(1);
  bounds->fallthrough();

  PiOpts pi_opts;
  CLI::App* pi = bounds->add_subcommand("pi", "unit-led p-series cofactor");
  pi->fallthrough();
  pi->set_help_flag("--help", "print help and exit");
  pi->add_option("--p", pi_opts.p, "prime")->check(CLI::Range(2L, 97L));
  pi->add_option("--h", pi_opts.h, "height")->check(CLI::Range(1, 6));
  pi->add_option("--j", pi_opts.j, "p-power index")->check(CLI::Range(0L, 8L));
  pi->add_option("--T", pi_opts.T, "truncation")->check(CLI::Range(1L, 4096L));
  pi->callback([&] { rc = run_bounds_pi(pi_opts, format); });

  UpowersOpts up_opts;
  CLI::App* up = bounds->add_subcommand("upowers", "p-power factorization certificate");
  up->fallthrough();
  up->set_help_flag("--help", "print help and exit");
  up->add_option("--p", up_opts.p, "prime")->check(CLI::Range(2L, 97L));
  up->add_option("--h", up_opts.h, "height")->check(CLI::Range(1, 6));
  up->add_option("--a", up_opts.a, "number of p-power steps")->check(CLI::Range(1L, 6L));
  up->add_option("--T", up_opts.T, "truncation (default: p^{ah} + p^h)");
  up->callback([&] { rc = run_bounds_upowers(up_opts, format); });

  BOpts b_opts;
  CLI::App* bb = bounds->add_subcommand("B", "weight-exponent double sum");
  bb->fallthrough();
  bb->add_option("--p", b_opts.p, "prime")->check(CLI::Range(2L, 97L));
  bb->add_option("--w", b_opts.exponents, "weight exponents (repeatable)");
  bb->add_option("--heights", b_opts.heights, "slice heights")->expected(1, 64);
  bb->callback([&] { rc = run_bounds_B(b_opts, format); });

  LensOpts lens_opts;
  CLI::App* lens = bounds->add_subcommand("lens", "restriction-order bound");
  lens->fallthrough();
  lens->add_option("--p", lens_opts.p, "prime")->check(CLI::Range(2L, 97L));
  lens->add_option("--q", lens_opts.q, "dimension parameter")->check(CLI::Range(1L, 4096L));
  lens->add_option("--s", lens_opts.s, "p-power exponent")->check(CLI::Range(0L, 16L));
  lens->add_option("--heights", lens_opts.heights, "slice heights")->expected(1, 64);
  lens->callback([&] { rc = run_bounds_lens(lens_opts, format); });

  HeightOpts h_opts;
  CLI::App* hh = bounds->add_subcommand("height", "minimal height clearing a dimension range");
  hh->fallthrough();
  hh->add_option("--m", h_opts.m, "dimension")->required()->check(CLI::Range(0L, 1L << 30));
  hh->add_option("--p", h_opts.p, "prime")->check(CLI::Range(2L, 97L));
  hh->callback([&] { rc = run_bounds_height(h_opts, format); });

  KernelOpts k_opts;
  CLI::App* kk = bounds->add_subcommand("kernel", "filtered-module kernel certificate");
  kk->fallthrough();
  kk->add_option("--p", k_opts.p, "prime")->check(CLI::Range(2L, 97L));
  kk->add_option("--r", k_opts.r, "scalar exponent")->check(CLI::Range(1, 8));
  kk->add_option("--heights", k_opts.heights, "slice heights")->required()->expected(1, 16);
  kk->add_option("--weights", k_opts.weights, "acting weights")->required()->expected(1, 16);
  kk->add_option("--A", k_opts.A, "vanishing order to certify")->check(CLI::Range(1L, 256L));
  kk->add_option("--q", k_opts.q, "nilpotency exponent")->check(CLI::Range(1L, 16L));
  kk->add_option("--seed", k_opts.seed,
                 "seed for connecting blocks between equal-height slices (0 = none)");
  kk->callback([&] { rc = run_bounds_kernel(k_opts, format); });

  MorseOpts morse_opts;
  CLI::App* morse = app.add_subcommand("morse", "assemble fixed-point data with certificates");
  morse->fallthrough();
  morse->add_option("input", morse_opts.input, "JSON data file, or - for standard input");
  add_ring_opts(morse, morse_opts.ring, {});
  morse->add_option("--m", morse_opts.m, "kernel window truncation")
      ->check(CLI::Range(0L, 64L));
  morse->callback([&] { rc = run_morse(morse_opts, format, jobs); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInputError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInputError;
  }
  return rc;
}
