#include "fglforge/fgl.hpp"

#include <stdexcept>

namespace fglforge {

BiSeries bs_truncate(const BiSeries& f, long T2) {
  if (T2 > f.T) throw std::invalid_argument("truncate cannot widen a series");
  BiSeries r = bs_zero(f.spec, T2, f.homdeg);
  for (long i = 0; i < T2; ++i)
    for (long j = 0; i + j < T2; ++j) r.set(i, j, f.at(i, j));
  return r;
}

USeries ptypical_log(const RingSpec& rational_spec, long T) {
  if (rational_spec.kind != RingKind::RationalVPoly)
    throw std::invalid_argument("logarithm lives over rational scalars");
  USeries lam = us_u(rational_spec, T);
  long p = rational_spec.p;
  std::vector<CoefElem> lam_at;  // lam_at[i] is the coefficient of u^{p^i}
  lam_at.push_back(coef_one(rational_spec));
  long pi = 1;  // p^i
  for (int i = 1;; ++i) {
    if (pi > (T - 1) / p) break;
    pi *= p;
    if (pi >= T) break;
    CoefElem num = coef_zero(rational_spec);
    long pik = pi;  // p^{i-k}
    for (int k = 1; k <= i; ++k) {
      pik /= p;
      if (!rational_spec.gen_alive(k)) continue;
      if (pik > 30000) throw std::overflow_error("generator exponent overflow");
      num = num + lam_at[i - k] * coef_gen(rational_spec, k, static_cast<int>(pik));
    }
    // Divide by p - p^{p^i}.
    mpz_class ppi;
    mpz_ui_pow_ui(ppi.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(pi));
    mpq_class den(mpz_class(p) - ppi);
    CoefElem li = coef_scale(num, 1 / den);
    lam_at.push_back(li);
    lam.c[pi] = li;
  }
  lam.homdeg = 2;
  return lam;
}

namespace {

RingSpec rational_companion(const RingSpec& s, long T) {
  RingSpec rs = rational_vpoly(s.p, s.n, cutoff_for_truncation(T));
  switch (s.kind) {
    case RingKind::RationalVPoly:
      rs.vkill = s.vkill;
      break;
    case RingKind::BPTruncated:
      rs.vkill = s.ih;  // v_{<h} die in the quotient view
      break;
    case RingKind::EnRing:
      rs.vkill = s.vkill;
      break;
    case RingKind::KprRing:
      rs.vkill = s.n;  // only v_n survives
      break;
  }
  if (rs.vkill == 1) rs.vkill = 0;
  rs.check_valid();
  return rs;
}

USeries chain_l_series(const FormalGroupLaw& law, long l, long T);

// Solve lambda(t) = l * lambda(u) for t by incremental slot elimination,
// keeping the powers t^{c p^i} up to date so each new slot costs one sweep
// of sparse series updates instead of a recomposition.
USeries solve_log_multiple(const USeries& lam, long l, long T) {
  const RingSpec& s = lam.spec;
  long p = s.p;
  // Levels: p^0, p^1, ..., p^K with p^K < T.
  std::vector<long> pw_exp{1};
  while (pw_exp.back() <= (T - 1) / p) pw_exp.push_back(pw_exp.back() * p);
  int K = static_cast<int>(pw_exp.size()) - 1;
  std::vector<CoefElem> lam_at(K + 1, coef_zero(s));
  for (int i = 1; i <= K; ++i) lam_at[i] = lam.c[pw_exp[i]];

  USeries rhs = us_scale_int(l, lam);
  USeries t = us_zero(s, T, 2);
  // S[i][c] = t^{c p^i} for c = 1..p-1 (level K keeps c = 1 only).
  std::vector<std::vector<USeries>> S(K + 1);
  for (int i = 0; i <= K; ++i) {
    long cmax = (i == K) ? 1 : (p - 1);
    S[i].assign(static_cast<std::size_t>(cmax) + 1, us_zero(s, T));
  }
  auto binom = [](long c, long e) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(c), static_cast<unsigned long>(e));
    return mpq_class(b);
  };
  for (long m = 1; m < T; ++m) {
    CoefElem val = rhs.c[m];
    for (int i = 1; i <= K; ++i) {
      if (lam_at[i].is_zero() || S[i][1].c[m].is_zero()) continue;
      val = val - lam_at[i] * S[i][1].c[m];
    }
    if (val.is_zero()) continue;
    t.c[m] = val;
    // Cascade the update delta = val * u^m through the power ladder.
    USeries delta = us_monomial(val, m, T);
    for (int i = 0; i <= K; ++i) {
      long cmax = (i == K) ? 1 : (p - 1);
      // Increments of S[i][c] for c = 2..p, from old S[i][*] and delta.
      // New increment for exponent c: sum_{e=1..c} C(c,e) S[i][c-e] delta^e.
      std::vector<USeries> dpow;  // delta^e
      dpow.push_back(delta);
      USeries carry = us_zero(s, T);  // increment of S[i][p] feeding level i+1
      bool need_carry = (i < K);
      long top = need_carry ? p : cmax;
      std::vector<USeries> incs(static_cast<std::size_t>(top) + 1, us_zero(s, T));
      for (long c = 2; c <= top; ++c) {
        USeries inc = us_zero(s, T);
        while (static_cast<long>(dpow.size()) < c) {
          USeries nx = dpow.back() * delta;
          dpow.push_back(nx);
        }
        for (long e = 1; e <= c; ++e) {
          const USeries& de = dpow[static_cast<std::size_t>(e - 1)];
          if (de.is_zero()) continue;
          if (e == c) {
            inc = inc + us_scale(coef_mpq(s, binom(c, e)), de);
          } else {
            long ce = c - e;
            if (ce > cmax) continue;  // level-top power not tracked, handled below
            if (S[i][static_cast<std::size_t>(ce)].is_zero()) continue;
            inc = inc + us_scale(coef_mpq(s, binom(c, e)),
                                 S[i][static_cast<std::size_t>(ce)] * de);
          }
        }
        incs[static_cast<std::size_t>(c)] = std::move(inc);
      }
      // Apply increments to this level's tracked powers.
      S[i][1] = S[i][1] + delta;
      for (long c = 2; c <= cmax; ++c)
        S[i][static_cast<std::size_t>(c)] =
            S[i][static_cast<std::size_t>(c)] + incs[static_cast<std::size_t>(c)];
      if (!need_carry) break;
      carry = incs[static_cast<std::size_t>(p)];
      if (carry.is_zero()) break;
      delta = std::move(carry);
    }
  }
  return t;
}

// Termwise exact division of residues by a power of p; a non-divisible
// scalar falsifies the valuation bookkeeping of the modular solver, so it
// throws rather than rounding.
USeries us_divexact(const USeries& f, unsigned long d) {
  USeries r = us_zero(f.spec, f.T, f.homdeg);
  for (long j = 0; j < f.T; ++j) {
    const CoefElem& c = f.c[j];
    if (c.is_zero()) continue;
    CoefElem q;
    q.spec = c.spec;
    q.terms.reserve(c.terms.size());
    for (const Term& t : c.terms) {
      if (t.m % d != 0) throw std::logic_error("p-adic scaling certificate failed");
      Term nt;
      nt.e = t.e;
      nt.m = t.m / d;
      q.terms.push_back(std::move(nt));
    }
    r.c[j] = std::move(q);
  }
  return r;
}

// Solve lambda(t) = l * lambda(u) for a modular target by Newton iteration
// with doubling u-adic precision, over scalars mod p^{K+r} where p^K < T is
// the top logarithm level and p^r the target modulus. Sound because
// v_p(lambda_i) >= -i (Araki recursion divides by p - p^{p^i} once per
// level), so p^K lambda is integral, and because t itself is p-integral:
// iterated p-th powers lift precision by one digit per level, which is
// exactly what the lambda_i denominators consume. Far cheaper than the
// exact ladder: a handful of series products per doubling step, all with
// machine-word scalars.
USeries solve_log_modular(const USeries& lam, long l, long T, const RingSpec& target) {
  long p = target.p;
  int K = 0;
  std::vector<long> pw{1};
  while (pw.back() <= (T - 1) / p) {
    pw.push_back(pw.back() * p);
    ++K;
  }
  RingSpec work = target;
  if (target.kind == RingKind::KprRing) {
    // Polynomial stand-in: same single generator, no inversion needed since
    // multiplication series carry non-negative v_n exponents.
    work = RingSpec{};
    work.kind = RingKind::BPTruncated;
    work.p = p;
    work.n = target.n;
    work.ih = target.n;
  }
  work.r = target.r + K;
  work.degree_cutoff = cutoff_for_truncation(T);
  work.check_valid();

  mpz_class pKz;
  mpz_ui_pow_ui(pKz.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(K));
  unsigned long pK = mpz_get_ui(pKz.get_mpz_t());
  CoefElem cpK = coef_mpq(work, mpq_class(pKz));

  // p^K * lambda over the working ring; slot 1 carries p^K itself.
  USeries lamw = us_zero(work, T);
  lamw.c[1] = cpK;
  std::vector<CoefElem> Lam(static_cast<std::size_t>(K) + 1, coef_zero(work));
  for (int i = 1; i <= K; ++i) {
    const CoefElem& li = lam.c[pw[i]];
    if (li.is_zero()) continue;
    Lam[i] = reduce_coef(coef_scale(li, mpq_class(pKz)), work);
    lamw.c[pw[i]] = Lam[i];
  }

  USeries t = us_zero(work, 2);
  t.c[1] = coef_int(work, l);
  long M = 2;
  while (M < T) {
    long M2 = std::min(2 * M, T);
    t = us_extend_zero(t, M2);
    // A = p^K lambda(t), B = p^K lambda'(t), assembled from the power
    // chains w_i = t^{p^i} (iterated p-th powers, which lift p-adic
    // precision) and x_i = t^{p^i - 1} (x_{i+1} = x_i^p x_1, precision
    // augmented by the extra p^i in B's terms).
    USeries A = us_scale(cpK, t);
    USeries B = us_const(cpK, M2);
    USeries xp1, w, x;
    for (int i = 1; i <= K; ++i) {
      bool needw = pw[i] < M2, needx = pw[i] - 1 < M2;
      if (!needw && !needx) break;
      if (i == 1) {
        xp1 = (p == 2) ? t : us_power(t, p - 1);
        x = xp1;
        if (needw) w = x * t;
      } else {
        if (needx) x = us_power(x, p) * xp1;
        if (needw) w = us_power(w, p);
      }
      if (Lam[i].is_zero()) continue;
      if (needw) A = A + us_scale(Lam[i], w);
      if (needx) B = B + us_scale(coef_scale_int(Lam[i], pw[i]), x);
    }
    A = A - us_scale_int(l, us_truncate(lamw, M2));
    USeries delta = us_divexact(A, pK) * us_series_inverse(us_divexact(B, pK));
    t = t - delta;
    M = M2;
  }
  return us_reduce_coef(t, target);
}

USeries chain_l_series(const FormalGroupLaw& law, long l, long T) {
  if (T > law.T)
    throw std::domain_error("truncation exceeds the stored bivariate order");
  const RingSpec& s = law.spec;
  if (l == 0) return us_zero(s, T, 2);
  BiSeries Ft = (T == law.T) ? law.F : bs_truncate(law.F, T);
  long al = l < 0 ? -l : l;
  USeries u = us_u(s, T);
  USeries acc = u;
  // Binary addition chain over the law, most significant bit first.
  int bits = 0;
  for (long x = al; x > 0; x >>= 1) ++bits;
  for (int b = bits - 2; b >= 0; --b) {
    acc = bs_subst_uu(Ft, acc, acc);
    if ((al >> b) & 1) acc = bs_subst_uu(Ft, acc, u);
  }
  if (l < 0) {
    FormalGroupLaw sub = law;
    sub.F = Ft;
    sub.T = T;
    USeries iota = formal_inverse(sub);
    acc = us_compose(iota, acc);
  }
  acc.homdeg = 2;
  return acc;
}

}  // namespace

FormalGroupLaw build_ptypical(long p, long T, int n, long cutoff) {
  if (T < 2) throw std::invalid_argument("truncation order must be at least 2");
  if (n < 0) n = gens_for_truncation(p, T);
  if (cutoff < 0) cutoff = cutoff_for_truncation(T);
  RingSpec logsp = rational_vpoly(p, n, cutoff);
  USeries lam = ptypical_log(logsp, T);
  USeries expo = us_reversion(lam);
  BiSeries A = bs_axes_sum(lam);
  BiSeries Fq = bs_compose_outer(expo, A);
  RingSpec bp = bp_truncated(p, n, cutoff);
  // Reduction enforces p-local integrality of every law coefficient.
  BiSeries F = bs_reduce_coef(Fq, bp);
  F.homdeg = 2;

  FormalGroupLaw law;
  law.spec = bp;
  law.T = T;
  law.F = F;
  law.has_log = true;
  law.log_spec = logsp;
  law.log = lam;
  law.provenance = "p-typical, p=" + std::to_string(p) + ", T=" + std::to_string(T);

  USeries chain = chain_l_series(law, p, T);
  USeries display = pseries_via_display(law, T);
  if (!(chain == display))
    throw std::logic_error("p-multiplication display failed verification");
  return law;
}

FormalGroupLaw reduce_fgl(const FormalGroupLaw& law, const RingSpec& target) {
  FormalGroupLaw out;
  out.spec = target;
  out.T = law.T;
  out.F = bs_reduce_coef(law.F, target);
  out.F.homdeg = 2;
  out.has_log = true;
  out.log_spec = rational_companion(target, law.T);
  out.log = ptypical_log(out.log_spec, law.T);
  out.provenance = law.provenance + " -> " + target.describe();
  return out;
}

LawAxiomsReport verify_law_axioms(const FormalGroupLaw& law, long assoc_T) {
  LawAxiomsReport rep;
  const RingSpec& s = law.spec;
  long T = law.T;
  USeries u = us_u(s, T), zero = us_zero(s, T);
  rep.unit_ok =
      (bs_subst_uu(law.F, u, zero) == u) && (bs_subst_uu(law.F, zero, u) == u);
  rep.comm_ok = bs_is_symmetric(law.F);
  long Ta = (assoc_T > 0 && assoc_T < T) ? assoc_T : T;
  rep.assoc_T = Ta;
  {
    BiSeries Ft = (Ta == T) ? law.F : bs_truncate(law.F, Ta);
    TriSeries S = tri_from_bi(Ft, 0, 1, Ta);
    TriSeries G = tri_subst_bi(Ft, S, 2);
    // Associativity with commutativity says F(F(x,y),z) is invariant under
    // the cyclic shift of the three variables.
    TriSeries Gc = tri_permute(G, {1, 2, 0});
    rep.assoc_ok = (G == Gc);
  }
  rep.pseries_ok =
      (chain_l_series(law, s.p, T) == pseries_via_display(law, T));
  return rep;
}

USeries pseries_via_display(const FormalGroupLaw& law, long T) {
  if (T < 0) T = law.T;
  if (T > law.T) throw std::domain_error("truncation exceeds the stored bivariate order");
  const RingSpec& s = law.spec;
  BiSeries Ft = (T == law.T) ? law.F : bs_truncate(law.F, T);
  USeries acc = us_scale_int(s.p, us_u(s, T));
  long pk = 1;
  for (int k = 1; k <= s.n; ++k) {
    if (pk > (T - 1) / s.p) break;
    pk *= s.p;
    if (pk >= T) break;
    CoefElem vk = coef_gen(s, k);  // zero when the generator is killed
    USeries arg = us_monomial(vk, pk, T);
    if (arg.is_zero() && acc.is_zero()) continue;
    acc = bs_subst_uu(Ft, acc, arg);
  }
  acc.homdeg = 2;
  return acc;
}

USeries formal_inverse(const FormalGroupLaw& law) {
  const RingSpec& s = law.spec;
  long T = law.T;
  USeries u = us_u(s, T);
  USeries iota = -u;
  for (long m = 2; m < T; ++m) {
    USeries h = bs_subst_uu(law.F, u, iota);
    if (h.c[m].is_zero()) continue;
    iota.c[m] = iota.c[m] - h.c[m];
  }
  if (!bs_subst_uu(law.F, u, iota).is_zero())
    throw std::logic_error("formal inverse failed verification");
  iota.homdeg = 2;
  return iota;
}

USeries l_series(const FormalGroupLaw& law, long l, long T) {
  if (T < 0) T = law.T;
  if (T < 1) throw std::invalid_argument("truncation order must be positive");
  const RingSpec& s = law.spec;
  if (l == 0 || T == 1) return us_zero(s, T, 2);
  if (T <= law.T) return chain_l_series(law, l, T);

  // Beyond the stored bivariate order.
  if (s.kind == RingKind::KprRing && s.r == 1) {
    // Factor out the p-part; each [p] step is the Frobenius-monomial map
    // t -> v_n t^{p^n} on these rings.
    long al = l < 0 ? -l : l;
    int sfac = 0;
    while (al % s.p == 0) {
      al /= s.p;
      ++sfac;
    }
    long odd = (l < 0) ? -al : al;
    long pn = 1;
    for (int i = 0; i < s.n; ++i) pn *= s.p;
    long Tin = T;
    for (int i = 0; i < sfac; ++i) Tin = (Tin + pn - 1) / pn;
    Tin += 1;
    if (Tin <= law.T) {
      USeries t = chain_l_series(law, odd, Tin);
      // Slots at or past Tin of the true series land at or past Tin * p^{sn}
      // >= T under the monomial steps, so widening with zeros is sound.
      t = us_extend_zero(t, T);
      for (int step = 0; step < sfac; ++step) {
        for (int i = 0; i < s.n; ++i) t = us_frobenius(t);
        t = us_scale(coef_gen(s, s.n), t);
      }
      t.homdeg = 2;
      return t;
    }
    // Reduced part too wide for the stored chain; use the logarithm route.
  }
  if (law.has_log) {
    RingSpec rs = law.log_spec;
    rs.degree_cutoff = cutoff_for_truncation(T);
    USeries lam = ptypical_log(rs, T);
    USeries t;
    if (s.modular()) {
      t = solve_log_modular(lam, l, T, s);
    } else {
      t = us_reduce_coef(solve_log_multiple(lam, l, T), s);
    }
    t.homdeg = 2;
    return t;
  }
  throw std::domain_error("no route to the requested truncation for this law");
}

}  // namespace fglforge
