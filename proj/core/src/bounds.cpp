#include "fglforge/bounds.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fglforge {

namespace {

long pow_checked(long b, long e) {
  long r = 1;
  for (long i = 0; i < e; ++i) {
    if (r > (1L << 40)) throw std::domain_error("power overflows the truncation range");
    r *= b;
  }
  return r;
}

// Law over the height-h quotient, sized so the logarithm route reaches T.
// The bivariate order stays small; only the generator count and the degree
// window have to cover the target.
FormalGroupLaw law_mod_ih(long p, int h, long T) {
  long T0 = std::min<long>(8, std::max<long>(2, T));
  int n = gens_for_truncation(p, std::max<long>(T, p + 1));
  if (n < h) n = h;
  long cutoff = cutoff_for_truncation(T);
  FormalGroupLaw base = build_ptypical(p, T0, n, cutoff);
  return reduce_fgl(base, bp_mod_ih(p, h, n, cutoff));
}

}  // namespace

USeries pseries_mod_ih(long p, int h, long T) {
  if (h < 1) throw std::invalid_argument("height must be at least 1");
  if (T < 2) throw std::invalid_argument("truncation too small");
  FormalGroupLaw law = law_mod_ih(p, h, T);
  return l_series(law, p, T);
}

USeries pi_series(long p, int h, long j, long T) {
  if (h < 1) throw std::invalid_argument("height must be at least 1");
  if (j < 0) throw std::invalid_argument("negative p-power index");
  if (T < 1) throw std::invalid_argument("truncation too small");
  long ph = pow_checked(p, h);
  FormalGroupLaw law = law_mod_ih(p, h, T + ph);
  USeries ps_full = l_series(law, p, T + ph);
  USeries pi = us_truncate(us_shift_div(ps_full, ph), T);
  if (j == 0) return pi;
  USeries ps = us_truncate(ps_full, T);
  USeries g = ps;
  for (long i = 1; i < j; ++i) g = us_compose(ps, g);
  return us_compose(pi, g);
}

UPowersCertificate verify_upowers(long p, int h, long a, long T) {
  if (a < 1) throw std::invalid_argument("need at least one p-power");
  if (h < 1) throw std::invalid_argument("height must be at least 1");
  UPowersCertificate cert;
  cert.p = p;
  cert.h = h;
  cert.a = a;
  cert.T = T;
  cert.shift = pow_checked(p, a * h);
  if (T <= cert.shift)
    throw std::invalid_argument("truncation insufficient; need T > " +
                                std::to_string(cert.shift));
  long ph = pow_checked(p, h);

  FormalGroupLaw law = law_mod_ih(p, h, T + ph);
  USeries ps = l_series(law, p, T);

  // Left side: iterated composition, independent of the factorization.
  USeries lhs = ps;
  for (long i = 1; i < a; ++i) lhs = us_compose(ps, lhs);

  // Right side: the shifted product of pi-cofactors, each needed only to
  // order T - p^{ah}.
  long L = T - cert.shift;
  USeries pi = us_truncate(us_shift_div(l_series(law, p, L + ph), ph), L);
  USeries ps_L = us_truncate(ps, L);
  USeries prod = us_const(coef_one(law.spec), L);
  USeries g = us_u(law.spec, L);
  for (long i = 0; i < a; ++i) {
    if (i > 0) g = us_compose(ps_L, g);
    USeries pii = us_compose(pi, g);
    prod = prod * us_power(pii, pow_checked(p, (a - 1 - i) * h));
  }
  USeries rhs = us_mul_umono(us_extend_zero(prod, T), coef_one(law.spec), cert.shift);

  cert.pass = true;
  for (long m = 0; m < T; ++m) {
    if (!(lhs.c[m] == rhs.c[m])) {
      cert.pass = false;
      cert.first_mismatch = m;
      break;
    }
  }
  return cert;
}

mpz_class bound_B(long p, const std::vector<long>& weight_exponents,
                  const LandweberFiltration& filt) {
  mpz_class B = 0;
  for (long w : weight_exponents) {
    if (w < 0) throw std::invalid_argument("weight exponents are non-negative");
    for (long nj : filt.heights) {
      if (nj < 0) throw std::invalid_argument("heights are non-negative");
      mpz_class term;
      mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(p),
                    static_cast<unsigned long>(nj * w));
      B += term;
    }
  }
  return B;
}

LensBound lens_bound(long p, long q, long s, const LandweberFiltration& filt) {
  if (q < 1) throw std::invalid_argument("need q >= 1");
  if (s < 0) throw std::invalid_argument("need s >= 0");
  LensBound lb;
  lb.C = 0;
  for (long nj : filt.heights) {
    if (nj < 0) throw std::invalid_argument("heights are non-negative");
    mpz_class term;
    mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(s * nj));
    lb.C += term;
  }
  lb.r = mpz_class(q) * mpz_class(q - 1) * lb.C;
  return lb;
}

long choose_height(long m, long p) {
  if (m < 0) throw std::invalid_argument("need m >= 0");
  long pn = 1;
  for (long n = 1;; ++n) {
    if (pn > (1L << 40)) throw std::domain_error("no admissible height in range");
    pn *= p;
    if (2 * (pn - 1) > m + 1) return n;
  }
}

namespace {

// Scalar series arithmetic mod M over a fixed window.
using Ser = std::vector<unsigned long>;

Ser ser_zero(long W) { return Ser(static_cast<size_t>(W), 0); }

bool ser_is_zero(const Ser& a) {
  for (unsigned long x : a)
    if (x != 0) return false;
  return true;
}

Ser ser_add(const Ser& a, const Ser& b, unsigned long M) {
  Ser r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] = mod_add(r[i], b[i], M);
  return r;
}

Ser ser_sub(const Ser& a, const Ser& b, unsigned long M) {
  Ser r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] = mod_sub(r[i], b[i], M);
  return r;
}

Ser ser_mul(const Ser& a, const Ser& b, unsigned long M) {
  Ser r = ser_zero(static_cast<long>(a.size()));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j + i < b.size(); ++j) {
      if (b[j] == 0) continue;
      r[i + j] = mod_add(r[i + j], mod_mul(a[i], b[j], M), M);
    }
  }
  return r;
}

using Mat = std::vector<std::vector<Ser>>;

Mat mat_zero(long t, long W) {
  return Mat(static_cast<size_t>(t), std::vector<Ser>(static_cast<size_t>(t), ser_zero(W)));
}

Mat mat_identity(long t, long W) {
  Mat m = mat_zero(t, W);
  for (long i = 0; i < t; ++i) m[i][i][0] = 1;
  return m;
}

Mat mat_mul(const Mat& a, const Mat& b, unsigned long M) {
  long t = static_cast<long>(a.size());
  long W = static_cast<long>(a[0][0].size());
  Mat r = mat_zero(t, W);
  for (long i = 0; i < t; ++i)
    for (long j = 0; j < t; ++j)
      for (long k = 0; k < t; ++k) {
        if (ser_is_zero(a[i][k]) || ser_is_zero(b[k][j])) continue;
        r[i][j] = ser_add(r[i][j], ser_mul(a[i][k], b[k][j], M), M);
      }
  return r;
}

Mat mat_sub(const Mat& a, const Mat& b, unsigned long M) {
  long t = static_cast<long>(a.size());
  Mat r = a;
  for (long i = 0; i < t; ++i)
    for (long j = 0; j < t; ++j) r[i][j] = ser_sub(r[i][j], b[i][j], M);
  return r;
}

Mat mat_add(const Mat& a, const Mat& b, unsigned long M) {
  long t = static_cast<long>(a.size());
  Mat r = a;
  for (long i = 0; i < t; ++i)
    for (long j = 0; j < t; ++j) r[i][j] = ser_add(r[i][j], b[i][j], M);
  return r;
}

bool mat_is_zero(const Mat& a) {
  for (const auto& row : a)
    for (const auto& s : row)
      if (!ser_is_zero(s)) return false;
  return true;
}

}  // namespace

std::vector<unsigned long> euler_scalar_series(long p, int r, long height,
                                               const std::vector<long>& weights, long T) {
  if (height < 0) throw std::invalid_argument("heights are non-negative");
  if (r < 1) throw std::invalid_argument("need r >= 1");
  unsigned long M = 1;
  for (int i = 0; i < r; ++i) M *= static_cast<unsigned long>(p);

  long T0 = std::min<long>(8, std::max<long>(2, T));
  int n = gens_for_truncation(p, std::max<long>(T, p + 1));
  long cutoff = cutoff_for_truncation(T);
  if (height >= 1 && n < height) n = static_cast<int>(height);
  FormalGroupLaw base = build_ptypical(p, T0, n, cutoff);

  std::vector<unsigned long> out(static_cast<size_t>(T), 0);
  if (height >= 1) {
    if (r != 1) throw std::invalid_argument("positive-height slices are p-torsion; need r = 1");
    FormalGroupLaw law = reduce_fgl(base, kpr_ring(p, 1, static_cast<int>(height)));
    EulerClass ec = euler_of_weights(law, weights, T);
    for (long m = 0; m < T; ++m) out[static_cast<size_t>(m)] = coef_specialize_units(ec.e.c[m]);
    return out;
  }
  // Scalars here live in Z_(p): denominators coprime to p are units and get
  // inverted mod p^r, they are not an error.
  EulerClass ec = euler_of_weights(base, weights, T);
  mpz_class Mz = M;
  for (long m = 0; m < T; ++m) {
    mpq_class acc = 0;
    for (const Term& t : ec.e.c[m].terms) acc += t.q;
    mpz_class den_inv;
    if (mpz_invert(den_inv.get_mpz_t(), acc.get_den().get_mpz_t(), Mz.get_mpz_t()) == 0)
      throw std::logic_error("scalar is not integral at p on the height-0 slice");
    mpz_class mm = acc.get_num() * den_inv;
    mpz_mod(mm.get_mpz_t(), mm.get_mpz_t(), Mz.get_mpz_t());
    out[static_cast<size_t>(m)] = mm.get_ui();
  }
  return out;
}

KernelVanishingCertificate kernel_vanishing_check(const FilteredModuleModel& model, long A,
                                                  long q) {
  const long t = static_cast<long>(model.heights.size());
  if (t < 1) throw std::invalid_argument("need at least one slice");
  if (A < 1) throw std::invalid_argument("need A >= 1");
  if (q < 1) throw std::invalid_argument("need q >= 1");
  if (model.weights.empty()) throw std::invalid_argument("need at least one weight");
  bool any_positive = false;
  for (long nj : model.heights) {
    if (nj < 0) throw std::invalid_argument("heights are non-negative");
    if (nj >= 1) any_positive = true;
  }
  if (any_positive && model.r != 1)
    throw std::invalid_argument("positive-height slices are p-torsion; need r = 1");

  KernelVanishingCertificate cert;
  cert.p = model.p;
  cert.r = model.r;
  cert.q = q;
  cert.A = A;

  std::vector<long> exps;
  for (long w : model.weights) {
    unsigned long aw =
        (w < 0) ? static_cast<unsigned long>(-(w + 1)) + 1 : static_cast<unsigned long>(w);
    if (aw == 0) throw std::invalid_argument("weights are nonzero");
    exps.push_back(padic_val_ul(aw, model.p));
  }
  LandweberFiltration filt{model.heights};
  cert.B = bound_B(model.p, exps, filt);
  mpz_class win_z = mpz_class(A) + mpz_class(q) * cert.B;
  if (win_z > 2000) throw std::domain_error("test window too large: " + win_z.get_str());
  const long W = static_cast<long>(win_z.get_si());
  cert.window = W;

  unsigned long M = 1;
  for (int i = 0; i < model.r; ++i) M *= static_cast<unsigned long>(model.p);

  // Diagonal part: per-slice Euler product specializations.
  Mat D = mat_zero(t, W);
  for (long j = 0; j < t; ++j)
    D[j][j] = euler_scalar_series(model.p, model.r, model.heights[j], model.weights, W);

  // Nilpotent part from the declared connecting blocks.
  Mat E = mat_zero(t, W);
  if (!model.eplus.empty()) {
    if (static_cast<long>(model.eplus.size()) != t)
      throw std::invalid_argument("connecting block row count must equal the slice count");
    for (long i = 0; i < t; ++i) {
      if (static_cast<long>(model.eplus[i].size()) != t)
        throw std::invalid_argument("connecting block column count must equal the slice count");
      for (long j = 0; j < t; ++j) {
        const auto& s = model.eplus[i][j];
        bool nonzero = false;
        for (unsigned long x : s)
          if (x % M != 0) nonzero = true;
        if (!nonzero) continue;
        if (i >= j)
          throw std::invalid_argument("connecting maps must step strictly down the filtration");
        for (size_t b = 0; b < s.size() && b < static_cast<size_t>(W); ++b)
          E[i][j][b] = s[b] % M;
      }
    }
  }

  // Commutation of the diagonal with the nilpotent part: entry (i, j) of the
  // commutator is (Pi_i - Pi_j) * E_ij.
  cert.intertwine_ok = true;
  for (long i = 0; i < t; ++i)
    for (long j = 0; j < t; ++j) {
      if (ser_is_zero(E[i][j])) continue;
      Ser dd = ser_sub(D[i][i], D[j][j], M);
      if (!ser_is_zero(ser_mul(dd, E[i][j], M))) cert.intertwine_ok = false;
    }

  // e_+^q and the telescoping identity.
  Mat Epow = mat_identity(t, W);
  for (long i = 0; i < q; ++i) Epow = mat_mul(Epow, E, M);
  cert.nilpotent_ok = mat_is_zero(Epow);

  Mat Dpow = mat_identity(t, W);
  std::vector<Mat> dpows{Dpow};  // D^0 .. D^q
  for (long i = 0; i < q; ++i) {
    Dpow = mat_mul(Dpow, D, M);
    dpows.push_back(Dpow);
  }
  Mat S = mat_zero(t, W);
  Mat Ei = mat_identity(t, W);  // e_+^{i-1}
  for (long i = 1; i <= q; ++i) {
    S = mat_add(S, mat_mul(dpows[static_cast<size_t>(q - i)], Ei, M), M);
    Ei = mat_mul(Ei, E, M);
  }
  Mat lhs = mat_mul(mat_sub(D, E, M), S, M);
  Mat rhs = mat_sub(dpows[static_cast<size_t>(q)], Epow, M);
  cert.geometric_ok = mat_is_zero(mat_sub(lhs, rhs, M));

  // Exact kernel of e = D - E on the truncated module.
  ZprMatrix Amat(t * W, t * W);
  for (long j = 0; j < t; ++j)
    for (long a = 0; a < W; ++a) {
      long col = j * W + a;
      for (long b = 0; a + b < W; ++b) {
        if (D[j][j][static_cast<size_t>(b)] != 0)
          Amat.at(j * W + a + b, col) =
              mod_add(Amat.at(j * W + a + b, col), D[j][j][static_cast<size_t>(b)], M);
        for (long i = 0; i < t; ++i) {
          unsigned long v = E[i][j][static_cast<size_t>(b)];
          if (v == 0) continue;
          Amat.at(i * W + a + b, col) = mod_sub(Amat.at(i * W + a + b, col), v, M);
        }
      }
    }
  auto ker = zpr_kernel(Amat, model.p, model.r);
  cert.kernel_gens = static_cast<long>(ker.size());
  cert.kernel_min_order = -1;
  cert.kernel_empty_mod_A = true;
  for (const auto& gen : ker) {
    for (long j = 0; j < t; ++j)
      for (long a = 0; a < W; ++a) {
        if (gen[static_cast<size_t>(j * W + a)] == 0) continue;
        if (cert.kernel_min_order < 0 || a < cert.kernel_min_order) cert.kernel_min_order = a;
        if (a < A) cert.kernel_empty_mod_A = false;
      }
  }
  return cert;
}

}  // namespace fglforge
