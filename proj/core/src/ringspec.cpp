#include "fglforge/ringspec.hpp"

#include <sstream>
#include <stdexcept>

namespace fglforge {

ExpVec expvec_zero() {
  ExpVec e{};
  e.fill(0);
  return e;
}

ExpVec expvec_gen(int k, int e) {
  ExpVec v = expvec_zero();
  if (k < 1 || k > kMaxGens) throw std::invalid_argument("generator index out of range");
  v[k - 1] = static_cast<int16_t>(e);
  return v;
}

ExpVec expvec_add(const ExpVec& a, const ExpVec& b) {
  ExpVec r{};
  for (int i = 0; i < kMaxGens; ++i) {
    int s = int(a[i]) + int(b[i]);
    if (s < -30000 || s > 30000) throw std::overflow_error("generator exponent overflow");
    r[i] = static_cast<int16_t>(s);
  }
  return r;
}

bool expvec_is_zero(const ExpVec& e) {
  for (int i = 0; i < kMaxGens; ++i)
    if (e[i] != 0) return false;
  return true;
}

long RingSpec::scalar_modulus() const {
  if (kind == RingKind::KprRing || (kind == RingKind::BPTruncated && ih > 0)) {
    long m = 1;
    for (int i = 0; i < r; ++i) m *= p;
    return m;
  }
  return 0;
}

bool RingSpec::p_local_integral() const { return kind != RingKind::RationalVPoly; }

int RingSpec::unit_gen() const {
  if (kind == RingKind::EnRing || kind == RingKind::KprRing) return n;
  return 0;
}

int RingSpec::low_gen() const {
  if (kind == RingKind::KprRing) return n;
  int lo = 1;
  if (kind == RingKind::BPTruncated && ih > 0) lo = ih;
  if (vkill > lo) lo = vkill;
  return lo;
}

bool RingSpec::gen_alive(int k) const { return k >= low_gen() && k <= n; }

long RingSpec::gen_degree(int k) const {
  long d = 1;
  for (int i = 0; i < k; ++i) {
    d *= p;
    if (d > (1L << 40)) throw std::overflow_error("generator degree overflow");
  }
  return -2 * (d - 1);
}

long RingSpec::full_degree(const ExpVec& e) const {
  long d = 0;
  for (int k = 1; k <= kMaxGens; ++k)
    if (e[k - 1] != 0) d += e[k - 1] * gen_degree(k);
  return d;
}

long RingSpec::window_degree(const ExpVec& e) const {
  long d = 0;
  int ug = unit_gen();
  for (int k = 1; k <= kMaxGens; ++k)
    if (k != ug && e[k - 1] != 0) d += e[k - 1] * gen_degree(k);
  return d;
}

bool RingSpec::in_window(const ExpVec& e) const { return window_degree(e) >= -degree_cutoff; }

void RingSpec::check_valid() const {
  if (p < 2) throw std::invalid_argument("p must be at least 2");
  if (n < 0 || n > kMaxGens) throw std::invalid_argument("generator count out of range");
  if (r < 1) throw std::invalid_argument("scalar exponent must be positive");
  if (kind != RingKind::KprRing && !(kind == RingKind::BPTruncated && ih > 0) && r != 1)
    throw std::invalid_argument("scalar exponent only applies to modular kinds");
  if (kind == RingKind::KprRing || (kind == RingKind::BPTruncated && ih > 0)) {
    if (kind == RingKind::KprRing && n < 1)
      throw std::invalid_argument("Laurent kind needs a generator");
    double m = 1;
    for (int i = 0; i < r; ++i) m *= double(p);
    if (m > 4e18) throw std::invalid_argument("scalar modulus too large");
  }
  if (kind == RingKind::EnRing && n < 1)
    throw std::invalid_argument("Laurent kind needs a generator");
  if (ih != 0 && kind != RingKind::BPTruncated)
    throw std::invalid_argument("prime-ideal quotient view applies to the integral polynomial kind");
  if (ih < 0 || ih > n + 1) throw std::invalid_argument("quotient height out of range");
  if (vkill != 0 && kind != RingKind::RationalVPoly && kind != RingKind::EnRing)
    throw std::invalid_argument("generator killing applies to rational or Laurent kinds");
  if (vkill < 0 || vkill > n) throw std::invalid_argument("killed range out of range");
  if (degree_cutoff < 0) throw std::invalid_argument("degree cutoff must be non-negative");
}

std::string RingSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case RingKind::RationalVPoly:
      os << "Q[v_1..v_" << n << "]";
      if (vkill > 1) os << "/(v_<" << vkill << ")";
      break;
    case RingKind::BPTruncated:
      if (ih > 0 && r > 1)
        os << "(Z/" << scalar_modulus() << ")[v_" << ih << "..v_" << n << "]";
      else if (ih > 0)
        os << "F_" << p << "[v_" << ih << "..v_" << n << "]";
      else
        os << "Z_(" << p << ")[v_1..v_" << n << "]";
      break;
    case RingKind::EnRing:
      os << "Z_(" << p << ")[v_1..v_" << n << ", v_" << n << "^-1]";
      if (vkill > 1) os << "/(v_<" << vkill << ")";
      break;
    case RingKind::KprRing:
      os << "(Z/" << scalar_modulus() << ")[v_" << n << "^{+-1}]";
      break;
  }
  os << " p=" << p << " window=" << degree_cutoff;
  return os.str();
}

RingSpec rational_vpoly(long p, int n, long cutoff) {
  RingSpec s;
  s.kind = RingKind::RationalVPoly;
  s.p = p;
  s.n = n;
  s.degree_cutoff = cutoff;
  s.check_valid();
  return s;
}

RingSpec bp_truncated(long p, int n, long cutoff) {
  RingSpec s;
  s.kind = RingKind::BPTruncated;
  s.p = p;
  s.n = n;
  s.degree_cutoff = cutoff;
  s.check_valid();
  return s;
}

RingSpec bp_mod_ih(long p, int h, int n, long cutoff) {
  RingSpec s;
  s.kind = RingKind::BPTruncated;
  s.p = p;
  s.n = n;
  s.ih = h;
  s.degree_cutoff = cutoff;
  s.check_valid();
  return s;
}

RingSpec en_ring(long p, int n, long cutoff) {
  RingSpec s;
  s.kind = RingKind::EnRing;
  s.p = p;
  s.n = n;
  s.degree_cutoff = cutoff;
  s.check_valid();
  return s;
}

RingSpec kpr_ring(long p, int r, int n) {
  RingSpec s;
  s.kind = RingKind::KprRing;
  s.p = p;
  s.r = r;
  s.n = n;
  // Laurent coefficients never truncate in the v_n direction; the window
  // only has to absorb transient low generators during reductions.
  s.degree_cutoff = 1L << 30;
  s.check_valid();
  return s;
}

int gens_for_truncation(long p, long T) {
  int n = 0;
  long q = 1;
  while (n < kMaxGens) {
    if (q > (T - 1) / p) break;
    q *= p;
    if (q >= T) break;
    ++n;
  }
  return n;
}

long cutoff_for_truncation(long T) { return 2 * T + 2; }

}  // namespace fglforge
