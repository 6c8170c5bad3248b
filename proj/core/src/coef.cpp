#include "fglforge/coef.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "fglforge/jsonw.hpp"

namespace fglforge {

unsigned long mod_add(unsigned long a, unsigned long b, unsigned long m) {
  unsigned long s = a + b;
  if (s >= m || s < a) s -= m;
  return s;
}

unsigned long mod_sub(unsigned long a, unsigned long b, unsigned long m) {
  return a >= b ? a - b : a + (m - b);
}

unsigned long mod_mul(unsigned long a, unsigned long b, unsigned long m) {
  return static_cast<unsigned long>((static_cast<unsigned __int128>(a) * b) % m);
}

unsigned long mod_pow(unsigned long a, unsigned long e, unsigned long m) {
  unsigned long r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mod_mul(r, a, m);
    a = mod_mul(a, a, m);
    e >>= 1;
  }
  return r;
}

unsigned long mod_inv_ppow(unsigned long a, long p, int r) {
  unsigned long m = 1;
  for (int i = 0; i < r; ++i) m *= static_cast<unsigned long>(p);
  a %= m;
  if (a == 0 || a % static_cast<unsigned long>(p) == 0)
    throw std::domain_error("residue is not invertible");
  // Extended Euclid on signed 128-bit intermediates.
  __int128 old_r = static_cast<__int128>(m), rr = static_cast<__int128>(a);
  __int128 old_s = 0, ss = 1;
  while (rr != 0) {
    __int128 qt = old_r / rr;
    __int128 t = old_r - qt * rr;
    old_r = rr;
    rr = t;
    t = old_s - qt * ss;
    old_s = ss;
    ss = t;
  }
  __int128 inv = old_s % static_cast<__int128>(m);
  if (inv < 0) inv += static_cast<__int128>(m);
  return static_cast<unsigned long>(inv);
}

int padic_val_ul(unsigned long a, long p) {
  if (a == 0) return -1;
  int v = 0;
  while (a % static_cast<unsigned long>(p) == 0) {
    a /= static_cast<unsigned long>(p);
    ++v;
  }
  return v;
}

mpq_class mpq_from_string(const std::string& s) {
  mpq_class q(s);
  q.canonicalize();
  return q;
}

namespace {

void check_p_integral(const RingSpec& s, const mpq_class& q) {
  if (s.kind == RingKind::RationalVPoly) return;
  if (mpz_divisible_ui_p(q.get_den().get_mpz_t(), static_cast<unsigned long>(s.p)))
    throw std::domain_error("scalar is not integral at p=" + std::to_string(s.p));
}

unsigned long embed_residue(const mpq_class& q, long p, unsigned long m) {
  unsigned long num = mpz_fdiv_ui(q.get_num().get_mpz_t(), m);
  unsigned long den = mpz_fdiv_ui(q.get_den().get_mpz_t(), m);
  if (den % static_cast<unsigned long>(p) == 0)
    throw std::domain_error("denominator not invertible at p");
  int r = 0;
  unsigned long mm = m;
  while (mm > 1) {
    mm /= static_cast<unsigned long>(p);
    ++r;
  }
  return mod_mul(num, mod_inv_ppow(den, p, r), m);
}

// Validity of a raw exponent vector in a spec; killed generators report
// "quotient" so callers drop the monomial.
enum class ExpStatus { Keep, Drop, Illegal };

ExpStatus exp_status(const RingSpec& s, const ExpVec& e) {
  int lo = s.low_gen(), ug = s.unit_gen();
  for (int k = 1; k <= kMaxGens; ++k) {
    int ex = e[k - 1];
    if (ex == 0) continue;
    if (k > s.n) return ExpStatus::Illegal;
    if (k < lo) return ExpStatus::Drop;
    if (ex < 0 && k != ug) return ExpStatus::Illegal;
  }
  return ExpStatus::Keep;
}

void normalize(const RingSpec& s, std::vector<Term>& ts) {
  unsigned long m = static_cast<unsigned long>(s.scalar_modulus());
  std::size_t w = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    Term& t = ts[i];
    ExpStatus st = exp_status(s, t.e);
    if (st == ExpStatus::Illegal)
      throw std::domain_error("monomial is not legal in " + s.describe());
    if (st == ExpStatus::Drop) continue;
    if (!s.in_window(t.e)) continue;
    if (m != 0) {
      t.m %= m;
      if (t.m == 0) continue;
    } else {
      if (t.q == 0) continue;
      check_p_integral(s, t.q);
    }
    if (w != i) ts[w] = std::move(ts[i]);
    ++w;
  }
  ts.resize(w);
  auto cmp = [&s](const Term& a, const Term& b) {
    long da = s.full_degree(a.e), db = s.full_degree(b.e);
    if (da != db) return da > db;
    return a.e < b.e;
  };
  std::stable_sort(ts.begin(), ts.end(), cmp);
  // Merge equal monomials.
  std::size_t out = 0;
  for (std::size_t i = 0; i < ts.size();) {
    Term acc = std::move(ts[i]);
    std::size_t j = i + 1;
    while (j < ts.size() && ts[j].e == acc.e) {
      if (m != 0)
        acc.m = mod_add(acc.m, ts[j].m, m);
      else
        acc.q += ts[j].q;
      ++j;
    }
    bool nz = (m != 0) ? (acc.m % m != 0) : (acc.q != 0);
    if (nz) {
      if (m != 0) acc.m %= m;
      ts[out++] = std::move(acc);
    }
    i = j;
  }
  ts.resize(out);
}

CoefElem make(const RingSpec& s, std::vector<Term> ts) {
  normalize(s, ts);
  CoefElem c;
  c.spec = s;
  c.terms = std::move(ts);
  return c;
}

void require_same_spec(const CoefElem& a, const CoefElem& b) {
  if (!(a.spec == b.spec))
    throw std::invalid_argument("operands live in different coefficient rings");
}

}  // namespace

CoefElem coef_zero(const RingSpec& s) { return make(s, {}); }

CoefElem coef_one(const RingSpec& s) { return coef_int(s, 1); }

CoefElem coef_int(const RingSpec& s, long v) { return coef_mpq(s, mpq_class(v)); }

CoefElem coef_mpq(const RingSpec& s, const mpq_class& v) {
  return coef_mono(s, expvec_zero(), v);
}

CoefElem coef_gen(const RingSpec& s, int k, int e) {
  Term t;
  t.e = expvec_gen(k, e);
  if (s.modular())
    t.m = 1;
  else
    t.q = 1;
  return make(s, {t});
}

CoefElem coef_mono(const RingSpec& s, const ExpVec& e, const mpq_class& c) {
  Term t;
  t.e = e;
  if (s.modular())
    t.m = embed_residue(c, s.p, static_cast<unsigned long>(s.scalar_modulus()));
  else
    t.q = c;
  return make(s, {t});
}

CoefElem operator+(const CoefElem& a, const CoefElem& b) {
  require_same_spec(a, b);
  std::vector<Term> ts;
  ts.reserve(a.terms.size() + b.terms.size());
  ts.insert(ts.end(), a.terms.begin(), a.terms.end());
  ts.insert(ts.end(), b.terms.begin(), b.terms.end());
  return make(a.spec, std::move(ts));
}

CoefElem operator-(const CoefElem& a) {
  CoefElem r = a;
  unsigned long m = static_cast<unsigned long>(a.spec.scalar_modulus());
  for (Term& t : r.terms) {
    if (m != 0)
      t.m = (t.m == 0) ? 0 : m - t.m;
    else
      t.q = -t.q;
  }
  return r;
}

CoefElem operator-(const CoefElem& a, const CoefElem& b) { return a + (-b); }

CoefElem operator*(const CoefElem& a, const CoefElem& b) {
  require_same_spec(a, b);
  unsigned long m = static_cast<unsigned long>(a.spec.scalar_modulus());
  std::vector<Term> ts;
  ts.reserve(a.terms.size() * b.terms.size());
  for (const Term& x : a.terms) {
    for (const Term& y : b.terms) {
      Term t;
      t.e = expvec_add(x.e, y.e);
      if (!a.spec.in_window(t.e)) continue;
      if (m != 0)
        t.m = mod_mul(x.m, y.m, m);
      else
        t.q = x.q * y.q;
      ts.push_back(std::move(t));
    }
  }
  return make(a.spec, std::move(ts));
}

bool operator==(const CoefElem& a, const CoefElem& b) {
  if (!(a.spec == b.spec) || a.terms.size() != b.terms.size()) return false;
  unsigned long m = static_cast<unsigned long>(a.spec.scalar_modulus());
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    if (a.terms[i].e != b.terms[i].e) return false;
    if (m != 0) {
      if (a.terms[i].m != b.terms[i].m) return false;
    } else if (a.terms[i].q != b.terms[i].q) {
      return false;
    }
  }
  return true;
}

namespace {

// Window degree via a flat per-generator profile, so the product hot loop
// checks the window with one dot product instead of repeated gen_degree.
bool profile_in_window(const std::array<long, kMaxGens>& wd, const ExpVec& e, long cutoff) {
  long d = 0;
  for (int i = 0; i < kMaxGens; ++i)
    if (e[i] != 0) d += e[i] * wd[i];
  return d >= -cutoff;
}

}  // namespace

CoefAccum::CoefAccum(const RingSpec& s) : spec_(s) {
  wdeg_.fill(0);
  fdeg_.fill(0);
  int ug = spec_.unit_gen();
  for (int k = 1; k <= spec_.n; ++k) {
    fdeg_[k - 1] = spec_.gen_degree(k);
    wdeg_[k - 1] = (k == ug) ? 0 : fdeg_[k - 1];
  }
}

void CoefAccum::add(const CoefElem& a) {
  if (!(a.spec == spec_))
    throw std::invalid_argument("accumulating an element of another ring");
  if (spec_.modular()) {
    for (const Term& t : a.terms) tm_.emplace_back(t.e, t.m);
  } else {
    tq_.insert(tq_.end(), a.terms.begin(), a.terms.end());
  }
}

void CoefAccum::add_product(const CoefElem& a, const CoefElem& b) {
  if (!(a.spec == spec_) || !(b.spec == spec_))
    throw std::invalid_argument("accumulating a product from another ring");
  long cutoff = spec_.degree_cutoff;
  if (spec_.modular()) {
    unsigned long m = static_cast<unsigned long>(spec_.scalar_modulus());
    for (const Term& x : a.terms) {
      for (const Term& y : b.terms) {
        ExpVec e = expvec_add(x.e, y.e);
        if (!profile_in_window(wdeg_, e, cutoff)) continue;
        tm_.emplace_back(e, mod_mul(x.m, y.m, m));
      }
    }
  } else {
    for (const Term& x : a.terms) {
      for (const Term& y : b.terms) {
        Term t;
        t.e = expvec_add(x.e, y.e);
        if (!profile_in_window(wdeg_, t.e, cutoff)) continue;
        t.q = x.q * y.q;
        tq_.push_back(std::move(t));
      }
    }
  }
}

CoefElem CoefAccum::take() {
  if (!spec_.modular()) {
    CoefElem r = make(spec_, std::move(tq_));
    tq_.clear();
    return r;
  }
  // Same canonical order and merge rule as normalize(), on the lean pairs.
  auto deg = [this](const ExpVec& e) {
    long d = 0;
    for (int i = 0; i < kMaxGens; ++i)
      if (e[i] != 0) d += e[i] * fdeg_[i];
    return d;
  };
  std::sort(tm_.begin(), tm_.end(),
            [&deg](const std::pair<ExpVec, unsigned long>& a,
                   const std::pair<ExpVec, unsigned long>& b) {
              long da = deg(a.first), db = deg(b.first);
              if (da != db) return da > db;
              return a.first < b.first;
            });
  unsigned long m = static_cast<unsigned long>(spec_.scalar_modulus());
  CoefElem r;
  r.spec = spec_;
  std::size_t i = 0;
  while (i < tm_.size()) {
    ExpVec e = tm_[i].first;
    unsigned long acc = tm_[i].second % m;
    std::size_t j = i + 1;
    while (j < tm_.size() && tm_[j].first == e) {
      acc = mod_add(acc, tm_[j].second, m);
      ++j;
    }
    if (acc != 0) {
      Term t;
      t.e = e;
      t.m = acc;
      r.terms.push_back(std::move(t));
    }
    i = j;
  }
  tm_.clear();
  return r;
}

CoefElem coef_scale(const CoefElem& a, const mpq_class& c) {
  std::vector<Term> ts = a.terms;
  unsigned long m = static_cast<unsigned long>(a.spec.scalar_modulus());
  if (m != 0) {
    unsigned long cm = embed_residue(c, a.spec.p, m);
    for (Term& t : ts) t.m = mod_mul(t.m, cm, m);
  } else {
    for (Term& t : ts) t.q *= c;
  }
  return make(a.spec, std::move(ts));
}

CoefElem coef_scale_int(const CoefElem& a, long c) { return coef_scale(a, mpq_class(c)); }

CoefElem coef_frobenius(const CoefElem& a) {
  if (!a.spec.charp())
    throw std::domain_error("Frobenius needs prime characteristic scalars");
  std::vector<Term> ts = a.terms;
  for (Term& t : ts) {
    // Scalars are fixed: c^p = c in Z/p. Exponents scale by p.
    for (int i = 0; i < kMaxGens; ++i) {
      long e = static_cast<long>(t.e[i]) * a.spec.p;
      if (e < -30000 || e > 30000) throw std::overflow_error("generator exponent overflow");
      t.e[i] = static_cast<int16_t>(e);
    }
  }
  return make(a.spec, std::move(ts));
}

CoefElem reduce_mod_ideal(const CoefElem& a, const Ideal& ideal) {
  const RingSpec& s = a.spec;
  if (ideal.tag == Ideal::Tag::None) return a;
  int kill_below;       // generators v_k with k < kill_below vanish
  bool kill_nonunits;   // every non-inverted positive exponent vanishes
  bool scalars_mod_p;
  if (ideal.tag == Ideal::Tag::M0) {
    kill_below = 0;
    kill_nonunits = true;
    scalars_mod_p = (s.kind != RingKind::RationalVPoly);
  } else {
    if (s.kind == RingKind::RationalVPoly)
      throw std::domain_error("prime-height ideal undefined for purely rational scalars");
    if (s.kind == RingKind::KprRing) {
      if (ideal.h != s.n)
        throw std::domain_error("only the full maximal ideal applies to the Z/p^r kind");
      kill_below = 0;
      kill_nonunits = true;
    } else {
      if (ideal.h < 1 || ideal.h > s.n + 1)
        throw std::domain_error("ideal height out of range");
      kill_below = ideal.h;
      kill_nonunits = false;
    }
    scalars_mod_p = true;
  }
  unsigned long m = static_cast<unsigned long>(s.scalar_modulus());
  int ug = s.unit_gen();
  std::vector<Term> ts;
  ts.reserve(a.terms.size());
  for (const Term& t : a.terms) {
    bool drop = false;
    for (int k = 1; k <= s.n && !drop; ++k) {
      int ex = t.e[k - 1];
      if (ex <= 0) continue;
      if (kill_nonunits && k != ug) drop = true;
      if (k < kill_below) drop = true;
    }
    if (drop) continue;
    Term nt = t;
    if (scalars_mod_p) {
      if (m != 0) {
        nt.m = t.m % static_cast<unsigned long>(s.p);
      } else {
        unsigned long rp =
            embed_residue(t.q, s.p, static_cast<unsigned long>(s.p));
        nt.q = mpq_class(static_cast<long>(rp));
      }
    }
    ts.push_back(std::move(nt));
  }
  return make(s, std::move(ts));
}

bool coef_is_unit(const CoefElem& a) {
  CoefElem red = reduce_mod_ideal(a, Ideal::m0());
  if (red.terms.size() != 1) return false;
  const Term& t = red.terms[0];
  if (a.spec.modular()) return t.m % static_cast<unsigned long>(a.spec.p) != 0;
  if (a.spec.kind == RingKind::RationalVPoly) return t.q != 0;
  return !mpz_divisible_ui_p(t.q.get_num().get_mpz_t(),
                             static_cast<unsigned long>(a.spec.p));
}

CoefInverse coef_inverse(const CoefElem& a, int depth_cap) {
  if (!coef_is_unit(a))
    throw std::domain_error("element is not a unit: " + coef_text(a));
  CoefElem red = reduce_mod_ideal(a, Ideal::m0());
  ExpVec pe = red.terms[0].e;
  // Pull the scalar of the pivot monomial from the full element.
  const Term* pivot = nullptr;
  for (const Term& t : a.terms)
    if (t.e == pe) pivot = &t;
  if (pivot == nullptr) throw std::logic_error("pivot monomial vanished");
  ExpVec ne{};
  for (int i = 0; i < kMaxGens; ++i) ne[i] = static_cast<int16_t>(-pe[i]);
  CoefElem b;
  {
    Term t;
    t.e = ne;
    if (a.spec.modular()) {
      t.m = mod_inv_ppow(pivot->m, a.spec.p, a.spec.r);
    } else {
      t.q = 1 / pivot->q;
      check_p_integral(a.spec, t.q);
    }
    std::vector<Term> ts{t};
    b = make(a.spec, std::move(ts));
  }
  CoefElem w = a * b - coef_one(a.spec);
  CoefInverse out;
  CoefElem acc = coef_one(a.spec);
  CoefElem pw = coef_one(a.spec);
  CoefElem nw = -w;
  int depth = 0;
  while (true) {
    pw = pw * nw;
    if (pw.is_zero()) {
      out.exact = true;
      break;
    }
    if (depth >= depth_cap) {
      out.exact = false;
      break;
    }
    acc = acc + pw;
    ++depth;
  }
  out.depth_used = depth;
  out.inv = b * acc;
  return out;
}

namespace {

bool reduction_allowed(const RingSpec& s, const RingSpec& t) {
  if (s.p != t.p) return false;
  using K = RingKind;
  switch (s.kind) {
    case K::RationalVPoly:
      return true;
    case K::BPTruncated:
      return t.kind != K::RationalVPoly;
    case K::EnRing:
      return t.kind == K::EnRing || t.kind == K::KprRing;
    case K::KprRing:
      return t.kind == K::KprRing;
  }
  return false;
}

}  // namespace

CoefElem reduce_coef(const CoefElem& a, const RingSpec& target) {
  const RingSpec& s = a.spec;
  if (s == target) return a;
  if (!reduction_allowed(s, target))
    throw std::domain_error("no reduction from " + s.describe() + " to " + target.describe());
  if (s.unit_gen() != 0 && target.n != s.n)
    throw std::domain_error("reductions between Laurent kinds keep the inverted generator");
  long sm = s.scalar_modulus(), tm = target.scalar_modulus();
  if (sm != 0) {
    if (tm == 0 || sm % tm != 0)
      throw std::domain_error("scalar moduli are not compatible for reduction");
  }
  int ug_t = target.unit_gen();
  std::vector<Term> ts;
  ts.reserve(a.terms.size());
  for (const Term& t : a.terms) {
    bool drop = false;
    for (int k = 1; k <= kMaxGens && !drop; ++k) {
      int ex = t.e[k - 1];
      if (ex == 0) continue;
      if (k > target.n || k < target.low_gen()) {
        if (ex < 0)
          throw std::domain_error("cannot reduce a negative power of a killed generator");
        drop = true;
      } else if (ex < 0 && k != ug_t) {
        throw std::domain_error("negative exponent survives onto a non-inverted generator");
      }
    }
    if (drop) continue;
    Term nt;
    nt.e = t.e;
    if (tm != 0) {
      nt.m = (sm != 0) ? t.m % static_cast<unsigned long>(tm)
                       : embed_residue(t.q, target.p, static_cast<unsigned long>(tm));
    } else {
      nt.q = t.q;  // normalize() re-checks integrality for the target kind
    }
    ts.push_back(std::move(nt));
  }
  return make(target, std::move(ts));
}

HomDegree coef_degree(const CoefElem& a) {
  HomDegree h;
  if (a.terms.empty()) {
    h.homogeneous = true;
    h.zero = true;
    return h;
  }
  long d = a.spec.full_degree(a.terms[0].e);
  for (const Term& t : a.terms)
    if (a.spec.full_degree(t.e) != d) return h;
  h.homogeneous = true;
  h.degree = d;
  return h;
}

unsigned long coef_specialize_units(const CoefElem& a) {
  unsigned long m = static_cast<unsigned long>(a.spec.scalar_modulus());
  if (m == 0) throw std::domain_error("specialization needs modular scalars");
  unsigned long acc = 0;
  for (const Term& t : a.terms) acc = mod_add(acc, t.m, m);
  return acc;
}

namespace {

std::string mono_text(const ExpVec& e) {
  std::ostringstream os;
  bool first = true;
  for (int k = 1; k <= kMaxGens; ++k) {
    int ex = e[k - 1];
    if (ex == 0) continue;
    if (!first) os << "*";
    os << "v" << k;
    if (ex != 1) os << "^" << ex;
    first = false;
  }
  return os.str();
}

}  // namespace

std::string coef_text(const CoefElem& a) {
  if (a.terms.empty()) return "0";
  unsigned long m = static_cast<unsigned long>(a.spec.scalar_modulus());
  std::ostringstream os;
  bool first = true;
  for (const Term& t : a.terms) {
    std::string mono = mono_text(t.e);
    bool neg = false;
    std::string mag;
    if (m != 0) {
      mag = std::to_string(t.m);
    } else {
      mpq_class q = t.q;
      if (q < 0) {
        neg = true;
        q = -q;
      }
      mag = q.get_str();
    }
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    if (mono.empty()) {
      os << mag;
    } else if (mag == "1") {
      os << mono;
    } else {
      os << mag << "*" << mono;
    }
    first = false;
  }
  return os.str();
}

void coef_json(const CoefElem& a, JsonWriter& w) {
  w.begin_array();
  for (const Term& t : a.terms) {
    w.begin_object();
    w.key("exp");
    w.begin_array();
    for (int k = 1; k <= a.spec.n; ++k) w.value(static_cast<long>(t.e[k - 1]));
    w.end_array();
    w.key("scalar");
    if (a.spec.modular())
      w.value(std::to_string(t.m));
    else
      w.value(t.q.get_str());
    w.end_object();
  }
  w.end_array();
}

}  // namespace fglforge
