#include "fglforge/useries.hpp"

#include <sstream>
#include <stdexcept>

#include "fglforge/jsonw.hpp"

namespace fglforge {

namespace {

void require_same(const USeries& a, const USeries& b) {
  if (!(a.spec == b.spec))
    throw std::invalid_argument("series live over different coefficient rings");
  if (a.T != b.T)
    throw std::invalid_argument("mixed truncation orders; truncate or extend explicitly");
}

long combined_homdeg(long a, long b) { return a == b ? a : kNoHomDeg; }

}  // namespace

bool USeries::is_zero() const {
  for (const CoefElem& x : c)
    if (!x.is_zero()) return false;
  return true;
}

USeries us_zero(const RingSpec& s, long T, long homdeg) {
  if (T < 1) throw std::invalid_argument("truncation order must be positive");
  USeries f;
  f.spec = s;
  f.T = T;
  f.c.assign(static_cast<std::size_t>(T), coef_zero(s));
  f.homdeg = homdeg;
  return f;
}

USeries us_u(const RingSpec& s, long T) {
  USeries f = us_zero(s, T, 2);
  if (T > 1) f.c[1] = coef_one(s);
  return f;
}

USeries us_monomial(const CoefElem& coef, long k, long T) {
  if (k < 0) throw std::invalid_argument("negative series exponent");
  HomDegree hd = coef_degree(coef);
  long homdeg = (hd.homogeneous && !hd.zero) ? hd.degree + 2 * k : kNoHomDeg;
  if (hd.zero) homdeg = kNoHomDeg;
  USeries f = us_zero(coef.spec, T, homdeg);
  if (k < T) f.c[static_cast<std::size_t>(k)] = coef;
  return f;
}

USeries us_const(const CoefElem& coef, long T) { return us_monomial(coef, 0, T); }

USeries operator+(const USeries& a, const USeries& b) {
  require_same(a, b);
  USeries r = a;
  r.homdeg = combined_homdeg(a.homdeg, b.homdeg);
  for (long j = 0; j < r.T; ++j)
    if (!b.c[j].is_zero()) r.c[j] = r.c[j] + b.c[j];
  return r;
}

USeries operator-(const USeries& a) {
  USeries r = a;
  for (long j = 0; j < r.T; ++j)
    if (!r.c[j].is_zero()) r.c[j] = -r.c[j];
  return r;
}

USeries operator-(const USeries& a, const USeries& b) { return a + (-b); }

USeries operator*(const USeries& a, const USeries& b) {
  require_same(a, b);
  long hd = kNoHomDeg;
  if (a.homdeg != kNoHomDeg && b.homdeg != kNoHomDeg) hd = a.homdeg + b.homdeg;
  USeries r = us_zero(a.spec, a.T, hd);
  // Slot-major accumulation: every contribution to one output slot lands in
  // one raw buffer, normalized once, instead of re-sorting per contribution.
  CoefAccum acc(a.spec);
  for (long s = 0; s < a.T; ++s) {
    for (long i = 0; i <= s; ++i) {
      if (a.c[i].is_zero() || b.c[s - i].is_zero()) continue;
      acc.add_product(a.c[i], b.c[s - i]);
    }
    if (!acc.empty()) r.c[s] = acc.take();
  }
  return r;
}

bool operator==(const USeries& a, const USeries& b) {
  if (!(a.spec == b.spec) || a.T != b.T) return false;
  for (long j = 0; j < a.T; ++j)
    if (!(a.c[j] == b.c[j])) return false;
  return true;
}

USeries us_scale(const CoefElem& c, const USeries& f) {
  if (!(c.spec == f.spec)) throw std::invalid_argument("scale coefficient from another ring");
  HomDegree hd = coef_degree(c);
  long homdeg = kNoHomDeg;
  if (f.homdeg != kNoHomDeg && hd.homogeneous && !hd.zero) homdeg = f.homdeg + hd.degree;
  USeries r = us_zero(f.spec, f.T, homdeg);
  if (c.is_zero()) return r;
  for (long j = 0; j < f.T; ++j)
    if (!f.c[j].is_zero()) r.c[j] = c * f.c[j];
  return r;
}

USeries us_scale_int(long c, const USeries& f) { return us_scale(coef_int(f.spec, c), f); }

USeries us_mul_umono(const USeries& f, const CoefElem& coef, long k) {
  if (!(coef.spec == f.spec)) throw std::invalid_argument("scale coefficient from another ring");
  HomDegree hd = coef_degree(coef);
  long homdeg = kNoHomDeg;
  if (f.homdeg != kNoHomDeg && hd.homogeneous && !hd.zero)
    homdeg = f.homdeg + hd.degree + 2 * k;
  USeries r = us_zero(f.spec, f.T, homdeg);
  for (long j = 0; j + k < f.T; ++j)
    if (!f.c[j].is_zero()) r.c[j + k] = coef * f.c[j];
  return r;
}

USeries us_truncate(const USeries& f, long T2) {
  if (T2 > f.T) throw std::invalid_argument("truncate cannot widen a series");
  USeries r = us_zero(f.spec, T2, f.homdeg);
  for (long j = 0; j < T2; ++j) r.c[j] = f.c[j];
  return r;
}

USeries us_extend_zero(const USeries& f, long T2) {
  if (T2 < f.T) throw std::invalid_argument("extend cannot shrink a series");
  USeries r = us_zero(f.spec, T2, f.homdeg);
  for (long j = 0; j < f.T; ++j) r.c[j] = f.c[j];
  return r;
}

USeries us_shift_div(const USeries& f, long k) {
  if (k == 0) return f;
  if (k < 0 || k >= f.T) throw std::invalid_argument("shift amount out of range");
  for (long j = 0; j < k; ++j)
    if (!f.c[j].is_zero())
      throw std::domain_error("series is not divisible by u^" + std::to_string(k));
  long hd = f.homdeg == kNoHomDeg ? kNoHomDeg : f.homdeg - 2 * k;
  USeries r = us_zero(f.spec, f.T - k, hd);
  for (long j = k; j < f.T; ++j) r.c[j - k] = f.c[j];
  return r;
}

long us_lowest_slot(const USeries& f) {
  for (long j = 0; j < f.T; ++j)
    if (!f.c[j].is_zero()) return j;
  return -1;
}

UPowerTable::UPowerTable(USeries g) { memo_.emplace(1L, std::move(g)); }

const USeries& UPowerTable::pow(long k) {
  if (k < 1) throw std::invalid_argument("power table starts at exponent 1");
  auto it = memo_.find(k);
  if (it != memo_.end()) return it->second;
  const USeries& g = memo_.at(1);
  USeries r;
  if (g.spec.charp() && k >= g.spec.p) {
    long a = k / g.spec.p, b = k % g.spec.p;
    r = us_frobenius(pow(a));
    if (b > 0) r = r * pow(b);
  } else if (k % 2 == 0) {
    const USeries& h = pow(k / 2);
    r = h * h;
  } else {
    r = pow(k - 1) * g;
  }
  return memo_.emplace(k, std::move(r)).first->second;
}

USeries us_power(const USeries& g, long k) {
  if (k < 0) throw std::invalid_argument("negative series power");
  if (k == 0) return us_const(coef_one(g.spec), g.T);
  UPowerTable t(g);
  return t.pow(k);
}

USeries us_frobenius(const USeries& f) {
  if (!f.spec.charp())
    throw std::domain_error("Frobenius needs prime characteristic scalars");
  long p = f.spec.p;
  long hd = f.homdeg == kNoHomDeg ? kNoHomDeg : f.homdeg * p;
  USeries r = us_zero(f.spec, f.T, hd);
  for (long j = 0; j < f.T; ++j) {
    if (f.c[j].is_zero()) continue;
    long jj = j * p;
    if (jj >= f.T) break;
    r.c[jj] = coef_frobenius(f.c[j]);
  }
  return r;
}

USeries us_compose(const USeries& f, UPowerTable& gpow, const RingSpec& gspec, long gT) {
  if (!(f.spec == gspec))
    throw std::invalid_argument("composition across different coefficient rings");
  if (f.T != gT)
    throw std::invalid_argument("mixed truncation orders in composition");
  USeries r = us_zero(f.spec, f.T);
  if (!f.c[0].is_zero()) r.c[0] = f.c[0];
  // Materialize the needed powers, then assemble slot-major so each output
  // slot is normalized once across all contributing powers.
  std::vector<const USeries*> used;
  std::vector<const CoefElem*> fcoef;
  for (long j = 1; j < f.T; ++j) {
    if (f.c[j].is_zero()) continue;
    const USeries& gj = gpow.pow(j);
    if (gj.is_zero()) break;  // higher powers only vanish further
    used.push_back(&gj);
    fcoef.push_back(&f.c[j]);
  }
  CoefAccum acc(f.spec);
  for (long s = 1; s < f.T; ++s) {
    for (std::size_t k = 0; k < used.size(); ++k) {
      const CoefElem& gc = used[k]->c[s];
      if (gc.is_zero()) continue;
      acc.add_product(*fcoef[k], gc);
    }
    if (!acc.empty()) r.c[s] = acc.take();
  }
  return r;
}

USeries us_compose(const USeries& f, const USeries& g) {
  if (g.T < 1 || !g.c[0].is_zero())
    throw std::domain_error("inner series must have zero constant slot");
  UPowerTable t(g);
  USeries r = us_compose(f, t, g.spec, g.T);
  if (f.homdeg != kNoHomDeg && g.homdeg == 2) r.homdeg = f.homdeg;
  return r;
}

USeries us_series_inverse(const USeries& f) {
  if (!coef_is_unit(f.c[0]))
    throw std::domain_error("constant slot is not a unit");
  CoefInverse c0 = coef_inverse(f.c[0]);
  if (!c0.exact) throw std::domain_error("constant slot is not exactly invertible");
  USeries r = us_zero(f.spec, f.T);
  r.c[0] = c0.inv;
  for (long m = 1; m < f.T; ++m) {
    CoefElem acc = coef_zero(f.spec);
    for (long k = 1; k <= m; ++k)
      if (!f.c[k].is_zero() && !r.c[m - k].is_zero()) acc = acc + f.c[k] * r.c[m - k];
    r.c[m] = -(c0.inv * acc);
  }
  return r;
}

USeries us_reversion(const USeries& f) {
  if (f.T < 2 || !f.c[0].is_zero())
    throw std::domain_error("reversion needs a series with zero constant slot");
  if (!coef_is_unit(f.c[1]))
    throw std::domain_error("reversion needs a unit linear slot");
  CoefInverse c1 = coef_inverse(f.c[1]);
  if (!c1.exact) throw std::domain_error("linear slot is not exactly invertible");
  USeries g = us_zero(f.spec, f.T, 2);
  g.c[1] = c1.inv;
  for (long m = 2; m < f.T; ++m) {
    USeries h = us_compose(f, g);
    // The slots below m already match u; kill the error at order m.
    g.c[m] = g.c[m] - c1.inv * h.c[m];
  }
  return g;
}

LowestTerm us_lowest_term(const USeries& f, const Ideal& ideal) {
  LowestTerm lt;
  lt.coef = coef_zero(f.spec);
  for (long j = 0; j < f.T; ++j) {
    if (f.c[j].is_zero()) continue;
    CoefElem red = reduce_mod_ideal(f.c[j], ideal);
    if (!red.is_zero()) {
      lt.found = true;
      lt.ord = j;
      lt.coef = red;
      return lt;
    }
  }
  return lt;
}

USeries us_reduce_coef(const USeries& f, const RingSpec& target) {
  USeries r = us_zero(target, f.T, f.homdeg);
  for (long j = 0; j < f.T; ++j)
    if (!f.c[j].is_zero()) r.c[j] = reduce_coef(f.c[j], target);
  return r;
}

USeries us_reduce_ideal(const USeries& f, const Ideal& ideal) {
  USeries r = us_zero(f.spec, f.T, kNoHomDeg);
  for (long j = 0; j < f.T; ++j)
    if (!f.c[j].is_zero()) r.c[j] = reduce_mod_ideal(f.c[j], ideal);
  return r;
}

std::string us_text(const USeries& f, const std::string& var) {
  std::ostringstream os;
  bool first = true;
  for (long j = 0; j < f.T; ++j) {
    if (f.c[j].is_zero()) continue;
    std::string ct = coef_text(f.c[j]);
    bool neg = !ct.empty() && ct[0] == '-';
    std::string body = neg ? ct.substr(1) : ct;
    bool multi = f.c[j].term_count() > 1;
    std::string upart;
    if (j == 1)
      upart = var;
    else if (j > 1)
      upart = var + "^" + std::to_string(j);
    std::string piece;
    if (upart.empty()) {
      piece = multi ? "(" + body + ")" : body;
    } else if (body == "1" && !multi) {
      piece = upart;
    } else {
      piece = (multi ? "(" + body + ")" : body) + "*" + upart;
    }
    if (first) {
      if (neg) os << "-";
      os << piece;
      first = false;
    } else {
      os << (neg ? " - " : " + ") << piece;
    }
  }
  if (first) return "0";
  return os.str();
}

void us_json(const USeries& f, JsonWriter& w, const std::string& var) {
  w.begin_object();
  w.key("var");
  w.value(var);
  w.key("order");
  w.value(f.T);
  w.key("slots");
  w.begin_array();
  for (long j = 0; j < f.T; ++j) {
    if (f.c[j].is_zero()) continue;
    w.begin_object();
    w.key("exp");
    w.value(j);
    w.key("coef");
    coef_json(f.c[j], w);
    w.key("text");
    w.value(coef_text(f.c[j]));
    w.end_object();
  }
  w.end_array();
  w.end_object();
}

void us_check_homogeneous(const USeries& f, long homdeg) {
  for (long j = 0; j < f.T; ++j) {
    if (f.c[j].is_zero()) continue;
    HomDegree hd = coef_degree(f.c[j]);
    if (!hd.homogeneous || hd.degree != homdeg - 2 * j)
      throw std::domain_error("slot " + std::to_string(j) + " breaks homogeneity");
  }
}

}  // namespace fglforge
