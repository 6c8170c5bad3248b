#include "fglforge/biseries.hpp"

#include <array>
#include <sstream>
#include <stdexcept>

#include "fglforge/jsonw.hpp"

namespace fglforge {

namespace {

std::size_t bi_index(long i, long j) {
  long d = i + j;
  return static_cast<std::size_t>(d * (d + 1) / 2 + j);
}

std::size_t bi_count(long T) { return static_cast<std::size_t>(T * (T + 1) / 2); }

// Slots with total degree < d.
long tet_below(long d) { return d * (d + 1) * (d + 2) / 6; }

std::size_t tri_index(long i, long j, long k) {
  long d = i + j + k;
  long jk = j + k;
  return static_cast<std::size_t>(tet_below(d) + jk * (jk + 1) / 2 + k);
}

std::size_t tri_count(long T) { return static_cast<std::size_t>(tet_below(T)); }

void require_same_bi(const BiSeries& a, const BiSeries& b) {
  if (!(a.spec == b.spec) || a.T != b.T)
    throw std::invalid_argument("bivariate operands disagree on ring or order");
}

void require_same_tri(const TriSeries& a, const TriSeries& b) {
  if (!(a.spec == b.spec) || a.T != b.T)
    throw std::invalid_argument("trivariate operands disagree on ring or order");
}

}  // namespace

const CoefElem& BiSeries::at(long i, long j) const {
  if (i < 0 || j < 0 || i + j >= T) throw std::out_of_range("bivariate index");
  return t[bi_index(i, j)];
}

void BiSeries::set(long i, long j, CoefElem v) {
  if (i < 0 || j < 0 || i + j >= T) throw std::out_of_range("bivariate index");
  t[bi_index(i, j)] = std::move(v);
}

BiSeries bs_zero(const RingSpec& s, long T, long homdeg) {
  if (T < 1) throw std::invalid_argument("truncation order must be positive");
  BiSeries f;
  f.spec = s;
  f.T = T;
  f.homdeg = homdeg;
  f.t.assign(bi_count(T), coef_zero(s));
  return f;
}

BiSeries operator+(const BiSeries& a, const BiSeries& b) {
  require_same_bi(a, b);
  BiSeries r = a;
  r.homdeg = (a.homdeg == b.homdeg) ? a.homdeg : kNoHomDeg;
  for (std::size_t s = 0; s < r.t.size(); ++s)
    if (!b.t[s].is_zero()) r.t[s] = r.t[s] + b.t[s];
  return r;
}

BiSeries operator-(const BiSeries& a, const BiSeries& b) {
  require_same_bi(a, b);
  BiSeries r = a;
  r.homdeg = (a.homdeg == b.homdeg) ? a.homdeg : kNoHomDeg;
  for (std::size_t s = 0; s < r.t.size(); ++s)
    if (!b.t[s].is_zero()) r.t[s] = r.t[s] - b.t[s];
  return r;
}

BiSeries operator*(const BiSeries& a, const BiSeries& b) {
  require_same_bi(a, b);
  long hd = (a.homdeg != kNoHomDeg && b.homdeg != kNoHomDeg) ? a.homdeg + b.homdeg
                                                             : kNoHomDeg;
  BiSeries r = bs_zero(a.spec, a.T, hd);
  for (long ia = 0; ia < a.T; ++ia)
    for (long ja = 0; ia + ja < a.T; ++ja) {
      const CoefElem& ca = a.t[bi_index(ia, ja)];
      if (ca.is_zero()) continue;
      for (long ib = 0; ia + ja + ib < a.T; ++ib)
        for (long jb = 0; ia + ja + ib + jb < a.T; ++jb) {
          const CoefElem& cb = b.t[bi_index(ib, jb)];
          if (cb.is_zero()) continue;
          std::size_t s = bi_index(ia + ib, ja + jb);
          r.t[s] = r.t[s] + ca * cb;
        }
    }
  return r;
}

bool operator==(const BiSeries& a, const BiSeries& b) {
  if (!(a.spec == b.spec) || a.T != b.T) return false;
  for (std::size_t s = 0; s < a.t.size(); ++s)
    if (!(a.t[s] == b.t[s])) return false;
  return true;
}

BiSeries bs_scale(const CoefElem& c, const BiSeries& f) {
  BiSeries r = bs_zero(f.spec, f.T, kNoHomDeg);
  if (c.is_zero()) return r;
  HomDegree hd = coef_degree(c);
  if (f.homdeg != kNoHomDeg && hd.homogeneous && !hd.zero) r.homdeg = f.homdeg + hd.degree;
  for (std::size_t s = 0; s < f.t.size(); ++s)
    if (!f.t[s].is_zero()) r.t[s] = c * f.t[s];
  return r;
}

bool bs_is_symmetric(const BiSeries& f) {
  for (long i = 0; i < f.T; ++i)
    for (long j = i; i + j < f.T; ++j)
      if (!(f.at(i, j) == f.at(j, i))) return false;
  return true;
}

BiSeries bs_reduce_coef(const BiSeries& f, const RingSpec& target) {
  BiSeries r = bs_zero(target, f.T, f.homdeg);
  for (std::size_t s = 0; s < f.t.size(); ++s)
    if (!f.t[s].is_zero()) r.t[s] = reduce_coef(f.t[s], target);
  return r;
}

BiSeries bs_axes_sum(const USeries& g) {
  if (!g.c[0].is_zero())
    throw std::domain_error("axis series must have zero constant slot");
  BiSeries r = bs_zero(g.spec, g.T, g.homdeg);
  for (long m = 1; m < g.T; ++m) {
    if (g.c[m].is_zero()) continue;
    r.set(m, 0, g.c[m]);
    r.set(0, m, g.c[m]);
  }
  return r;
}

BiSeries bs_compose_outer(const USeries& f, const BiSeries& A) {
  if (!(f.spec == A.spec) || f.T != A.T)
    throw std::invalid_argument("outer composition disagrees on ring or order");
  if (!A.t[0].is_zero())
    throw std::domain_error("inner bivariate series must have zero constant slot");
  BiSeries r = bs_zero(A.spec, A.T);
  if (!f.c[0].is_zero()) r.t[0] = f.c[0];
  BiSeries pw = A;  // A^k
  for (long k = 1; k < f.T; ++k) {
    if (k > 1) {
      bool empty = true;
      for (const CoefElem& x : pw.t) empty &= x.is_zero();
      if (empty) break;
    }
    if (!f.c[k].is_zero()) {
      BiSeries sc = bs_scale(f.c[k], pw);
      r = r + sc;
    }
    if (k + 1 < f.T) pw = pw * A;
  }
  if (f.homdeg != kNoHomDeg && A.homdeg == 2) r.homdeg = f.homdeg;
  return r;
}

USeries bs_subst_uu(const BiSeries& F, const USeries& f, const USeries& g) {
  if (!(F.spec == f.spec) || !(F.spec == g.spec))
    throw std::invalid_argument("substitution across different coefficient rings");
  if (f.T != F.T || g.T != F.T)
    throw std::invalid_argument("mixed truncation orders in substitution");
  if (!f.c[0].is_zero() || !g.c[0].is_zero())
    throw std::domain_error("substituted series must have zero constant slots");
  long T = F.T;
  UPowerTable fp(f), gp(g);
  USeries out = us_zero(F.spec, T);
  long flow = us_lowest_slot(f), glow = us_lowest_slot(g);
  for (long j = 0; j < T; ++j) {
    if (j > 0 && (glow < 0 || j * glow >= T)) break;
    // Row series R_j(u) = sum_i c_{ij} f(u)^i.
    USeries row = us_zero(F.spec, T);
    bool row_nz = false;
    for (long i = 0; i + j < T; ++i) {
      const CoefElem& cij = F.at(i, j);
      if (cij.is_zero()) continue;
      if (i == 0) {
        row.c[0] = row.c[0] + cij;
        row_nz = true;
        continue;
      }
      if (flow < 0 || i * flow >= T) continue;
      row = row + us_scale(cij, fp.pow(i));
      row_nz = true;
    }
    if (!row_nz) continue;
    if (j == 0) {
      out = out + row;
      continue;
    }
    out = out + row * gp.pow(j);
  }
  if (F.homdeg != kNoHomDeg && f.homdeg == 2 && g.homdeg == 2) out.homdeg = F.homdeg;
  return out;
}

std::string bs_text(const BiSeries& f) {
  std::ostringstream os;
  bool first = true;
  for (long d = 0; d < f.T; ++d)
    for (long j = 0; j <= d; ++j) {
      long i = d - j;
      const CoefElem& c = f.at(i, j);
      if (c.is_zero()) continue;
      std::string ct = coef_text(c);
      bool multi = c.term_count() > 1;
      std::string mono;
      if (i > 0) mono += "x" + (i > 1 ? "^" + std::to_string(i) : "");
      if (j > 0) {
        if (!mono.empty()) mono += "*";
        mono += "y" + (j > 1 ? "^" + std::to_string(j) : "");
      }
      bool neg = !ct.empty() && ct[0] == '-';
      std::string body = neg ? ct.substr(1) : ct;
      std::string piece;
      if (mono.empty())
        piece = multi ? "(" + body + ")" : body;
      else if (body == "1" && !multi)
        piece = mono;
      else
        piece = (multi ? "(" + body + ")" : body) + "*" + mono;
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

void bs_json(const BiSeries& f, JsonWriter& w) {
  w.begin_object();
  w.key("order");
  w.value(f.T);
  w.key("slots");
  w.begin_array();
  for (long d = 0; d < f.T; ++d)
    for (long j = 0; j <= d; ++j) {
      long i = d - j;
      const CoefElem& c = f.at(i, j);
      if (c.is_zero()) continue;
      w.begin_object();
      w.key("i");
      w.value(i);
      w.key("j");
      w.value(j);
      w.key("coef");
      coef_json(c, w);
      w.key("text");
      w.value(coef_text(c));
      w.end_object();
    }
  w.end_array();
  w.end_object();
}

const CoefElem& TriSeries::at(long i, long j, long k) const {
  if (i < 0 || j < 0 || k < 0 || i + j + k >= T) throw std::out_of_range("trivariate index");
  return t[tri_index(i, j, k)];
}

void TriSeries::set(long i, long j, long k, CoefElem v) {
  if (i < 0 || j < 0 || k < 0 || i + j + k >= T) throw std::out_of_range("trivariate index");
  t[tri_index(i, j, k)] = std::move(v);
}

TriSeries tri_zero(const RingSpec& s, long T) {
  TriSeries f;
  f.spec = s;
  f.T = T;
  f.t.assign(tri_count(T), coef_zero(s));
  return f;
}

TriSeries operator+(const TriSeries& a, const TriSeries& b) {
  require_same_tri(a, b);
  TriSeries r = a;
  for (std::size_t s = 0; s < r.t.size(); ++s)
    if (!b.t[s].is_zero()) r.t[s] = r.t[s] + b.t[s];
  return r;
}

TriSeries operator*(const TriSeries& a, const TriSeries& b) {
  require_same_tri(a, b);
  TriSeries r = tri_zero(a.spec, a.T);
  for (long da = 0; da < a.T; ++da)
    for (long ja = 0; ja <= da; ++ja)
      for (long ka = 0; ja + ka <= da; ++ka) {
        long ia = da - ja - ka;
        const CoefElem& ca = a.t[tri_index(ia, ja, ka)];
        if (ca.is_zero()) continue;
        for (long db = 0; da + db < a.T; ++db)
          for (long jb = 0; jb <= db; ++jb)
            for (long kb = 0; jb + kb <= db; ++kb) {
              long ib = db - jb - kb;
              const CoefElem& cb = b.t[tri_index(ib, jb, kb)];
              if (cb.is_zero()) continue;
              std::size_t s = tri_index(ia + ib, ja + jb, ka + kb);
              r.t[s] = r.t[s] + ca * cb;
            }
      }
  return r;
}

bool operator==(const TriSeries& a, const TriSeries& b) {
  if (!(a.spec == b.spec) || a.T != b.T) return false;
  for (std::size_t s = 0; s < a.t.size(); ++s)
    if (!(a.t[s] == b.t[s])) return false;
  return true;
}

TriSeries tri_scale(const CoefElem& c, const TriSeries& f) {
  TriSeries r = tri_zero(f.spec, f.T);
  if (c.is_zero()) return r;
  for (std::size_t s = 0; s < f.t.size(); ++s)
    if (!f.t[s].is_zero()) r.t[s] = c * f.t[s];
  return r;
}

TriSeries tri_from_bi(const BiSeries& f, int var_a, int var_b, long T) {
  if (var_a == var_b || var_a < 0 || var_b < 0 || var_a > 2 || var_b > 2)
    throw std::invalid_argument("bad variable placement");
  if (T > f.T) throw std::invalid_argument("cannot widen while lifting");
  TriSeries r = tri_zero(f.spec, T);
  for (long i = 0; i < T; ++i)
    for (long j = 0; i + j < T; ++j) {
      const CoefElem& c = f.at(i, j);
      if (c.is_zero()) continue;
      long e[3] = {0, 0, 0};
      e[var_a] = i;
      e[var_b] = j;
      r.set(e[0], e[1], e[2], c);
    }
  return r;
}

namespace {

// Memoized powers of a trivariate series.
class TriPowerTable {
 public:
  explicit TriPowerTable(TriSeries g) { memo_.emplace(1L, std::move(g)); }
  const TriSeries& pow(long k) {
    auto it = memo_.find(k);
    if (it != memo_.end()) return it->second;
    TriSeries r = (k % 2 == 0) ? pow(k / 2) * pow(k / 2) : pow(k - 1) * memo_.at(1);
    return memo_.emplace(k, std::move(r)).first->second;
  }

 private:
  std::map<long, TriSeries> memo_;
};

bool tri_is_zero(const TriSeries& f) {
  for (const CoefElem& x : f.t)
    if (!x.is_zero()) return false;
  return true;
}

}  // namespace

TriSeries tri_subst_bi(const BiSeries& F, const TriSeries& S, int var_t) {
  if (!(F.spec == S.spec) || F.T != S.T)
    throw std::invalid_argument("substitution disagrees on ring or order");
  if (!S.t.empty() && !S.t[0].is_zero())
    throw std::domain_error("substituted series must have zero constant slot");
  long T = F.T;
  TriPowerTable sp(S);
  TriSeries out = tri_zero(F.spec, T);
  for (long j = 0; j < T; ++j) {
    // Row series in S: sum_i c_{ij} S^i, then multiply by t^j.
    TriSeries row = tri_zero(F.spec, T);
    bool row_nz = false;
    for (long i = 0; i + j < T; ++i) {
      const CoefElem& cij = F.at(i, j);
      if (cij.is_zero()) continue;
      if (i == 0) {
        row.t[0] = row.t[0] + cij;
        row_nz = true;
        continue;
      }
      const TriSeries& pw = sp.pow(i);
      if (tri_is_zero(pw)) continue;
      row = row + tri_scale(cij, pw);
      row_nz = true;
    }
    if (!row_nz) continue;
    // Shift by t^j along the chosen variable.
    for (long d = 0; d + j < T; ++d)
      for (long jj = 0; jj <= d; ++jj)
        for (long kk = 0; jj + kk <= d; ++kk) {
          long ii = d - jj - kk;
          const CoefElem& c = row.at(ii, jj, kk);
          if (c.is_zero()) continue;
          long e[3] = {ii, jj, kk};
          e[var_t] += j;
          std::size_t s = tri_index(e[0], e[1], e[2]);
          out.t[s] = out.t[s] + c;
        }
  }
  return out;
}

TriSeries tri_permute(const TriSeries& f, const std::array<int, 3>& perm) {
  TriSeries r = tri_zero(f.spec, f.T);
  for (long d = 0; d < f.T; ++d)
    for (long j = 0; j <= d; ++j)
      for (long k = 0; j + k <= d; ++k) {
        long i = d - j - k;
        const CoefElem& c = f.at(i, j, k);
        if (c.is_zero()) continue;
        long src[3] = {i, j, k};
        long e[3];
        for (int ax = 0; ax < 3; ++ax) e[ax] = src[perm[ax]];
        r.set(e[0], e[1], e[2], c);
      }
  return r;
}

}  // namespace fglforge
