#include "fglforge/zpr_linalg.hpp"

#include <stdexcept>

#include "fglforge/coef.hpp"

namespace fglforge {

namespace {

unsigned long modulus_of(long p, int r) {
  unsigned long m = 1;
  for (int i = 0; i < r; ++i) m *= static_cast<unsigned long>(p);
  return m;
}

}  // namespace

std::vector<std::vector<unsigned long>> zpr_kernel(const ZprMatrix& A, long p, int r) {
  unsigned long M = modulus_of(p, r);
  ZprMatrix W = A;
  std::size_t nr = W.rows, nc = W.cols;
  // Column-operation tracker: final kernel vectors are C * (kernel of W).
  ZprMatrix C = zpr_identity(nc);
  std::vector<bool> row_used(nr, false), col_used(nc, false);
  struct Pivot {
    std::size_t row, col;
    int val;
  };
  std::vector<Pivot> pivots;

  while (true) {
    // Minimal-valuation entry among untouched rows and columns.
    int best_v = r;
    std::size_t bi = 0, bj = 0;
    bool found = false;
    for (std::size_t i = 0; i < nr; ++i) {
      if (row_used[i]) continue;
      for (std::size_t j = 0; j < nc; ++j) {
        if (col_used[j]) continue;
        unsigned long x = W.at(i, j) % M;
        if (x == 0) continue;
        int v = padic_val_ul(x, p);
        if (v < best_v) {
          best_v = v;
          bi = i;
          bj = j;
          found = true;
          if (v == 0) break;
        }
      }
      if (found && best_v == 0) break;
    }
    if (!found) break;

    unsigned long piv = W.at(bi, bj) % M;
    unsigned long punit = piv;
    for (int t = 0; t < best_v; ++t) punit /= static_cast<unsigned long>(p);
    unsigned long punit_inv = mod_inv_ppow(punit, p, r);

    // Clear the pivot row with tracked column operations.
    for (std::size_t j = 0; j < nc; ++j) {
      if (j == bj) continue;
      unsigned long x = W.at(bi, j) % M;
      if (x == 0) continue;
      int vx = padic_val_ul(x, p);
      if (vx < best_v) throw std::logic_error("pivot was not minimal in its row");
      unsigned long q = x;
      for (int t = 0; t < best_v; ++t) q /= static_cast<unsigned long>(p);
      unsigned long mu = mod_mul(q, punit_inv, M);  // x = mu * piv (mod p^r)
      for (std::size_t i = 0; i < nr; ++i)
        W.at(i, j) = mod_sub(W.at(i, j) % M, mod_mul(mu, W.at(i, bj) % M, M), M);
      for (std::size_t i = 0; i < nc; ++i)
        C.at(i, j) = mod_sub(C.at(i, j), mod_mul(mu, C.at(i, bj), M), M);
    }
    // Clear the pivot column with untracked row operations.
    for (std::size_t i = 0; i < nr; ++i) {
      if (i == bi) continue;
      unsigned long x = W.at(i, bj) % M;
      if (x == 0) continue;
      int vx = padic_val_ul(x, p);
      if (vx < best_v) throw std::logic_error("pivot was not minimal in its column");
      unsigned long q = x;
      for (int t = 0; t < best_v; ++t) q /= static_cast<unsigned long>(p);
      unsigned long mu = mod_mul(q, punit_inv, M);
      for (std::size_t j = 0; j < nc; ++j)
        W.at(i, j) = mod_sub(W.at(i, j) % M, mod_mul(mu, W.at(bi, j) % M, M), M);
    }
    row_used[bi] = true;
    col_used[bj] = true;
    pivots.push_back({bi, bj, best_v});
  }

  std::vector<std::vector<unsigned long>> gens;
  auto column_of_C = [&](std::size_t j, unsigned long scale) {
    std::vector<unsigned long> v(nc, 0);
    for (std::size_t i = 0; i < nc; ++i) v[i] = mod_mul(C.at(i, j), scale, M);
    return v;
  };
  for (const Pivot& pv : pivots) {
    if (pv.val == 0) continue;
    unsigned long scale = 1;
    for (int t = 0; t < r - pv.val; ++t) scale *= static_cast<unsigned long>(p);
    gens.push_back(column_of_C(pv.col, scale));
  }
  for (std::size_t j = 0; j < nc; ++j)
    if (!col_used[j]) gens.push_back(column_of_C(j, 1));
  // Drop zero vectors (possible when a tracked column collapsed).
  std::vector<std::vector<unsigned long>> out;
  for (auto& g : gens) {
    bool nz = false;
    for (unsigned long x : g) nz |= (x != 0);
    if (nz) out.push_back(std::move(g));
  }
  return out;
}

std::vector<unsigned long> zpr_apply(const ZprMatrix& A, const std::vector<unsigned long>& x,
                                     long p, int r) {
  unsigned long M = modulus_of(p, r);
  if (x.size() != A.cols) throw std::invalid_argument("vector length mismatch");
  std::vector<unsigned long> y(A.rows, 0);
  for (std::size_t i = 0; i < A.rows; ++i) {
    unsigned long acc = 0;
    for (std::size_t j = 0; j < A.cols; ++j)
      acc = mod_add(acc, mod_mul(A.at(i, j) % M, x[j] % M, M), M);
    y[i] = acc;
  }
  return y;
}

ZprMatrix zpr_mul(const ZprMatrix& A, const ZprMatrix& B, long p, int r) {
  unsigned long M = modulus_of(p, r);
  if (A.cols != B.rows) throw std::invalid_argument("matrix shape mismatch");
  ZprMatrix Cm(A.rows, B.cols);
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t k = 0; k < A.cols; ++k) {
      unsigned long aik = A.at(i, k) % M;
      if (aik == 0) continue;
      for (std::size_t j = 0; j < B.cols; ++j)
        Cm.at(i, j) = mod_add(Cm.at(i, j), mod_mul(aik, B.at(k, j) % M, M), M);
    }
  return Cm;
}

bool zpr_is_zero(const ZprMatrix& A) {
  for (unsigned long x : A.a)
    if (x != 0) return false;
  return true;
}

ZprMatrix zpr_identity(std::size_t n) {
  ZprMatrix I(n, n);
  for (std::size_t i = 0; i < n; ++i) I.at(i, i) = 1;
  return I;
}

ZprMatrix zpr_add(const ZprMatrix& A, const ZprMatrix& B, long p, int r) {
  unsigned long M = modulus_of(p, r);
  if (A.rows != B.rows || A.cols != B.cols) throw std::invalid_argument("shape mismatch");
  ZprMatrix Cm(A.rows, A.cols);
  for (std::size_t i = 0; i < A.a.size(); ++i) Cm.a[i] = mod_add(A.a[i] % M, B.a[i] % M, M);
  return Cm;
}

ZprMatrix zpr_sub(const ZprMatrix& A, const ZprMatrix& B, long p, int r) {
  unsigned long M = modulus_of(p, r);
  if (A.rows != B.rows || A.cols != B.cols) throw std::invalid_argument("shape mismatch");
  ZprMatrix Cm(A.rows, A.cols);
  for (std::size_t i = 0; i < A.a.size(); ++i) Cm.a[i] = mod_sub(A.a[i] % M, B.a[i] % M, M);
  return Cm;
}

}  // namespace fglforge
