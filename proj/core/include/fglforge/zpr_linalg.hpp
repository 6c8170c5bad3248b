#pragma once

#include <cstddef>
#include <vector>

namespace fglforge {

// Dense matrix over Z/p^r with entries stored row-major as residues.
struct ZprMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<unsigned long> a;

  ZprMatrix() = default;
  ZprMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
  unsigned long& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  unsigned long at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

// Generating set of { x : A x = 0 over Z/p^r }, computed by valuation-pivoted
// elimination: column operations are tracked, row operations only rescale the
// equations and leave the kernel alone. The returned vectors generate the
// kernel as a Z/p^r-module; they are zero-free and deterministic.
std::vector<std::vector<unsigned long>> zpr_kernel(const ZprMatrix& A, long p, int r);

// A x for a residue vector.
std::vector<unsigned long> zpr_apply(const ZprMatrix& A, const std::vector<unsigned long>& x,
                                     long p, int r);

// C = A B over Z/p^r.
ZprMatrix zpr_mul(const ZprMatrix& A, const ZprMatrix& B, long p, int r);

bool zpr_is_zero(const ZprMatrix& A);

ZprMatrix zpr_identity(std::size_t n);

ZprMatrix zpr_add(const ZprMatrix& A, const ZprMatrix& B, long p, int r);
ZprMatrix zpr_sub(const ZprMatrix& A, const ZprMatrix& B, long p, int r);

}  // namespace fglforge
