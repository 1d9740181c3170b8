#pragma once

#include <optional>
#include <vector>

#include "isopoly/eisenstein.hpp"

namespace isopoly {

// Row-major matrices over an Eisenstein extension. Vectors are rows; a
// subspace is the row span of a basis matrix.
using KVec = std::vector<EisElem>;
using KMat = std::vector<KVec>;

KMat k_identity(const EisensteinExt& ring, long n);
KMat k_from_rational(const EisensteinExt& ring, const std::vector<std::vector<Rational>>& m);
KMat k_mul(const EisensteinExt& ring, const KMat& a, const KMat& b);
KMat k_transpose(const KMat& a);
bool k_eq(const KMat& a, const KMat& b);

// Reduced row echelon form; returns the rank and (optionally) the transform
// T with T * input = rref.
KMat k_rref(const EisensteinExt& ring, KMat m, long* rank_out = nullptr, KMat* transform = nullptr);
long k_rank(const EisensteinExt& ring, const KMat& m);
// Nonzero rref rows: canonical basis of the row span.
KMat k_row_basis(const EisensteinExt& ring, const KMat& m);
// Basis of {v : v * m = 0}.
KMat k_left_kernel(const EisensteinExt& ring, const KMat& m);
// Basis of rowspan(a) intersected with rowspan(b).
KMat k_intersect(const EisensteinExt& ring, const KMat& a, const KMat& b);
long k_dim_intersect(const EisensteinExt& ring, const KMat& a, const KMat& b);
bool k_in_rowspan(const EisensteinExt& ring, const KVec& v, const KMat& basis);
// X with X * basis = rows; nullopt if some row is outside the span.
std::optional<KMat> k_solve_in_rowspan(const EisensteinExt& ring, const KMat& basis,
                                       const KMat& rows);
EisElem k_det(const EisensteinExt& ring, KMat m);

// Smith normal form over the valuation ring of the extension (a DVR):
// u * m * v = diag(divisors), u and v unimodular over the ring. Entries must
// be integral. Divisors are ordered by increasing valuation; a rank-deficient
// input reports zero divisors at the end.
struct SnfResult {
  std::vector<EisElem> divisors;
  KMat u, v;
  long rank = 0;
};
SnfResult smith_normal_form(const EisensteinExt& ring, KMat m);

// Length of coker(O^r -> O^c, v -> v*m) in the ring's simple-module units
// (e * valuation). Throws DomainError when the cokernel has infinite length.
Rational cokernel_length(const EisensteinExt& ring, const KMat& m);

// Saturated lattice {v in O^r : v * m = 0} as basis rows; always a direct
// summand of O^r.
KMat kernel_lattice(const EisensteinExt& ring, const KMat& m);

// Row span of the reductions mod the maximal ideal, as an F_p row basis in
// reduced echelon form. Entries must be integral.
std::vector<std::vector<long>> residue_row_basis(const EisensteinExt& ring, const KMat& m);

}  // namespace isopoly
