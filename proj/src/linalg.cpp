#include "isopoly/linalg.hpp"

#include <algorithm>

namespace isopoly {

namespace {

long n_cols(const KMat& m) { return m.empty() ? 0 : static_cast<long>(m[0].size()); }

void check_rect(const KMat& m) {
  for (const auto& row : m)
    if (static_cast<long>(row.size()) != n_cols(m)) throw DomainError("ragged matrix");
}

}  // namespace

KMat k_identity(const EisensteinExt& ring, long n) {
  KMat m(n, KVec(n, ring.zero()));
  for (long i = 0; i < n; ++i) m[i][i] = ring.one();
  return m;
}

KMat k_from_rational(const EisensteinExt& ring, const std::vector<std::vector<Rational>>& m) {
  KMat out;
  out.reserve(m.size());
  for (const auto& row : m) {
    KVec r;
    r.reserve(row.size());
    for (const auto& q : row) r.push_back(ring.from_rational(q));
    out.push_back(std::move(r));
  }
  return out;
}

KMat k_mul(const EisensteinExt& ring, const KMat& a, const KMat& b) {
  check_rect(a);
  check_rect(b);
  long n = static_cast<long>(a.size()), k = n_cols(a), c = n_cols(b);
  if (k != static_cast<long>(b.size())) throw DomainError("matrix product shape mismatch");
  KMat out(n, KVec(c, ring.zero()));
  for (long i = 0; i < n; ++i)
    for (long l = 0; l < k; ++l) {
      if (ring.is_zero(a[i][l])) continue;
      for (long j = 0; j < c; ++j)
        out[i][j] = ring.add(out[i][j], ring.mul(a[i][l], b[l][j]));
    }
  return out;
}

KMat k_transpose(const KMat& a) {
  check_rect(a);
  KMat out(n_cols(a), KVec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) out[j][i] = a[i][j];
  return out;
}

bool k_eq(const KMat& a, const KMat& b) { return a == b; }

KMat k_rref(const EisensteinExt& ring, KMat m, long* rank_out, KMat* transform) {
  check_rect(m);
  long rows = static_cast<long>(m.size()), cols = n_cols(m);
  KMat t;
  if (transform) t = k_identity(ring, rows);
  long r = 0;
  for (long c = 0; c < cols && r < rows; ++c) {
    long pivot = -1;
    for (long i = r; i < rows; ++i)
      if (!ring.is_zero(m[i][c])) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[pivot], m[r]);
    if (transform) std::swap(t[pivot], t[r]);
    EisElem inv = ring.inv(m[r][c]);
    for (long j = 0; j < cols; ++j) m[r][j] = ring.mul(m[r][j], inv);
    if (transform)
      for (long j = 0; j < rows; ++j) t[r][j] = ring.mul(t[r][j], inv);
    for (long i = 0; i < rows; ++i) {
      if (i == r || ring.is_zero(m[i][c])) continue;
      EisElem f = m[i][c];
      for (long j = 0; j < cols; ++j)
        m[i][j] = ring.sub(m[i][j], ring.mul(f, m[r][j]));
      if (transform)
        for (long j = 0; j < rows; ++j) t[i][j] = ring.sub(t[i][j], ring.mul(f, t[r][j]));
    }
    ++r;
  }
  if (rank_out) *rank_out = r;
  if (transform) *transform = std::move(t);
  return m;
}

long k_rank(const EisensteinExt& ring, const KMat& m) {
  long r = 0;
  k_rref(ring, m, &r);
  return r;
}

KMat k_row_basis(const EisensteinExt& ring, const KMat& m) {
  long r = 0;
  KMat rr = k_rref(ring, m, &r);
  rr.resize(r);
  return rr;
}

KMat k_left_kernel(const EisensteinExt& ring, const KMat& m) {
  // v * m = 0  <=>  m^T * v^T = 0: row-reduce m^T tracking combos, or reduce
  // the augmented [m | I] by rows. Row-reduce m with a transform: zero rows of
  // the rref correspond to kernel combinations.
  long rank = 0;
  KMat t;
  KMat rr = k_rref(ring, m, &rank, &t);
  (void)rr;
  KMat out;
  for (std::size_t i = rank; i < m.size(); ++i) out.push_back(t[i]);
  return out;
}

KMat k_intersect(const EisensteinExt& ring, const KMat& a, const KMat& b) {
  if (a.empty() || b.empty()) return {};
  if (n_cols(a) != n_cols(b)) throw DomainError("intersection shape mismatch");
  // Solutions of x*a = y*b: left kernel of the stacked matrix [a; b] split
  // into the a-part and b-part.
  KMat stacked = a;
  for (const auto& row : b) stacked.push_back(row);
  KMat ker = k_left_kernel(ring, stacked);
  KMat out;
  for (const auto& k : ker) {
    KVec v(n_cols(a), ring.zero());
    for (std::size_t i = 0; i < a.size(); ++i)
      for (long j = 0; j < n_cols(a); ++j)
        v[j] = ring.add(v[j], ring.mul(k[i], a[i][j]));
    out.push_back(std::move(v));
  }
  return k_row_basis(ring, out);
}

long k_dim_intersect(const EisensteinExt& ring, const KMat& a, const KMat& b) {
  if (a.empty() || b.empty()) return 0;
  // dim(A) + dim(B) - dim(A + B), computed on row bases.
  long da = k_rank(ring, a), db = k_rank(ring, b);
  KMat stacked = a;
  for (const auto& row : b) stacked.push_back(row);
  return da + db - k_rank(ring, stacked);
}

bool k_in_rowspan(const EisensteinExt& ring, const KVec& v, const KMat& basis) {
  KMat stacked = basis;
  stacked.push_back(v);
  return k_rank(ring, stacked) == k_rank(ring, basis);
}

std::optional<KMat> k_solve_in_rowspan(const EisensteinExt& ring, const KMat& basis,
                                       const KMat& rows) {
  if (basis.empty()) {
    for (const auto& r : rows)
      for (const auto& x : r)
        if (!ring.is_zero(x)) return std::nullopt;
    return KMat(rows.size(), KVec{});
  }
  long rank = 0;
  KMat t;
  KMat rr = k_rref(ring, basis, &rank, &t);
  if (rank != static_cast<long>(basis.size()))
    throw DomainError("solve_in_rowspan requires independent basis rows");
  long cols = n_cols(basis);
  std::vector<long> pivot_col(rank);
  for (long i = 0; i < rank; ++i) {
    long c = 0;
    while (c < cols && ring.is_zero(rr[i][c])) ++c;
    pivot_col[i] = c;
  }
  KMat out;
  for (const auto& w : rows) {
    // coords in the rref basis, then back through the transform
    KVec coeff(rank, ring.zero());
    KVec rem = w;
    for (long i = 0; i < rank; ++i) {
      EisElem c = rem[pivot_col[i]];
      coeff[i] = c;
      if (ring.is_zero(c)) continue;
      for (long j = 0; j < cols; ++j) rem[j] = ring.sub(rem[j], ring.mul(c, rr[i][j]));
    }
    for (const auto& x : rem)
      if (!ring.is_zero(x)) return std::nullopt;
    KVec sol(basis.size(), ring.zero());
    for (long i = 0; i < rank; ++i)
      for (std::size_t j = 0; j < basis.size(); ++j)
        sol[j] = ring.add(sol[j], ring.mul(coeff[i], t[i][j]));
    out.push_back(std::move(sol));
  }
  return out;
}

EisElem k_det(const EisensteinExt& ring, KMat m) {
  check_rect(m);
  long n = static_cast<long>(m.size());
  if (n != n_cols(m)) throw DomainError("determinant of a non-square matrix");
  EisElem det = ring.one();
  for (long c = 0; c < n; ++c) {
    long pivot = -1;
    for (long i = c; i < n; ++i)
      if (!ring.is_zero(m[i][c])) {
        pivot = i;
        break;
      }
    if (pivot < 0) return ring.zero();
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      det = ring.neg(det);
    }
    det = ring.mul(det, m[c][c]);
    EisElem inv = ring.inv(m[c][c]);
    for (long i = c + 1; i < n; ++i) {
      if (ring.is_zero(m[i][c])) continue;
      EisElem f = ring.mul(m[i][c], inv);
      for (long j = c; j < n; ++j) m[i][j] = ring.sub(m[i][j], ring.mul(f, m[c][j]));
    }
  }
  return det;
}

SnfResult smith_normal_form(const EisensteinExt& ring, KMat m) {
  check_rect(m);
  long rows = static_cast<long>(m.size()), cols = n_cols(m);
  for (const auto& row : m)
    for (const auto& x : row)
      if (!ring.is_integral(x)) throw DomainError("Smith normal form needs integral entries");
  SnfResult res;
  res.u = k_identity(ring, rows);
  res.v = k_identity(ring, cols);
  long steps = std::min(rows, cols);
  for (long k = 0; k < steps; ++k) {
    // pivot: minimal valuation in the remaining block
    long pi = -1, pj = -1;
    std::optional<Rational> best;
    for (long i = k; i < rows; ++i)
      for (long j = k; j < cols; ++j) {
        auto v = ring.valuation(m[i][j]);
        if (!v) continue;
        if (!best || *v < *best) {
          best = *v;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;  // remaining block is zero
    std::swap(m[pi], m[k]);
    std::swap(res.u[pi], res.u[k]);
    if (pj != k) {
      for (long i = 0; i < rows; ++i) std::swap(m[i][pj], m[i][k]);
      for (long i = 0; i < cols; ++i) std::swap(res.v[i][pj], res.v[i][k]);
    }
    // clear column k below the pivot (quotients are integral by minimality)
    for (long i = k + 1; i < rows; ++i) {
      if (ring.is_zero(m[i][k])) continue;
      EisElem q = ring.div(m[i][k], m[k][k]);
      for (long j = k; j < cols; ++j) m[i][j] = ring.sub(m[i][j], ring.mul(q, m[k][j]));
      for (long j = 0; j < rows; ++j)
        res.u[i][j] = ring.sub(res.u[i][j], ring.mul(q, res.u[k][j]));
    }
    // clear row k to the right
    for (long j = k + 1; j < cols; ++j) {
      if (ring.is_zero(m[k][j])) continue;
      EisElem q = ring.div(m[k][j], m[k][k]);
      for (long i = 0; i < cols; ++i)
        res.v[i][j] = ring.sub(res.v[i][j], ring.mul(q, res.v[i][k]));
      for (long i = k; i < rows; ++i) m[i][j] = ring.sub(m[i][j], ring.mul(q, m[i][k]));
    }
    ++res.rank;
  }
  for (long k = 0; k < steps; ++k) res.divisors.push_back(m[k][k]);
  return res;
}

Rational cokernel_length(const EisensteinExt& ring, const KMat& m) {
  long cols = n_cols(m);
  SnfResult s = smith_normal_form(ring, m);
  if (s.rank < cols) throw DomainError("cokernel has infinite length");
  Rational total = 0;
  for (const auto& d : s.divisors) {
    auto v = ring.valuation(d);
    if (!v) throw DomainError("cokernel has infinite length");
    total += Rational(ring.degree()) * *v;
  }
  return total;
}

KMat kernel_lattice(const EisensteinExt& ring, const KMat& m) {
  long rows = static_cast<long>(m.size());
  SnfResult s = smith_normal_form(ring, m);
  // u * m * v = d; v over O unimodular, so v*m = 0 over O^rows iff the
  // corresponding w = row combo of u has support on zero divisors.
  KMat out;
  for (long i = s.rank; i < rows; ++i) out.push_back(s.u[i]);
  return out;
}

std::vector<std::vector<long>> residue_row_basis(const EisensteinExt& ring, const KMat& m) {
  long p = ring.p();
  std::vector<std::vector<long>> rows;
  for (const auto& r : m) {
    std::vector<long> row;
    row.reserve(r.size());
    for (const auto& x : r) row.push_back(ring.residue(x));
    rows.push_back(std::move(row));
  }
  // Gauss over F_p, reduced echelon form.
  auto inv_mod = [p](long a) {
    long r = 1, b = a % p, e = p - 2;  // p prime
    while (e) {
      if (e & 1) r = (r * b) % p;
      b = (b * b) % p;
      e >>= 1;
    }
    return r;
  };
  std::size_t rr = 0;
  long cols = rows.empty() ? 0 : static_cast<long>(rows[0].size());
  for (long c = 0; c < cols && rr < rows.size(); ++c) {
    std::size_t pivot = rr;
    while (pivot < rows.size() && rows[pivot][c] % p == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rr]);
    long f = inv_mod(((rows[rr][c] % p) + p) % p);
    for (long j = 0; j < cols; ++j) rows[rr][j] = (((rows[rr][j] * f) % p) + p) % p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rr || rows[i][c] % p == 0) continue;
      long g = rows[i][c] % p;
      for (long j = 0; j < cols; ++j)
        rows[i][j] = (((rows[i][j] - g * rows[rr][j]) % p) + p) % p;
    }
    ++rr;
  }
  rows.resize(rr);
  return rows;
}

}  // namespace isopoly
