#pragma once

#include <string>
#include <vector>

#include "pbna/errors.hpp"
#include "pbna/field.hpp"
#include "pbna/linalg.hpp"
#include "pbna/zpoly.hpp"

namespace pbna {

// Construction of the alignment solution Gamma = (V1, A, B, C): the canonical
// Vandermonde-style V1* and the generalized kernel solution of
// r(z) (zC - BA) = 0 via polynomial-matrix determinants.

struct ABC {
  Matrix A;  // L2 x L2, invertible
  Matrix B;  // L1 x L2, rank L2
  Matrix C;  // L1 x L2, rank L2
};

// A = I_n, C = left n columns of I_{n+1}, B = right n columns of I_{n+1}.
inline ABC canonical_ABC(const Field& f, int n) {
  if (n < 1) throw param_error("canonical_ABC needs n >= 1");
  ABC g{Matrix::identity(f, n), Matrix(n + 1, n), Matrix(n + 1, n)};
  for (int j = 0; j < n; ++j) {
    g.C.at(j, j) = f.one();
    g.B.at(j + 1, j) = f.one();
  }
  return g;
}

// Square matrix with univariate-polynomial entries.
class ZMatrix {
 public:
  ZMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  ZPoly& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
  const ZPoly& at(size_t r, size_t c) const { return a_[r * cols_ + c]; }

 private:
  size_t rows_, cols_;
  std::vector<ZPoly> a_;
};

// Exact determinant by cofactor expansion; the kernel construction only needs
// sizes up to n, which stays small at desk scale. Signs are trivial in
// characteristic 2, so no sign bookkeeping is required (or portable).
inline ZPoly poly_det(const Field& f, const ZMatrix& m) {
  if (m.rows() != m.cols()) throw param_error("poly_det needs a square matrix");
  const size_t n = m.rows();
  if (n == 0) return ZPoly::constant(f.one());
  if (n == 1) return m.at(0, 0);
  ZPoly det;
  for (size_t k = 0; k < n; ++k) {
    if (m.at(0, k).is_zero()) continue;
    ZMatrix minor(n - 1, n - 1);
    for (size_t r = 1; r < n; ++r) {
      size_t cc = 0;
      for (size_t c = 0; c < n; ++c) {
        if (c == k) continue;
        minor.at(r - 1, cc++) = m.at(r, c);
      }
    }
    det = det + ZPoly::mul(f, m.at(0, k), poly_det(f, minor));
  }
  return det;
}

namespace detail {

// zC - BA as a polynomial matrix (minus is plus in characteristic 2).
inline ZMatrix alignment_pencil(const Field& f, const Matrix& A, const Matrix& B, const Matrix& C) {
  const Matrix D = mat_mul(f, B, A);
  ZMatrix m(C.rows(), C.cols());
  for (size_t r = 0; r < C.rows(); ++r)
    for (size_t c = 0; c < C.cols(); ++c)
      m.at(r, c) = ZPoly::from_coeffs({D.at(r, c), C.at(r, c)});
  return m;
}

}  // namespace detail

// Solves r(z) (zC - BA) = 0 for a nonzero polynomial row vector r. The
// solution space is one-dimensional, so any output is unique up to a ZPoly
// scalar. Construction: pick the first (in lexicographic subset order) n-row
// submatrix of the pencil with a nonzero determinant, then assemble the
// Cramer determinants with the left-out row as the right-hand side. The
// result is verified by explicit multiplication before returning.
inline std::vector<ZPoly> solve_alignment_kernel(const Field& f, const Matrix& A, const Matrix& B,
                                                 const Matrix& C, int n) {
  if (n < 1) throw param_error("solve_alignment_kernel needs n >= 1");
  const size_t un = static_cast<size_t>(n);
  if (A.rows() != un || A.cols() != un || B.rows() != un + 1 || B.cols() != un ||
      C.rows() != un + 1 || C.cols() != un)
    throw param_error("solve_alignment_kernel: A must be n x n and B, C (n+1) x n");
  if (mat_rank(f, A) != un) throw param_error("rank(A) must be n");
  if (mat_rank(f, B) != un) throw param_error("rank(B) must be n");
  if (mat_rank(f, C) != un) throw param_error("rank(C) must be n");

  const ZMatrix pencil = detail::alignment_pencil(f, A, B, C);

  // Row subsets of size n out of n+1, lexicographic: leaving out row n first,
  // then n-1, ... so {0..n-1} is tried before {0..n-2, n}, etc.
  for (int left_out = n; left_out >= 0; --left_out) {
    std::vector<int> rows;
    for (int r = 0; r <= n; ++r)
      if (r != left_out) rows.push_back(r);

    ZMatrix sub(un, un);
    for (size_t r = 0; r < un; ++r)
      for (size_t c = 0; c < un; ++c) sub.at(r, c) = pencil.at(rows[r], c);
    const ZPoly det_sub = poly_det(f, sub);
    if (det_sub.is_zero()) continue;

    std::vector<ZPoly> r(un + 1);
    r[left_out] = det_sub;
    for (size_t k = 0; k < un; ++k) {
      ZMatrix ek = sub;
      for (size_t c = 0; c < un; ++c) ek.at(k, c) = pencil.at(left_out, c);
      r[rows[k]] = poly_det(f, ek);
    }

    for (size_t c = 0; c < un; ++c) {
      ZPoly acc;
      for (size_t k = 0; k <= un; ++k) acc = acc + ZPoly::mul(f, r[k], pencil.at(k, c));
      if (!acc.is_zero()) throw internal_error("kernel verification failed: r(z)(zC - BA) != 0");
    }
    return r;
  }
  // Unreachable when the rank preconditions hold: the pencil has rank n.
  throw internal_error("alignment pencil has no invertible n x n submatrix");
}

// V1*[k][j] = eta_k^j: the Vandermonde rows (1, eta_k, ..., eta_k^n); full
// column rank whenever the 2n+1 eta values are distinct.
inline Matrix build_V1_star(const Field& f, const std::vector<FieldElement>& eta_values, int n) {
  if (eta_values.size() != 2 * static_cast<size_t>(n) + 1)
    throw param_error("build_V1_star needs exactly 2n+1 eta values");
  Matrix v(eta_values.size(), n + 1);
  for (size_t k = 0; k < eta_values.size(); ++k)
    for (int j = 0; j <= n; ++j) v.at(k, j) = f.pow(eta_values[k], j);
  return v;
}

// Row k = (r_1(eta_k), ..., r_{n+1}(eta_k)) for a verified kernel solution r.
inline Matrix build_V1_from_kernel(const Field& f, const std::vector<ZPoly>& r,
                                   const std::vector<FieldElement>& eta_values) {
  if (r.empty()) throw param_error("empty kernel solution");
  const size_t n = r.size() - 1;
  if (eta_values.size() != 2 * n + 1)
    throw param_error("build_V1_from_kernel needs exactly 2n+1 eta values");
  Matrix v(eta_values.size(), r.size());
  for (size_t k = 0; k < eta_values.size(); ++k)
    for (size_t j = 0; j < r.size(); ++j) v.at(k, j) = r[j].eval(f, eta_values[k]);
  return v;
}

// A full alignment solution plus the eta values that instantiate the diagonal
// of T. Valid only if the alignment identity diag(eta) V1 C = V1 B A holds.
struct PrecodingSet {
  int n = 0;
  Matrix V1;  // (2n+1) x (n+1)
  Matrix A, B, C;
  std::vector<FieldElement> eta_values;  // 2n+1 values
};

inline bool alignment_identity_holds(const Field& f, const PrecodingSet& g) {
  const Matrix lhs0 = mat_mul(f, g.V1, g.C);
  Matrix lhs(lhs0.rows(), lhs0.cols());
  for (size_t r = 0; r < lhs.rows(); ++r)
    for (size_t c = 0; c < lhs.cols(); ++c) lhs.at(r, c) = f.mul(g.eta_values[r], lhs0.at(r, c));
  const Matrix rhs = mat_mul(f, mat_mul(f, g.V1, g.B), g.A);
  return lhs == rhs;
}

}  // namespace pbna
