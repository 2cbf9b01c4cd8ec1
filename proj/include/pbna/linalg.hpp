#pragma once

#include <optional>
#include <vector>

#include "pbna/errors.hpp"
#include "pbna/field.hpp"

namespace pbna {

// Dense row-major matrix over GF(2^m).
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Matrix identity(const Field& f, size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  FieldElement& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
  FieldElement at(size_t r, size_t c) const { return a_[r * cols_ + c]; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<FieldElement> a_;
};

inline Matrix mat_mul(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw internal_error("matrix dimension mismatch in mat_mul");
  Matrix r(a.rows(), b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t k = 0; k < a.cols(); ++k) {
      const FieldElement aik = a.at(i, k);
      if (aik == f.zero()) continue;
      for (size_t j = 0; j < b.cols(); ++j)
        r.at(i, j) = Field::add(r.at(i, j), f.mul(aik, b.at(k, j)));
    }
  return r;
}

inline Matrix mat_add(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw internal_error("matrix dimension mismatch in mat_add");
  Matrix r(a.rows(), a.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) r.at(i, j) = Field::add(a.at(i, j), b.at(i, j));
  return r;
}

inline std::vector<FieldElement> mat_vec(const Field& f, const Matrix& a,
                                         const std::vector<FieldElement>& x) {
  if (a.cols() != x.size()) throw internal_error("matrix dimension mismatch in mat_vec");
  std::vector<FieldElement> y(a.rows());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) y[i] = Field::add(y[i], f.mul(a.at(i, j), x[j]));
  return y;
}

struct SolveOutcome {
  size_t rank = 0;
  std::optional<std::vector<FieldElement>> solution;  // present iff uniquely solvable
};

// Gaussian elimination over GF(2^m). Returns the row-reduced rank of M; when a
// right-hand side is given and the system M y = b has a unique solution, that
// solution too. A singular or inconsistent system yields no solution (the
// caller's "decode failure" signal).
inline SolveOutcome rank_and_solve(const Field& f, Matrix m,
                                   std::optional<std::vector<FieldElement>> b = std::nullopt) {
  if (b && b->size() != m.rows()) throw internal_error("rhs length mismatch in rank_and_solve");
  const size_t rows = m.rows(), cols = m.cols();
  std::vector<FieldElement> rhs = b.value_or(std::vector<FieldElement>{});
  size_t rank = 0;
  std::vector<size_t> pivot_col;
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t piv = rank;
    while (piv < rows && m.at(piv, col) == f.zero()) ++piv;
    if (piv == rows) continue;
    for (size_t j = 0; j < cols; ++j) std::swap(m.at(rank, j), m.at(piv, j));
    if (b) std::swap(rhs[rank], rhs[piv]);
    const FieldElement inv = f.inv(m.at(rank, col));
    for (size_t j = col; j < cols; ++j) m.at(rank, j) = f.mul(m.at(rank, j), inv);
    if (b) rhs[rank] = f.mul(rhs[rank], inv);
    for (size_t r = 0; r < rows; ++r) {
      if (r == rank || m.at(r, col) == f.zero()) continue;
      const FieldElement factor = m.at(r, col);
      for (size_t j = col; j < cols; ++j)
        m.at(r, j) = Field::add(m.at(r, j), f.mul(factor, m.at(rank, j)));
      if (b) rhs[r] = Field::add(rhs[r], f.mul(factor, rhs[rank]));
    }
    pivot_col.push_back(col);
    ++rank;
  }
  SolveOutcome out{rank, std::nullopt};
  if (b && rank == cols) {
    bool consistent = true;
    for (size_t r = rank; r < rows; ++r)
      if (rhs[r] != f.zero()) consistent = false;
    if (consistent) {
      std::vector<FieldElement> y(cols);
      for (size_t k = 0; k < rank; ++k) y[pivot_col[k]] = rhs[k];
      out.solution = std::move(y);
    }
  }
  return out;
}

inline size_t mat_rank(const Field& f, const Matrix& m) { return rank_and_solve(f, m).rank; }

}  // namespace pbna
