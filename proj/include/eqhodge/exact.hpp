#pragma once

// Exact linear algebra over the integers and rationals (GMP-backed).
// These routines are the oracle side of every spectral computation, so
// nothing here touches floating point.

#include <gmpxx.h>

#include <Eigen/Core>
#include <cstddef>
#include <utility>
#include <vector>

namespace eqhodge {

using IntMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;
using RationalVector = std::vector<mpq_class>;

/// Dense row-major rational matrix, used only by the exact routines.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix from_int(const IntMatrix& m) {
    RationalMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        if (m(i, j) != 0) out(i, j) = static_cast<long>(m(i, j));
    return out;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  mpq_class& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const mpq_class& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap(data_[a * cols_ + j], data_[b * cols_ + j]);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpq_class> data_;
};

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
/// Every intermediate entry is a minor of the input, so the divisions are exact.
inline std::size_t rank_bareiss(const IntMatrix& input) {
  const auto rows = static_cast<std::size_t>(input.rows());
  const auto cols = static_cast<std::size_t>(input.cols());
  if (rows == 0 || cols == 0) return 0;
  std::vector<mpz_class> m(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m[i * cols + j] = static_cast<long>(input(i, j));
  auto at = [&](std::size_t i, std::size_t j) -> mpz_class& { return m[i * cols + j]; };

  mpz_class prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && at(pivot, col) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank)
      for (std::size_t j = 0; j < cols; ++j) std::swap(at(pivot, j), at(rank, j));
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        mpz_class v = at(rank, col) * at(i, j) - at(i, col) * at(rank, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        at(i, j) = std::move(v);
      }
      at(i, col) = 0;
    }
    prev = at(rank, col);
    ++rank;
  }
  return rank;
}

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row, in order.
inline std::vector<std::size_t> rref_in_place(RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, row);
    const mpq_class inv = 1 / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j)
      if (m(row, j) != 0) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      const mpq_class factor = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        if (m(row, j) != 0) m(i, j) -= factor * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

/// Null space of an integer matrix. Column `free_columns[i]` of the input
/// corresponds to basis vector i, which has a 1 in that coordinate and 0 in
/// every other free coordinate. Coordinates of any kernel vector in this
/// basis are therefore its entries at the free columns.
struct KernelBasis {
  std::vector<std::size_t> free_columns;
  std::vector<RationalVector> vectors;
};

inline KernelBasis kernel_basis(const IntMatrix& a) {
  const auto cols = static_cast<std::size_t>(a.cols());
  RationalMatrix m = RationalMatrix::from_int(a);
  const auto pivots = rref_in_place(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;

  KernelBasis out;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(cols);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    out.free_columns.push_back(free);
    out.vectors.push_back(std::move(v));
  }
  return out;
}

}  // namespace eqhodge
