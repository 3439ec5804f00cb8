#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "veronese/bigint.hpp"

namespace veronese {

/// Dense row-major matrix over Z.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const;
  IntMatrix transpose() const;

  /// M * v
  IntVector apply(std::span<const BigInt> v) const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

  const std::vector<BigInt>& data() const noexcept { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
BigInt determinant(IntMatrix m);

/// Exact rank by fraction-free elimination.
std::size_t rank(IntMatrix m);

/// Basis (as rows) of the integer kernel {v in Z^cols : m v = 0}. The basis
/// spans a saturated sublattice, i.e. every integer kernel vector is an
/// integer combination of it.
std::vector<IntVector> integer_kernel(const IntMatrix& m);

/// Basis of span(vs) ∩ Z^d for integer vectors vs of common length d.
std::vector<IntVector> saturate(const std::vector<IntVector>& vs);

/// Gram matrix V V^T for the rows of V.
IntMatrix gram(const std::vector<IntVector>& vs);

}  // namespace veronese
