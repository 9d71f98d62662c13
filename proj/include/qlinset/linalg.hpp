#pragma once

// Dense Gaussian elimination over a FieldCtx (or any of its subfields, which
// are closed under the same operations).

#include <cstddef>
#include <vector>

#include "qlinset/gf.hpp"

namespace qlinset {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(const FieldCtx& ctx, std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  FieldElem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  FieldElem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<FieldElem> data_;
};

Matrix multiply(const FieldCtx& ctx, const Matrix& a, const Matrix& b);
std::size_t rank(const FieldCtx& ctx, Matrix m);
/// Throws NotInvertible for singular or non-square input.
Matrix inverse(const FieldCtx& ctx, const Matrix& m);
/// Solves m * x = rhs for square invertible m.
std::vector<FieldElem> solve(const FieldCtx& ctx, const Matrix& m, const std::vector<FieldElem>& rhs);

}  // namespace qlinset
