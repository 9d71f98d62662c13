#include "qlinset/linalg.hpp"

#include <utility>

namespace qlinset {

Matrix Matrix::identity(const FieldCtx& ctx, std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = ctx.one();
  return m;
}

Matrix multiply(const FieldCtx& ctx, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::InvalidArgument, "matrix shape mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      FieldElem acc = ctx.zero();
      for (std::size_t k = 0; k < a.cols(); ++k) acc = ctx.add(acc, ctx.mul(a(i, k), b(k, j)));
      out(i, j) = acc;
    }
  }
  return out;
}

namespace {

// Row-reduces m in place (reduced echelon form) and returns the rank. When
// `aug` is non-null the same row operations are applied to it.
std::size_t reduce(const FieldCtx& ctx, Matrix& m, Matrix* aug) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < m.rows() && m(pivot, c).is_zero()) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != r) {
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(pivot, k), m(r, k));
      if (aug)
        for (std::size_t k = 0; k < aug->cols(); ++k) std::swap((*aug)(pivot, k), (*aug)(r, k));
    }
    FieldElem inv = ctx.inv(m(r, c));
    for (std::size_t k = 0; k < m.cols(); ++k) m(r, k) = ctx.mul(m(r, k), inv);
    if (aug)
      for (std::size_t k = 0; k < aug->cols(); ++k) (*aug)(r, k) = ctx.mul((*aug)(r, k), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      FieldElem factor = ctx.neg(m(i, c));
      for (std::size_t k = 0; k < m.cols(); ++k)
        m(i, k) = ctx.add(m(i, k), ctx.mul(factor, m(r, k)));
      if (aug)
        for (std::size_t k = 0; k < aug->cols(); ++k)
          (*aug)(i, k) = ctx.add((*aug)(i, k), ctx.mul(factor, (*aug)(r, k)));
    }
    ++r;
  }
  return r;
}

}  // namespace

std::size_t rank(const FieldCtx& ctx, Matrix m) { return reduce(ctx, m, nullptr); }

Matrix inverse(const FieldCtx& ctx, const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::NotInvertible, "non-square matrix");
  Matrix work = m;
  Matrix out = Matrix::identity(ctx, m.rows());
  if (reduce(ctx, work, &out) != m.rows()) throw Error(ErrorKind::NotInvertible, "singular matrix");
  return out;
}

std::vector<FieldElem> solve(const FieldCtx& ctx, const Matrix& m, const std::vector<FieldElem>& rhs) {
  if (m.rows() != m.cols() || rhs.size() != m.rows())
    throw Error(ErrorKind::InvalidArgument, "solve: shape mismatch");
  Matrix work = m;
  Matrix b(rhs.size(), 1);
  for (std::size_t i = 0; i < rhs.size(); ++i) b(i, 0) = rhs[i];
  if (reduce(ctx, work, &b) != m.rows()) throw Error(ErrorKind::NotInvertible, "singular system");
  std::vector<FieldElem> x(rhs.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) x[i] = b(i, 0);
  return x;
}

}  // namespace qlinset
