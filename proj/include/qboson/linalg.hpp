#pragma once

#include <optional>
#include <vector>

#include "qboson/scalar.hpp"

namespace qb {

/// Row-major exact matrix over the scalar field.
using Matrix = std::vector<std::vector<Scalar>>;

Matrix mat_zero(size_t rows, size_t cols);
Matrix mat_identity(size_t n);
Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix mat_add(const Matrix& a, const Matrix& b);
Matrix mat_sub(const Matrix& a, const Matrix& b);
bool mat_eq(const Matrix& a, const Matrix& b);

/// In-place reduced row echelon form with deterministic pivoting (first
/// nonzero entry in column order). Returns the pivot columns.
std::vector<size_t> rref(Matrix& m);

size_t mat_rank(Matrix m);

/// Exact inverse; nullopt when singular.
std::optional<Matrix> mat_inverse(const Matrix& m);

/// Basis of the right nullspace, one column vector per basis element.
std::vector<std::vector<Scalar>> nullspace(Matrix m);

/// Column span helper: keeps an RREF'd row basis of the span of added vectors.
class SpanBasis {
 public:
  explicit SpanBasis(size_t dim) : dim_(dim) {}
  /// Returns true if v enlarged the span.
  bool add(std::vector<Scalar> v);
  size_t rank() const { return rows_.size(); }
  size_t dim() const { return dim_; }
  /// Is v inside the current span?
  bool contains(std::vector<Scalar> v) const;
  const std::vector<std::vector<Scalar>>& rows() const { return rows_; }

 private:
  size_t dim_;
  std::vector<std::vector<Scalar>> rows_;   // reduced rows
  std::vector<size_t> pivots_;
};

}  // namespace qb
