#include "qboson/linalg.hpp"

#include <cassert>

namespace qb {

Matrix mat_zero(size_t rows, size_t cols) {
  return Matrix(rows, std::vector<Scalar>(cols));
}

Matrix mat_identity(size_t n) {
  Matrix m = mat_zero(n, n);
  for (size_t i = 0; i < n; ++i) m[i][i] = Scalar(1);
  return m;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  if (a.empty() || b.empty()) return Matrix(a.size());
  size_t n = a.size(), k = b.size(), m = b[0].size();
  assert(a[0].size() == k);
  Matrix r = mat_zero(n, m);
  for (size_t i = 0; i < n; ++i)
    for (size_t t = 0; t < k; ++t) {
      if (a[i][t].is_zero()) continue;
      for (size_t j = 0; j < m; ++j) {
        if (b[t][j].is_zero()) continue;
        r[i][j] += a[i][t] * b[t][j];
      }
    }
  return r;
}

Matrix mat_add(const Matrix& a, const Matrix& b) {
  Matrix r = a;
  for (size_t i = 0; i < r.size(); ++i)
    for (size_t j = 0; j < r[i].size(); ++j) r[i][j] += b[i][j];
  return r;
}

Matrix mat_sub(const Matrix& a, const Matrix& b) {
  Matrix r = a;
  for (size_t i = 0; i < r.size(); ++i)
    for (size_t j = 0; j < r[i].size(); ++j) r[i][j] -= b[i][j];
  return r;
}

bool mat_eq(const Matrix& a, const Matrix& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

std::vector<size_t> rref(Matrix& m) {
  std::vector<size_t> pivots;
  if (m.empty()) return pivots;
  size_t rows = m.size(), cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = rows;
    for (size_t i = r; i < rows; ++i)
      if (!m[i][c].is_zero()) {
        sel = i;
        break;
      }
    if (sel == rows) continue;
    std::swap(m[r], m[sel]);
    Scalar inv = m[r][c].inverse();
    for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Scalar f = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

size_t mat_rank(Matrix m) { return rref(m).size(); }

std::optional<Matrix> mat_inverse(const Matrix& m) {
  size_t n = m.size();
  Matrix aug = mat_zero(n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = Scalar(1);
  }
  auto pivots = rref(aug);
  if (pivots.size() != n || (n > 0 && pivots.back() != n - 1)) return std::nullopt;
  Matrix inv = mat_zero(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

std::vector<std::vector<Scalar>> nullspace(Matrix m) {
  if (m.empty()) return {};
  size_t cols = m[0].size();
  auto pivots = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (size_t free_c = 0; free_c < cols; ++free_c) {
    if (is_pivot[free_c]) continue;
    std::vector<Scalar> v(cols);
    v[free_c] = Scalar(1);
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free_c];
    basis.push_back(std::move(v));
  }
  return basis;
}

bool SpanBasis::add(std::vector<Scalar> v) {
  // reduce against existing rows
  for (size_t r = 0; r < rows_.size(); ++r) {
    const Scalar& c = v[pivots_[r]];
    if (!c.is_zero()) {
      Scalar f = c;
      for (size_t j = 0; j < dim_; ++j) v[j] -= f * rows_[r][j];
    }
  }
  size_t p = dim_;
  for (size_t j = 0; j < dim_; ++j)
    if (!v[j].is_zero()) {
      p = j;
      break;
    }
  if (p == dim_) return false;
  Scalar inv = v[p].inverse();
  for (size_t j = 0; j < dim_; ++j) v[j] *= inv;
  // back-substitute into earlier rows
  for (size_t r = 0; r < rows_.size(); ++r) {
    Scalar f = rows_[r][p];
    if (!f.is_zero())
      for (size_t j = 0; j < dim_; ++j) rows_[r][j] -= f * v[j];
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(p);
  return true;
}

bool SpanBasis::contains(std::vector<Scalar> v) const {
  for (size_t r = 0; r < rows_.size(); ++r) {
    const Scalar& c = v[pivots_[r]];
    if (!c.is_zero()) {
      Scalar f = c;
      for (size_t j = 0; j < dim_; ++j) v[j] -= f * rows_[r][j];
    }
  }
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

}  // namespace qb
