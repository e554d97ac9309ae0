#include "kstab/linalg.hpp"

#include "kstab/error.hpp"

namespace kstab {

Matrix identity_matrix(std::size_t n) {
  Matrix m(n, Vector(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Matrix transpose(const Matrix& m) {
  if (m.empty()) return {};
  Matrix t(m[0].size(), Vector(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  }
  return t;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  std::size_t inner = b.size();
  std::size_t cols = b.empty() ? 0 : b[0].size();
  Matrix c(a.size(), Vector(cols));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != inner) throw Error("DimensionMismatch", "matrix product shapes differ");
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

Vector multiply(const Matrix& a, const Vector& x) {
  Vector y(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) y[i] = dot(a[i], x);
  return y;
}

Rational dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw Error("DimensionMismatch", "dot product of vectors of different length");
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Matrix rref(Matrix m, std::vector<std::size_t>* pivots) {
  std::size_t rows = m.size();
  std::size_t cols = rows == 0 ? 0 : m[0].size();
  std::size_t r = 0;
  if (pivots) pivots->clear();
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rational inv = m[r][c].inverse();
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return m;
}

std::size_t rank(const Matrix& m) {
  std::vector<std::size_t> pivots;
  rref(m, &pivots);
  return pivots.size();
}

Rational determinant(Matrix m) {
  std::size_t n = m.size();
  for (const auto& row : m) {
    if (row.size() != n) throw Error("DimensionMismatch", "determinant of a non-square matrix");
  }
  Rational det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c].is_zero()) continue;
      Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

Matrix inverse(const Matrix& m) {
  std::size_t n = m.size();
  Matrix aug(n, Vector(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw Error("DimensionMismatch", "inverse of a non-square matrix");
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = 1;
  }
  std::vector<std::size_t> pivots;
  Matrix r = rref(aug, &pivots);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw Error("SingularMatrix", "matrix is not invertible");
  Matrix inv(n, Vector(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = r[i][n + j];
  }
  return inv;
}

std::optional<Vector> solve(const Matrix& a, const Vector& b) {
  if (a.size() != b.size()) throw Error("DimensionMismatch", "right-hand side length differs from row count");
  std::size_t cols = a.empty() ? 0 : a[0].size();
  Matrix aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  std::vector<std::size_t> pivots;
  Matrix r = rref(aug, &pivots);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  Vector x(cols);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = r[i][cols];
  return x;
}

std::vector<Vector> nullspace(const Matrix& a) {
  std::size_t cols = a.empty() ? 0 : a[0].size();
  std::vector<std::size_t> pivots;
  Matrix r = rref(a, &pivots);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vector x(cols);
    x[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = -r[i][f];
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace kstab
