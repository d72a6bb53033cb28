#include "achcr/linalg.hpp"

namespace achcr {

Mat identity_matrix(int n) {
  Mat m(n, Vec(n));
  for (int i = 0; i < n; ++i) m[i][i] = Scalar(1);
  return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  const size_t r = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
  Mat out(r, Vec(c));
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < k; ++j) {
      if (a[i][j].is_zero()) continue;
      for (size_t l = 0; l < c; ++l) out[i][l] += a[i][j] * b[j][l];
    }
  return out;
}

Vec mat_apply(const Mat& a, const Vec& v) {
  Vec out(a.size());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j)
      if (!a[i][j].is_zero()) out[i] += a[i][j] * v[j];
  return out;
}

std::optional<Mat> try_invert(Mat a) {
  const size_t n = a.size();
  Mat inv = identity_matrix(static_cast<int>(n));
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    Scalar d = a[col][col];
    for (size_t j = 0; j < n; ++j) {
      a[col][j] /= d;
      inv[col][j] /= d;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col].is_zero()) continue;
      Scalar f = a[i][col];
      for (size_t j = 0; j < n; ++j) {
        a[i][j] -= f * a[col][j];
        inv[i][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

std::optional<Vec> solve_unique(Mat a, Vec b) {
  const size_t rows = a.size();
  const size_t cols = rows ? a[0].size() : 0;
  size_t rank = 0;
  std::vector<size_t> pivot_col;
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t piv = rank;
    while (piv < rows && a[piv][col].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    std::swap(b[piv], b[rank]);
    Scalar d = a[rank][col];
    for (size_t j = col; j < cols; ++j) a[rank][j] /= d;
    b[rank] /= d;
    for (size_t i = 0; i < rows; ++i) {
      if (i == rank || a[i][col].is_zero()) continue;
      Scalar f = a[i][col];
      for (size_t j = col; j < cols; ++j) a[i][j] -= f * a[rank][j];
      b[i] -= f * b[rank];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  if (rank < cols) return std::nullopt;  // underdetermined
  for (size_t i = rank; i < rows; ++i)
    if (!b[i].is_zero()) return std::nullopt;  // inconsistent
  Vec x(cols);
  for (size_t i = 0; i < rank; ++i) x[pivot_col[i]] = b[i];
  return x;
}

Scalar determinant(Mat a) {
  const size_t n = a.size();
  Scalar det(1);
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) return Scalar(0);
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    Scalar d = a[col][col];
    for (size_t i = col + 1; i < n; ++i) {
      if (a[i][col].is_zero()) continue;
      Scalar f = a[i][col] / d;
      for (size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
    }
  }
  return det;
}

}  // namespace achcr
