#pragma once

// Small dense exact linear algebra over the rationals. Dimensions in this
// library are tiny (ambient <= 4), so everything is plain Gaussian
// elimination with exact pivoting on nonzero entries.

#include <optional>
#include <vector>

#include "orthocell/rational.hpp"

namespace orthocell {

using Mat = std::vector<Vec>;  // row-major

inline Mat identity_mat(int n) {
  Mat m(static_cast<size_t>(n), zero_vec(n));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline Vec mat_apply(const Mat& m, const Vec& x) {
  Vec r(m.size());
  for (size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], x);
  return r;
}

inline Mat mat_mul(const Mat& a, const Mat& b) {
  size_t n = a.size(), p = b.empty() ? 0 : b[0].size();
  Mat r(n, Vec(p, Rat(0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < b.size(); ++k)
      if (a[i][k] != 0)
        for (size_t j = 0; j < p; ++j) r[i][j] += a[i][k] * b[k][j];
  return r;
}

// Row echelon form in place; returns pivot column per reduced row.
inline std::vector<int> row_reduce(Mat& m) {
  std::vector<int> pivots;
  size_t rows = m.size();
  size_t cols = rows ? m[0].size() : 0;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[r], m[p]);
    Rat inv = 1 / m[r][c];
    for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  m.resize(r);
  return pivots;
}

inline int rank(Mat m) { return static_cast<int>(row_reduce(m).size()); }

// Basis of {x : m x = 0}.
inline std::vector<Vec> nullspace(Mat m) {
  size_t cols = m.empty() ? 0 : m[0].size();
  std::vector<int> piv = row_reduce(m);
  std::vector<bool> is_pivot(cols, false);
  for (int c : piv) is_pivot[static_cast<size_t>(c)] = true;
  std::vector<Vec> basis;
  for (size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec v(cols, Rat(0));
    v[f] = 1;
    for (size_t r = 0; r < piv.size(); ++r)
      v[static_cast<size_t>(piv[r])] = -m[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Solves a (possibly non-square, possibly underdetermined) system m x = rhs.
// Returns one particular solution, or nullopt if inconsistent.
inline std::optional<Vec> solve(Mat m, Vec rhs) {
  size_t rows = m.size();
  size_t cols = rows ? m[0].size() : 0;
  for (size_t i = 0; i < rows; ++i) m[i].push_back(rhs[i]);
  std::vector<int> piv;
  {
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
      size_t p = r;
      while (p < rows && m[p][c] == 0) ++p;
      if (p == rows) continue;
      std::swap(m[r], m[p]);
      Rat inv = 1 / m[r][c];
      for (size_t j = c; j <= cols; ++j) m[r][j] *= inv;
      for (size_t i = 0; i < rows; ++i) {
        if (i == r || m[i][c] == 0) continue;
        Rat f = m[i][c];
        for (size_t j = c; j <= cols; ++j) m[i][j] -= f * m[r][j];
      }
      piv.push_back(static_cast<int>(c));
      ++r;
    }
    for (size_t i = r; i < rows; ++i)
      if (m[i][cols] != 0) return std::nullopt;
    m.resize(r);
  }
  Vec x(cols, Rat(0));
  for (size_t r = 0; r < piv.size(); ++r)
    x[static_cast<size_t>(piv[r])] = m[r][cols];
  return x;
}

inline std::optional<Mat> inverse(const Mat& a) {
  size_t n = a.size();
  Mat m = a;
  Mat inv = identity_mat(static_cast<int>(n));
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(m[c], m[p]);
    std::swap(inv[c], inv[p]);
    Rat f = 1 / m[c][c];
    for (size_t j = 0; j < n; ++j) {
      m[c][j] *= f;
      inv[c][j] *= f;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c] == 0) continue;
      Rat g = m[i][c];
      for (size_t j = 0; j < n; ++j) {
        m[i][j] -= g * m[c][j];
        inv[i][j] -= g * inv[c][j];
      }
    }
  }
  return inv;
}

inline Rat det(Mat m) {
  size_t n = m.size();
  Rat d = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return Rat(0);
    if (p != c) {
      std::swap(m[c], m[p]);
      d = -d;
    }
    d *= m[c][c];
    Rat inv = 1 / m[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      Rat f = m[i][c] * inv;
      for (size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return d;
}

// Rank of the set of differences p_i - p_0: the dimension of the affine hull.
inline int affine_rank(const std::vector<Point>& pts) {
  if (pts.size() <= 1) return 0;
  Mat diffs;
  for (size_t i = 1; i < pts.size(); ++i) diffs.push_back(sub(pts[i], pts[0]));
  return rank(std::move(diffs));
}

}  // namespace orthocell
