#pragma once

#include "g2glue/rational.hpp"

#include <cassert>
#include <utility>
#include <vector>

namespace g2glue {

// Dense exact-rational matrix.  Small sizes only (n <= ~25 here), so plain
// Gaussian elimination over Q is fine.
struct QMat {
  int rows = 0, cols = 0;
  std::vector<std::vector<Rational>> a;

  QMat() = default;
  QMat(int r, int c) : rows(r), cols(c), a(r, std::vector<Rational>(c)) {}

  static QMat identity(int n) {
    QMat m(n, n);
    for (int i = 0; i < n; ++i) m.a[i][i] = 1;
    return m;
  }

  Rational& operator()(int i, int j) { return a[i][j]; }
  const Rational& operator()(int i, int j) const { return a[i][j]; }

  bool operator==(const QMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

  QMat operator*(const QMat& o) const {
    assert(cols == o.rows);
    QMat r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        if (a[i][k] == 0) continue;
        for (int j = 0; j < o.cols; ++j) r.a[i][j] += a[i][k] * o.a[k][j];
      }
    return r;
  }

  QMat operator+(const QMat& o) const {
    QMat r(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r.a[i][j] = a[i][j] + o.a[i][j];
    return r;
  }

  QMat operator-(const QMat& o) const {
    QMat r(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r.a[i][j] = a[i][j] - o.a[i][j];
    return r;
  }

  QMat operator*(const Rational& s) const {
    QMat r(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r.a[i][j] = a[i][j] * s;
    return r;
  }

  QMat transpose() const {
    QMat r(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r.a[j][i] = a[i][j];
    return r;
  }

  bool is_zero() const {
    for (auto& row : a)
      for (auto& x : row)
        if (x != 0) return false;
    return true;
  }

  std::vector<Rational> apply(const std::vector<Rational>& v) const {
    assert((int)v.size() == cols);
    std::vector<Rational> r(rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r[i] += a[i][j] * v[j];
    return r;
  }
};

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<int> rref(QMat& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int p = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.a[i][c] != 0) { p = i; break; }
    if (p < 0) continue;
    std::swap(m.a[p], m.a[r]);
    Rational inv = Rational(1) / m.a[r][c];
    for (int j = 0; j < m.cols; ++j) m.a[r][j] *= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m.a[i][c] == 0) continue;
      Rational f = m.a[i][c];
      for (int j = 0; j < m.cols; ++j) m.a[i][j] -= f * m.a[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline int rank(QMat m) { return (int)rref(m).size(); }

// Basis of the right kernel (columns as vectors).
inline std::vector<std::vector<Rational>> kernel_basis(QMat m) {
  auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (int c = 0; c < m.cols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Rational> v(m.cols);
    v[c] = 1;
    for (int r = 0; r < (int)pivots.size(); ++r) v[pivots[r]] = -m.a[r][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline Rational determinant(QMat m) {
  assert(m.rows == m.cols);
  Rational det = 1;
  for (int c = 0; c < m.cols; ++c) {
    int p = -1;
    for (int i = c; i < m.rows; ++i)
      if (m.a[i][c] != 0) { p = i; break; }
    if (p < 0) return 0;
    if (p != c) { std::swap(m.a[p], m.a[c]); det = -det; }
    det *= m.a[c][c];
    Rational inv = Rational(1) / m.a[c][c];
    for (int i = c + 1; i < m.rows; ++i) {
      if (m.a[i][c] == 0) continue;
      Rational f = m.a[i][c] * inv;
      for (int j = c; j < m.cols; ++j) m.a[i][j] -= f * m.a[c][j];
    }
  }
  return det;
}

inline QMat inverse(const QMat& m) {
  assert(m.rows == m.cols);
  int n = m.rows;
  QMat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.a[i][j] = m.a[i][j];
    aug.a[i][n + i] = 1;
  }
  auto pivots = rref(aug);
  if ((int)pivots.size() != n) throw std::domain_error("singular matrix");
  QMat r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.a[i][j] = aug.a[i][n + j];
  return r;
}

// Signature (p, q) of a symmetric matrix by exact congruence reduction
// (symmetric Gaussian elimination; rank defect ignored).
inline std::pair<int, int> signature(QMat m) {
  assert(m.rows == m.cols);
  int n = m.rows, pos = 0, neg = 0;
  for (int c = 0; c < n; ++c) {
    if (m.a[c][c] == 0) {
      int p = -1;
      for (int i = c + 1; i < n; ++i)
        if (m.a[i][i] != 0) { p = i; break; }
      if (p >= 0) {
        std::swap(m.a[p], m.a[c]);
        for (auto& row : m.a) std::swap(row[p], row[c]);
      } else {
        // all remaining diagonal entries are 0: find off-diagonal entry and
        // symmetrize with a row+column addition
        int i0 = -1, j0 = -1;
        for (int i = c; i < n && i0 < 0; ++i)
          for (int j = i + 1; j < n; ++j)
            if (m.a[i][j] != 0) { i0 = i; j0 = j; break; }
        if (i0 < 0) break;  // zero block
        for (int k = 0; k < n; ++k) m.a[i0][k] += m.a[j0][k];
        for (int k = 0; k < n; ++k) m.a[k][i0] += m.a[k][j0];
        if (i0 != c) {
          std::swap(m.a[i0], m.a[c]);
          for (auto& row : m.a) std::swap(row[i0], row[c]);
        }
      }
    }
    if (m.a[c][c] == 0) { --c; continue; }
    if (m.a[c][c] > 0) ++pos; else ++neg;
    Rational inv = Rational(1) / m.a[c][c];
    for (int i = c + 1; i < n; ++i) {
      if (m.a[i][c] == 0) continue;
      Rational f = m.a[i][c] * inv;
      for (int j = c; j < n; ++j) m.a[i][j] -= f * m.a[c][j];
      for (int j = c; j < n; ++j) m.a[j][i] -= f * m.a[j][c];
    }
  }
  return {pos, neg};
}

// ---------------------------------------------------------------------------
// Integer matrices: Smith and Hermite normal forms for lattice computations.

struct ZMat {
  int rows = 0, cols = 0;
  std::vector<std::vector<Integer>> a;

  ZMat() = default;
  ZMat(int r, int c) : rows(r), cols(c), a(r, std::vector<Integer>(c)) {}

  static ZMat identity(int n) {
    ZMat m(n, n);
    for (int i = 0; i < n; ++i) m.a[i][i] = 1;
    return m;
  }

  Integer& operator()(int i, int j) { return a[i][j]; }
  const Integer& operator()(int i, int j) const { return a[i][j]; }
  bool operator==(const ZMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
  bool operator<(const ZMat& o) const { return a < o.a; }

  ZMat operator*(const ZMat& o) const {
    assert(cols == o.rows);
    ZMat r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        if (a[i][k] == 0) continue;
        for (int j = 0; j < o.cols; ++j) r.a[i][j] += a[i][k] * o.a[k][j];
      }
    return r;
  }
};

struct SmithResult {
  ZMat d;       // diagonal form, d = u * m * v
  ZMat u, v;    // unimodular
  int rank = 0;
};

// Smith normal form with transforms.
inline SmithResult smith_normal_form(ZMat m) {
  SmithResult res;
  int R = m.rows, C = m.cols;
  res.u = ZMat::identity(R);
  res.v = ZMat::identity(C);
  int t = 0;
  auto row_op = [&](int i, int j, const Integer& f) {  // row i -= f*row j
    for (int k = 0; k < C; ++k) m.a[i][k] -= f * m.a[j][k];
    for (int k = 0; k < R; ++k) res.u.a[i][k] -= f * res.u.a[j][k];
  };
  auto col_op = [&](int i, int j, const Integer& f) {  // col i -= f*col j
    for (int k = 0; k < R; ++k) m.a[k][i] -= f * m.a[k][j];
    for (int k = 0; k < C; ++k) res.v.a[k][i] -= f * res.v.a[k][j];
  };
  auto row_swap = [&](int i, int j) { std::swap(m.a[i], m.a[j]); std::swap(res.u.a[i], res.u.a[j]); };
  auto col_swap = [&](int i, int j) {
    for (int k = 0; k < R; ++k) std::swap(m.a[k][i], m.a[k][j]);
    for (int k = 0; k < C; ++k) std::swap(res.v.a[k][i], res.v.a[k][j]);
  };
  while (t < R && t < C) {
    // find smallest nonzero entry in the remaining block
    int pi = -1, pj = -1;
    for (int i = t; i < R; ++i)
      for (int j = t; j < C; ++j)
        if (m.a[i][j] != 0 && (pi < 0 || abs(m.a[i][j]) < abs(m.a[pi][pj]))) { pi = i; pj = j; }
    if (pi < 0) break;
    row_swap(t, pi);
    col_swap(t, pj);
    bool clean = true;
    for (int i = t + 1; i < R; ++i)
      if (m.a[i][t] != 0) { row_op(i, t, m.a[i][t] / m.a[t][t]); if (m.a[i][t] != 0) clean = false; }
    for (int j = t + 1; j < C; ++j)
      if (m.a[t][j] != 0) { col_op(j, t, m.a[t][j] / m.a[t][t]); if (m.a[t][j] != 0) clean = false; }
    if (!clean) continue;  // remainders left; repeat with smaller pivot
    if (m.a[t][t] < 0) {
      for (int k = 0; k < C; ++k) m.a[t][k] = -m.a[t][k];
      for (int k = 0; k < R; ++k) res.u.a[t][k] = -res.u.a[t][k];
    }
    ++t;
  }
  // enforce the divisibility chain d1 | d2 | ...
  for (int i = 0; i + 1 < t; ++i) {
    if (m.a[i + 1][i + 1] % m.a[i][i] != 0) {
      for (int k = 0; k < R; ++k) m.a[k][i] += m.a[k][i + 1];
      for (int k = 0; k < C; ++k) res.v.a[k][i] += res.v.a[k][i + 1];
      SmithResult inner = smith_normal_form(m);
      inner.u = inner.u * res.u;
      inner.v = res.v * inner.v;
      return inner;
    }
  }
  res.d = m;
  res.rank = t;
  return res;
}

// Column-style Hermite normal form of the lattice spanned by the columns.
// Returns a canonical basis matrix (cols = rank), lower-triangular-ish with
// positive pivots and reduced entries above them.
inline ZMat hnf_column_basis(ZMat m) {
  int R = m.rows, C = m.cols;
  int col = 0;
  for (int row = 0; row < R && col < C; ++row) {
    // gcd sweep in this row over columns >= col
    bool have_pivot = false;
    while (true) {
      int p = -1;
      for (int j = col; j < C; ++j)
        if (m.a[row][j] != 0 && (p < 0 || abs(m.a[row][j]) < abs(m.a[row][p]))) p = j;
      if (p < 0) break;
      bool done = true;
      for (int j = col; j < C; ++j) {
        if (j == p || m.a[row][j] == 0) continue;
        Integer f = m.a[row][j] / m.a[row][p];
        for (int k = 0; k < R; ++k) m.a[k][j] -= f * m.a[k][p];
        if (m.a[row][j] != 0) done = false;
      }
      if (done) {
        for (int k = 0; k < R; ++k) std::swap(m.a[k][col], m.a[k][p]);
        have_pivot = true;
        break;
      }
    }
    if (!have_pivot) continue;
    if (m.a[row][col] < 0)
      for (int k = 0; k < R; ++k) m.a[k][col] = -m.a[k][col];
    // reduce entries of earlier columns in this row into [0, pivot)
    Integer piv = m.a[row][col];
    for (int j = 0; j < col; ++j) {
      Integer q = m.a[row][j] / piv;
      if (m.a[row][j] - q * piv < 0) q -= 1;
      if (q != 0)
        for (int k = 0; k < R; ++k) m.a[k][j] -= q * m.a[k][col];
    }
    ++col;
  }
  ZMat out(R, col);
  for (int i = 0; i < R; ++i)
    for (int j = 0; j < col; ++j) out.a[i][j] = m.a[i][j];
  // canonical order: pivot columns appear in pivot-row order already
  return out;
}

inline QMat to_q(const ZMat& m) {
  QMat r(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) r.a[i][j] = Rational(m.a[i][j]);
  return r;
}

// Basis of {w in Z^rows : w^T * m = 0}, i.e. the left integer kernel,
// saturated (a Z-basis of the full lattice of integral solutions).
inline std::vector<std::vector<Integer>> left_integer_kernel(const ZMat& m) {
  // SNF: d = u m v; w^T m = 0  <=>  (w^T u^{-1}) d v^{-1} = 0
  // rows of u beyond the rank give the kernel basis: u_i m = d_i v^{-1} = 0.
  auto s = smith_normal_form(m);
  std::vector<std::vector<Integer>> out;
  for (int i = s.rank; i < m.rows; ++i) out.push_back(s.u.a[i]);
  return out;
}

}  // namespace g2glue
