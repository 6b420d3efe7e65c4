#pragma once

#include <array>
#include <cmath>
#include <cstring>

#include "support/error.hpp"

namespace geomom {

// Hard cap on chart dimension. Keeps jets and pointwise geometry fully
// stack-allocated; charts beyond this are rejected at parse time.
inline constexpr int kMaxDim = 8;

// Fixed-capacity vector with runtime size n <= kMaxDim.
struct VecD {
  int n = 0;
  std::array<double, kMaxDim> v{};

  double& operator[](int i) { return v[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }
};

// Fixed-capacity row-major matrix, rows x cols <= kMaxDim x kMaxDim.
struct MatD {
  int rows = 0, cols = 0;
  std::array<double, kMaxDim * kMaxDim> a{};

  double& at(int i, int j) { return a[static_cast<std::size_t>(i * cols + j)]; }
  double at(int i, int j) const { return a[static_cast<std::size_t>(i * cols + j)]; }

  static MatD zero(int r, int c) {
    MatD m;
    m.rows = r;
    m.cols = c;
    return m;
  }
  static MatD identity(int n) {
    MatD m = zero(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }
};

inline double dot(const VecD& a, const VecD& b) {
  double s = 0.0;
  for (int i = 0; i < a.n; ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const VecD& a) { return std::sqrt(dot(a, a)); }

inline VecD column(const MatD& m, int j) {
  VecD c;
  c.n = m.rows;
  for (int i = 0; i < m.rows; ++i) c[i] = m.at(i, j);
  return c;
}

inline VecD row(const MatD& m, int i) {
  VecD r;
  r.n = m.cols;
  for (int j = 0; j < m.cols; ++j) r[j] = m.at(i, j);
  return r;
}

// Determinant by LU with partial pivoting.
inline double det(const MatD& m) {
  const int n = m.rows;
  MatD lu = m;
  double d = 1.0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::fabs(lu.at(k, k));
    for (int i = k + 1; i < n; ++i) {
      double v = std::fabs(lu.at(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) return 0.0;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(lu.at(k, j), lu.at(piv, j));
      d = -d;
    }
    d *= lu.at(k, k);
    for (int i = k + 1; i < n; ++i) {
      double f = lu.at(i, k) / lu.at(k, k);
      for (int j = k + 1; j < n; ++j) lu.at(i, j) -= f * lu.at(k, j);
    }
  }
  return d;
}

// Gauss-Jordan inverse with partial pivoting. Throws on an exactly singular
// matrix; near-singular inputs are the caller's business (the chart layer
// screens those with its own conditioned threshold before inverting).
inline MatD invert(const MatD& m) {
  const int n = m.rows;
  MatD a = m;
  MatD inv = MatD::identity(n);
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::fabs(a.at(k, k));
    for (int i = k + 1; i < n; ++i) {
      double v = std::fabs(a.at(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) throw Error(ErrorCode::internal, "matrix inversion hit a zero pivot");
    if (piv != k) {
      for (int j = 0; j < n; ++j) {
        std::swap(a.at(k, j), a.at(piv, j));
        std::swap(inv.at(k, j), inv.at(piv, j));
      }
    }
    double p = a.at(k, k);
    for (int j = 0; j < n; ++j) {
      a.at(k, j) /= p;
      inv.at(k, j) /= p;
    }
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      double f = a.at(i, k);
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        a.at(i, j) -= f * a.at(k, j);
        inv.at(i, j) -= f * inv.at(k, j);
      }
    }
  }
  return inv;
}

inline MatD matmul(const MatD& a, const MatD& b) {
  MatD c = MatD::zero(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      double f = a.at(i, k);
      for (int j = 0; j < b.cols; ++j) c.at(i, j) += f * b.at(k, j);
    }
  return c;
}

} // namespace geomom
