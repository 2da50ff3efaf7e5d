#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace armchair {

using cdouble = std::complex<double>;

// Fixed-size complex matrices for the transfer-matrix algebra. The 4x4
// cell matrices are assembled from 2x2 blocks; no dynamic allocation.

struct Mat2 {
  std::array<cdouble, 4> a{};  // row major

  static Mat2 identity() { return Mat2{{1.0, 0.0, 0.0, 1.0}}; }
  static Mat2 zero() { return Mat2{}; }

  cdouble& operator()(int i, int j) { return a[2 * i + j]; }
  const cdouble& operator()(int i, int j) const { return a[2 * i + j]; }

  Mat2 operator*(const Mat2& o) const {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        r(i, j) = (*this)(i, 0) * o(0, j) + (*this)(i, 1) * o(1, j);
    return r;
  }
  Mat2 operator+(const Mat2& o) const {
    Mat2 r;
    for (int i = 0; i < 4; ++i) r.a[i] = a[i] + o.a[i];
    return r;
  }
  Mat2 operator-(const Mat2& o) const {
    Mat2 r;
    for (int i = 0; i < 4; ++i) r.a[i] = a[i] - o.a[i];
    return r;
  }
  Mat2 operator*(cdouble c) const {
    Mat2 r;
    for (int i = 0; i < 4; ++i) r.a[i] = a[i] * c;
    return r;
  }
  cdouble trace() const { return a[0] + a[3]; }
  cdouble det() const { return a[0] * a[3] - a[1] * a[2]; }
};

inline Mat2 operator*(cdouble c, const Mat2& m) { return m * c; }

struct Mat4 {
  std::array<cdouble, 16> a{};

  static Mat4 identity() {
    Mat4 r;
    for (int i = 0; i < 4; ++i) r(i, i) = 1.0;
    return r;
  }
  static Mat4 from_blocks(const Mat2& b11, const Mat2& b12, const Mat2& b21,
                          const Mat2& b22) {
    Mat4 r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        r(i, j) = b11(i, j);
        r(i, j + 2) = b12(i, j);
        r(i + 2, j) = b21(i, j);
        r(i + 2, j + 2) = b22(i, j);
      }
    return r;
  }

  cdouble& operator()(int i, int j) { return a[4 * i + j]; }
  const cdouble& operator()(int i, int j) const { return a[4 * i + j]; }

  Mat2 block(int bi, int bj) const {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r(i, j) = (*this)(2 * bi + i, 2 * bj + j);
    return r;
  }

  Mat4 operator*(const Mat4& o) const {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        cdouble s = 0.0;
        for (int k = 0; k < 4; ++k) s += (*this)(i, k) * o(k, j);
        r(i, j) = s;
      }
    return r;
  }
  Mat4 operator-(const Mat4& o) const {
    Mat4 r;
    for (int i = 0; i < 16; ++i) r.a[i] = a[i] - o.a[i];
    return r;
  }
  Mat4 operator+(const Mat4& o) const {
    Mat4 r;
    for (int i = 0; i < 16; ++i) r.a[i] = a[i] + o.a[i];
    return r;
  }

  Mat4 transpose() const {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) r(i, j) = (*this)(j, i);
    return r;
  }

  cdouble trace() const { return a[0] + a[5] + a[10] + a[15]; }

  // LU with partial pivoting; stable for the large-entry hyperbolic regime.
  cdouble det() const {
    std::array<cdouble, 16> m = a;
    cdouble d = 1.0;
    for (int c = 0; c < 4; ++c) {
      int piv = c;
      double best = std::abs(m[4 * c + c]);
      for (int r = c + 1; r < 4; ++r) {
        double v = std::abs(m[4 * r + c]);
        if (v > best) {
          best = v;
          piv = r;
        }
      }
      if (best == 0.0) return 0.0;
      if (piv != c) {
        for (int j = 0; j < 4; ++j) std::swap(m[4 * piv + j], m[4 * c + j]);
        d = -d;
      }
      d *= m[4 * c + c];
      for (int r = c + 1; r < 4; ++r) {
        cdouble f = m[4 * r + c] / m[4 * c + c];
        for (int j = c; j < 4; ++j) m[4 * r + j] -= f * m[4 * c + j];
      }
    }
    return d;
  }

  double max_abs() const {
    double r = 0.0;
    for (const auto& v : a) r = std::max(r, std::abs(v));
    return r;
  }
};

// Residual of |x - y| relative to the magnitude of the operands, floored at
// an absolute interpretation for small values.
inline double scaled_residual(cdouble x, cdouble y) {
  return std::abs(x - y) / std::max({1.0, std::abs(x), std::abs(y)});
}

}  // namespace armchair
