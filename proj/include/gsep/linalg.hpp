// Copyright 2026 The gsep Authors
// SPDX-License-Identifier: Apache-2.0

// Small dense-matrix routines used throughout the library. Every matrix in
// this project is at most 16x16, so the implementations favour clarity and
// determinism over asymptotic cleverness: LU with partial pivoting for
// determinants and inverses, cyclic Jacobi for Hermitian eigenvalues.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace gsep {

using cxd = std::complex<double>;

template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;

  DenseMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, T{}) {
    if (rows < 0 || cols < 0) {
      throw std::invalid_argument("DenseMatrix: negative dimension");
    }
  }

  static DenseMatrix identity(int n) {
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  T& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  T operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  DenseMatrix leading_block(int k) const {
    DenseMatrix b(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) b(i, j) = (*this)(i, j);
    return b;
  }

  DenseMatrix transposed() const {
    DenseMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool operator==(const DenseMatrix& other) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

using Mat = DenseMatrix<double>;
using CMat = DenseMatrix<cxd>;

template <class T>
DenseMatrix<T> operator*(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matrix product: inner dimensions differ");
  }
  DenseMatrix<T> c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const T aik = a(i, k);
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

// Determinant via LU with partial pivoting. Takes the matrix by value and
// factors in place; an exactly singular pivot column yields 0.
template <class T>
T lu_determinant(DenseMatrix<T> a) {
  const int n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("lu_determinant: matrix must be square");
  T det{1};
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    double best = std::abs(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double cand = std::abs(a(i, k));
      if (cand > best) {
        best = cand;
        pivot = i;
      }
    }
    if (best == 0.0) return T{0};
    if (pivot != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(pivot, j));
      det = -det;
    }
    det *= a(k, k);
    for (int i = k + 1; i < n; ++i) {
      const T m = a(i, k) / a(k, k);
      for (int j = k + 1; j < n; ++j) a(i, j) -= m * a(k, j);
    }
  }
  return det;
}

// Inverse via Gauss-Jordan with partial pivoting.
inline Mat inverse(Mat a) {
  const int n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("inverse: matrix must be square");
  Mat inv = Mat::identity(n);
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    double best = std::abs(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double cand = std::abs(a(i, k));
      if (cand > best) {
        best = cand;
        pivot = i;
      }
    }
    if (best == 0.0) throw std::invalid_argument("inverse: singular matrix");
    if (pivot != k) {
      for (int j = 0; j < n; ++j) {
        std::swap(a(k, j), a(pivot, j));
        std::swap(inv(k, j), inv(pivot, j));
      }
    }
    const double d = a(k, k);
    for (int j = 0; j < n; ++j) {
      a(k, j) /= d;
      inv(k, j) /= d;
    }
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      const double m = a(i, k);
      if (m == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        a(i, j) -= m * a(k, j);
        inv(i, j) -= m * inv(k, j);
      }
    }
  }
  return inv;
}

// Eigenvalues of a Hermitian matrix by cyclic Jacobi with complex rotations,
// returned in ascending order. The off-diagonal norm bounds the eigenvalue
// error (Weyl), so the exit threshold keeps far more accuracy than any
// tolerance used by callers.
inline std::vector<double> hermitian_eigenvalues(CMat a) {
  const int n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("hermitian_eigenvalues: matrix must be square");

  // Work on the exactly Hermitian average of the input.
  double frob2 = 0.0;
  for (int i = 0; i < n; ++i) {
    a(i, i) = cxd(a(i, i).real(), 0.0);
    frob2 += std::norm(a(i, i));
    for (int j = i + 1; j < n; ++j) {
      const cxd avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
      frob2 += 2.0 * std::norm(avg);
    }
  }
  const double stop = 1e-30 * std::max(1.0, frob2);

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += std::norm(a(i, j));
    if (off < stop) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cxd g = a(p, q);
        const double absg = std::abs(g);
        if (absg < 1e-300) continue;
        const cxd phase = g / absg;
        const double alpha = a(p, p).real();
        const double beta = a(q, q).real();
        const double tau = (beta - alpha) / (2.0 * absg);
        double t;
        if (tau == 0.0) {
          t = 1.0;
        } else {
          t = -((tau > 0.0) ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // Unitary plane rotation U with U(p,p)=U(q,q)=c, U(p,q)=-s*phase,
        // U(q,p)=s*conj(phase); apply a <- U^H a U.
        for (int k = 0; k < n; ++k) {
          const cxd akp = a(k, p);
          const cxd akq = a(k, q);
          a(k, p) = c * akp + s * std::conj(phase) * akq;
          a(k, q) = -s * phase * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const cxd apk = a(p, k);
          const cxd aqk = a(q, k);
          a(p, k) = c * apk + s * phase * aqk;
          a(q, k) = -s * std::conj(phase) * apk + c * aqk;
        }
        a(p, q) = cxd(0.0, 0.0);
        a(q, p) = cxd(0.0, 0.0);
        a(p, p) = cxd(a(p, p).real(), 0.0);
        a(q, q) = cxd(a(q, q).real(), 0.0);
      }
    }
  }

  std::vector<double> eig(n);
  for (int i = 0; i < n; ++i) eig[i] = a(i, i).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

inline std::vector<double> symmetric_eigenvalues(const Mat& a) {
  CMat c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = cxd(a(i, j), 0.0);
  return hermitian_eigenvalues(std::move(c));
}

}  // namespace gsep
