// Copyright 2026 The gsep Authors
// SPDX-License-Identifier: Apache-2.0

// Construction and validation of covariance matrices of multimode Gaussian
// states. Conventions, used everywhere in this library:
//   * quadrature ordering is (q_1..q_n, p_1..p_n);
//   * hbar = 1, so the vacuum covariance is diag(1/2, ..., 1/2);
//   * mode indices in the public API are 1-based, matrix indices 0-based.

#pragma once

#include <map>
#include <string>
#include <utility>

#include "gsep/linalg.hpp"

namespace gsep {

// A pure Gaussian state given by the exponent of its wave function:
// psi(x) ~ exp(-1/2 x^T A x) with A = I - C, where C collects the pairwise
// coupling coefficients. Couplings are stored per unordered mode pair.
class PureStateSpec {
 public:
  explicit PureStateSpec(int modes);

  int modes() const { return n_; }

  // Accepts any finite value; admissibility is the job of validate_spec.
  void set_coupling(int i, int j, double value);

  // 0 when the pair was never set.
  double coupling(int i, int j) const;

  const std::map<std::pair<int, int>, double>& couplings() const { return couplings_; }

 private:
  int n_ = 1;
  std::map<std::pair<int, int>, double> couplings_;
};

// 2n x 2n real symmetric covariance matrix in (q..., p...) ordering.
// Symmetry is enforced exactly on construction; physicality is checked by
// check_physicality where an operation needs it, never silently assumed.
class CovarianceMatrix {
 public:
  CovarianceMatrix(int modes, Mat entries);

  static CovarianceMatrix vacuum(int modes);

  int modes() const { return n_; }
  int dim() const { return 2 * n_; }
  const Mat& entries() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

 private:
  int n_;
  Mat m_;
};

struct Admissibility {
  bool ok = false;
  std::string reason;     // empty when ok
  double det_a = 0.0;     // det(I - C)
  double min_eig_a = 0.0; // smallest eigenvalue of I - C
};

struct Physicality {
  bool ok = false;
  double min_eigenvalue = 0.0;  // of sigma + (i/2) Omega
};

// Exponent matrix A = I - C: unit diagonal, entry (i,j) = -c_ij.
Mat exponent_matrix(const PureStateSpec& spec);

// Admissible iff every |c_ij| < 1 and A is positive definite (eigenvalue
// test, threshold 1e-12). The verdict carries which condition failed.
Admissibility validate_spec(const PureStateSpec& spec);

// Covariance of the pure state: qq block = A^{-1}/2, pp block = A/2,
// qp blocks = 0. Throws validation_error for inadmissible specs.
CovarianceMatrix covariance_from_pure(const PureStateSpec& spec);

// Wave-function normalization constant (det A)^{1/4} / pi^{n/4}.
double normalization_constant(const PureStateSpec& spec);

// Robertson-Schrodinger test: passes iff the minimum eigenvalue of the
// Hermitian matrix sigma + (i/2) Omega is >= -tol. Pure states saturate the
// bound at exactly 0, hence the loose default.
Physicality check_physicality(const CovarianceMatrix& sigma, double tol = 1e-9);

// Symplectic form Omega = [[0, -I], [I, 0]] in (q..., p...) ordering.
Mat symplectic_form(int modes);

// Scaled variant [[0, -L], [L, 0]] with L = diag(lambdas); at L = I this is
// Omega. Used by the regularized determinant.
Mat scaled_symplectic_form(const std::vector<double>& lambdas);

}  // namespace gsep
