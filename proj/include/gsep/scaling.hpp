// Copyright 2026 The gsep Authors
// SPDX-License-Identifier: Apache-2.0

// The partial scaling separability criterion. Scaling momentum p_i by
// lambda_i in [-1, 1] maps a separable state's Wigner function to an
// admissible one, so any negative leading principal minor of order n+1..2n
// of sigma_lambda + (i/2) Omega witnesses entanglement. lambda = all -1 on a
// subset of modes is the familiar partial transpose test; lambda = all ones
// is the plain uncertainty relation.

#pragma once

#include <optional>
#include <vector>

#include "gsep/gaussian.hpp"

namespace gsep {

// A minor below -kWitnessTol counts as a witness; values in [-tol, 0) are
// treated as numerical zero.
inline constexpr double kWitnessTol = 1e-9;

// Imaginary residue allowed on a determinant that must be real.
inline constexpr double kImagResidueTol = 1e-9;

class ScalingVector {
 public:
  explicit ScalingVector(std::vector<double> values);

  static ScalingVector ones(int n);
  static ScalingVector from_pattern(const std::vector<int>& signs);

  int size() const { return static_cast<int>(v_.size()); }
  double operator[](int i) const { return v_[static_cast<size_t>(i)]; }
  const std::vector<double>& values() const { return v_; }
  bool has_zero() const;

 private:
  std::vector<double> v_;
};

enum class Verdict { separable, not_witnessed, entangled_witnessed };

struct MinorReport {
  ScalingVector lambda;
  // Shifted leading principal minors of orders n+1 .. 2n; the order-(n+k)
  // value depends only on lambda_1..lambda_k. Entries are NaN when produced
  // through the lenient path of scan-opt at a lambda with zero coordinates.
  std::vector<double> minors;
  bool witnessed = false;
  // Set by ppt_test for two modes, where the test is necessary and
  // sufficient for separability.
  std::optional<Verdict> two_mode_verdict;
};

// Partial scaling of the covariance matrix: qq block unchanged, qp entry
// (i,j) divided by lambda_j, pp entry (i,j) divided by lambda_i lambda_j.
// Every lambda_i must be nonzero.
CovarianceMatrix scale_covariance(const CovarianceMatrix& sigma, const ScalingVector& lambda);

// det(sigma_lambda + (i/2) Omega), real up to the asserted residue.
double shifted_determinant(const CovarianceMatrix& sigma, const ScalingVector& lambda);

// det(sigma + (i/2) Omega_Lambda) = (prod lambda_i^2) * shifted_determinant.
// Finite and continuous on the whole closed box including zeros, with the
// same sign as the raw determinant wherever that one is defined.
double regularized_determinant(const CovarianceMatrix& sigma, const ScalingVector& lambda);

// Leading principal minor of the given order in [n+1, 2n]. Only
// lambda_1..lambda_{order-n} enter; those must be nonzero.
double shifted_minor(const CovarianceMatrix& sigma, const ScalingVector& lambda, int order);

// All n minors of orders n+1..2n; witnessed iff any minor < -tol.
MinorReport minor_report(const CovarianceMatrix& sigma, const ScalingVector& lambda,
                         double tol = kWitnessTol);

// Momentum sign-flip test: minor_report at lambda = pattern (entries +-1).
// For two modes the report additionally carries a separability verdict.
MinorReport ppt_test(const CovarianceMatrix& sigma, const std::vector<int>& pattern,
                     double tol = kWitnessTol);

}  // namespace gsep
