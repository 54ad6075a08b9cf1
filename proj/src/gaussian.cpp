// Copyright 2026 The gsep Authors
// SPDX-License-Identifier: Apache-2.0

#include "gsep/gaussian.hpp"

#include <cmath>
#include <sstream>

#include "gsep/errors.hpp"

namespace gsep {

namespace {

constexpr double kPosDefThreshold = 1e-12;

std::pair<int, int> normalized_pair(int i, int j, int n) {
  if (i < 1 || j < 1 || i > n || j > n || i == j) {
    std::ostringstream msg;
    msg << "coupling pair (" << i << "," << j << ") out of range for " << n << " modes";
    throw std::invalid_argument(msg.str());
  }
  return {std::min(i, j), std::max(i, j)};
}

}  // namespace

PureStateSpec::PureStateSpec(int modes) : n_(modes) {
  if (modes < 1) throw std::invalid_argument("PureStateSpec: mode count must be >= 1");
}

void PureStateSpec::set_coupling(int i, int j, double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("coupling value must be finite");
  couplings_[normalized_pair(i, j, n_)] = value;
}

double PureStateSpec::coupling(int i, int j) const {
  const auto it = couplings_.find(normalized_pair(i, j, n_));
  return it == couplings_.end() ? 0.0 : it->second;
}

CovarianceMatrix::CovarianceMatrix(int modes, Mat entries) : n_(modes), m_(std::move(entries)) {
  if (modes < 1) throw std::invalid_argument("CovarianceMatrix: mode count must be >= 1");
  if (m_.rows() != 2 * n_ || m_.cols() != 2 * n_) {
    std::ostringstream msg;
    msg << "CovarianceMatrix: expected " << 2 * n_ << "x" << 2 * n_ << " entries, got "
        << m_.rows() << "x" << m_.cols();
    throw dimension_error(msg.str());
  }
  for (int i = 0; i < m_.rows(); ++i) {
    for (int j = i + 1; j < m_.cols(); ++j) {
      if (m_(i, j) != m_(j, i)) {
        std::ostringstream msg;
        msg << "CovarianceMatrix: entries (" << i << "," << j << ") and (" << j << "," << i
            << ") differ";
        throw validation_error(msg.str());
      }
    }
  }
}

CovarianceMatrix CovarianceMatrix::vacuum(int modes) {
  Mat m(2 * modes, 2 * modes);
  for (int i = 0; i < 2 * modes; ++i) m(i, i) = 0.5;
  return CovarianceMatrix(modes, std::move(m));
}

Mat exponent_matrix(const PureStateSpec& spec) {
  const int n = spec.modes();
  Mat a = Mat::identity(n);
  for (const auto& [pair, c] : spec.couplings()) {
    a(pair.first - 1, pair.second - 1) = -c;
    a(pair.second - 1, pair.first - 1) = -c;
  }
  return a;
}

Admissibility validate_spec(const PureStateSpec& spec) {
  Admissibility result;
  for (const auto& [pair, c] : spec.couplings()) {
    if (std::abs(c) >= 1.0) {
      std::ostringstream msg;
      msg << "coupling (" << pair.first << "," << pair.second << ") = " << c
          << " outside the open interval (-1, 1)";
      result.reason = msg.str();
      return result;
    }
  }
  const Mat a = exponent_matrix(spec);
  result.det_a = lu_determinant(a);
  result.min_eig_a = symmetric_eigenvalues(a).front();
  if (result.min_eig_a <= kPosDefThreshold) {
    std::ostringstream msg;
    msg << "exponent matrix not positive definite (min eigenvalue " << result.min_eig_a << ")";
    result.reason = msg.str();
    return result;
  }
  result.ok = true;
  return result;
}

CovarianceMatrix covariance_from_pure(const PureStateSpec& spec) {
  const Admissibility adm = validate_spec(spec);
  if (!adm.ok) throw validation_error("inadmissible state: " + adm.reason);

  const int n = spec.modes();
  const Mat a = exponent_matrix(spec);
  Mat ainv = inverse(a);
  // Symmetrize away last-bit asymmetry from elimination so the covariance
  // constructor's exact-symmetry requirement holds.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double avg = 0.5 * (ainv(i, j) + ainv(j, i));
      ainv(i, j) = avg;
      ainv(j, i) = avg;
    }
  }

  Mat sigma(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      sigma(i, j) = 0.5 * ainv(i, j);
      sigma(n + i, n + j) = 0.5 * a(i, j);
    }
  }
  return CovarianceMatrix(n, std::move(sigma));
}

double normalization_constant(const PureStateSpec& spec) {
  const Admissibility adm = validate_spec(spec);
  if (!adm.ok) throw validation_error("inadmissible state: " + adm.reason);
  const int n = spec.modes();
  return std::pow(adm.det_a, 0.25) * std::pow(M_PI, -0.25 * n);
}

Physicality check_physicality(const CovarianceMatrix& sigma, double tol) {
  const int d = sigma.dim();
  const int n = sigma.modes();
  CMat m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = cxd(sigma(i, j), 0.0);
  for (int i = 0; i < n; ++i) {
    m(i, n + i) += cxd(0.0, -0.5);
    m(n + i, i) += cxd(0.0, 0.5);
  }
  Physicality result;
  result.min_eigenvalue = hermitian_eigenvalues(std::move(m)).front();
  result.ok = result.min_eigenvalue >= -tol;
  return result;
}

Mat symplectic_form(int modes) {
  Mat omega(2 * modes, 2 * modes);
  for (int i = 0; i < modes; ++i) {
    omega(i, modes + i) = -1.0;
    omega(modes + i, i) = 1.0;
  }
  return omega;
}

Mat scaled_symplectic_form(const std::vector<double>& lambdas) {
  const int n = static_cast<int>(lambdas.size());
  Mat omega(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    omega(i, n + i) = -lambdas[i];
    omega(n + i, i) = lambdas[i];
  }
  return omega;
}

}  // namespace gsep
