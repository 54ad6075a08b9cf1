// Copyright 2026 The gsep Authors
// SPDX-License-Identifier: Apache-2.0

#include "gsep/scaling.hpp"

#include <cmath>
#include <sstream>

#include "gsep/errors.hpp"

namespace gsep {

namespace {

void require_matching_size(const CovarianceMatrix& sigma, const ScalingVector& lambda) {
  if (lambda.size() != sigma.modes()) {
    std::ostringstream msg;
    msg << "scaling vector has " << lambda.size() << " entries for " << sigma.modes()
        << " modes";
    throw std::invalid_argument(msg.str());
  }
}

void require_nonzero(const ScalingVector& lambda, int count) {
  for (int i = 0; i < count; ++i) {
    if (lambda[i] == 0.0) {
      std::ostringstream msg;
      msg << "lambda_" << (i + 1) << " = 0 is outside the domain of the raw determinant; "
          << "use the regularized determinant instead";
      throw std::invalid_argument(msg.str());
    }
  }
}

// The determinant of a Hermitian matrix is real; any imaginary part is
// factorization round-off and scales with the determinant magnitude, so the
// tolerance is absolute for O(1) values and relative beyond that.
double real_checked(const cxd& value, const char* what) {
  const double limit = kImagResidueTol * std::max(1.0, std::abs(value.real()));
  if (std::abs(value.imag()) > limit) {
    std::ostringstream msg;
    msg << what << " has imaginary residue " << value.imag() << " above " << limit;
    throw numerical_error(msg.str());
  }
  return value.real();
}

}  // namespace

ScalingVector::ScalingVector(std::vector<double> values) : v_(std::move(values)) {
  if (v_.empty()) throw std::invalid_argument("ScalingVector: at least one entry required");
  for (size_t i = 0; i < v_.size(); ++i) {
    if (!std::isfinite(v_[i]) || v_[i] < -1.0 || v_[i] > 1.0) {
      std::ostringstream msg;
      msg << "lambda_" << (i + 1) << " = " << v_[i] << " outside [-1, 1]";
      throw std::invalid_argument(msg.str());
    }
  }
}

ScalingVector ScalingVector::ones(int n) {
  return ScalingVector(std::vector<double>(static_cast<size_t>(n), 1.0));
}

ScalingVector ScalingVector::from_pattern(const std::vector<int>& signs) {
  std::vector<double> v;
  v.reserve(signs.size());
  for (int s : signs) {
    if (s != 1 && s != -1) {
      throw std::invalid_argument("sign pattern entries must be +1 or -1");
    }
    v.push_back(static_cast<double>(s));
  }
  return ScalingVector(std::move(v));
}

bool ScalingVector::has_zero() const {
  for (double x : v_) {
    if (x == 0.0) return true;
  }
  return false;
}

CovarianceMatrix scale_covariance(const CovarianceMatrix& sigma, const ScalingVector& lambda) {
  require_matching_size(sigma, lambda);
  require_nonzero(lambda, lambda.size());

  const int n = sigma.modes();
  Mat out(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out(i, j) = sigma(i, j);  // qq untouched
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double qp = sigma(i, n + j) / lambda[j];
      out(i, n + j) = qp;
      out(n + j, i) = qp;
    }
  }
  for (int i = 0; i < n; ++i) {
    out(n + i, n + i) = sigma(n + i, n + i) / (lambda[i] * lambda[i]);
    for (int j = i + 1; j < n; ++j) {
      const double pp = sigma(n + i, n + j) / (lambda[i] * lambda[j]);
      out(n + i, n + j) = pp;
      out(n + j, n + i) = pp;
    }
  }
  return CovarianceMatrix(n, std::move(out));
}

double shifted_determinant(const CovarianceMatrix& sigma, const ScalingVector& lambda) {
  require_matching_size(sigma, lambda);
  require_nonzero(lambda, lambda.size());
  return shifted_minor(sigma, lambda, 2 * sigma.modes());
}

double regularized_determinant(const CovarianceMatrix& sigma, const ScalingVector& lambda) {
  require_matching_size(sigma, lambda);
  const int n = sigma.modes();
  const int d = 2 * n;
  CMat m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = cxd(sigma(i, j), 0.0);
  for (int i = 0; i < n; ++i) {
    m(i, n + i) += cxd(0.0, -0.5 * lambda[i]);
    m(n + i, i) += cxd(0.0, 0.5 * lambda[i]);
  }
  return real_checked(lu_determinant(std::move(m)), "regularized determinant");
}

double shifted_minor(const CovarianceMatrix& sigma, const ScalingVector& lambda, int order) {
  require_matching_size(sigma, lambda);
  const int n = sigma.modes();
  if (order < n + 1 || order > 2 * n) {
    std::ostringstream msg;
    msg << "minor order " << order << " outside [" << n + 1 << ", " << 2 * n << "]";
    throw std::invalid_argument(msg.str());
  }
  const int k = order - n;  // momenta p_1..p_k participate
  require_nonzero(lambda, k);

  // Build the leading order x order block of sigma_lambda + (i/2) Omega
  // directly, so lambda_{k+1}..lambda_n never enter, bit for bit.
  CMat m(order, order);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cxd(sigma(i, j), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) {
      const double qp = sigma(i, n + j) / lambda[j];
      m(i, n + j) = cxd(qp, 0.0);
      m(n + j, i) = cxd(qp, 0.0);
    }
  }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      m(n + i, n + j) = cxd(sigma(n + i, n + j) / (lambda[i] * lambda[j]), 0.0);
  for (int i = 0; i < k; ++i) {
    m(i, n + i) += cxd(0.0, -0.5);
    m(n + i, i) += cxd(0.0, 0.5);
  }
  return real_checked(lu_determinant(std::move(m)), "shifted minor");
}

MinorReport minor_report(const CovarianceMatrix& sigma, const ScalingVector& lambda, double tol) {
  require_matching_size(sigma, lambda);
  require_nonzero(lambda, lambda.size());
  const int n = sigma.modes();
  MinorReport report{lambda, {}, false, std::nullopt};
  report.minors.reserve(static_cast<size_t>(n));
  for (int order = n + 1; order <= 2 * n; ++order) {
    const double value = shifted_minor(sigma, lambda, order);
    report.minors.push_back(value);
    if (value < -tol) report.witnessed = true;
  }
  return report;
}

MinorReport ppt_test(const CovarianceMatrix& sigma, const std::vector<int>& pattern, double tol) {
  if (static_cast<int>(pattern.size()) != sigma.modes()) {
    std::ostringstream msg;
    msg << "sign pattern has " << pattern.size() << " entries for " << sigma.modes()
        << " modes";
    throw std::invalid_argument(msg.str());
  }
  MinorReport report = minor_report(sigma, ScalingVector::from_pattern(pattern), tol);
  if (sigma.modes() == 2) {
    report.two_mode_verdict =
        report.witnessed ? Verdict::entangled_witnessed : Verdict::separable;
  }
  return report;
}

}  // namespace gsep
