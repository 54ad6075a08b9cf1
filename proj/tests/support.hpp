// Copyright 2026 The gsep Authors
// SPDX-License-Identifier: Apache-2.0

// Shared helpers for the test suites: deterministic generators of admissible
// pure specs, physical covariance matrices, separable product states, and
// closed-form reference values derived independently of the library code.

#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "gsep/gaussian.hpp"
#include "gsep/scaling.hpp"

namespace gsep::test {

inline PureStateSpec pair_spec(int n, double c) {
  PureStateSpec spec(n);
  spec.set_coupling(1, 2, c);
  return spec;
}

inline PureStateSpec triple_spec(double c12, double c13, double c23) {
  PureStateSpec spec(3);
  spec.set_coupling(1, 2, c12);
  spec.set_coupling(1, 3, c13);
  spec.set_coupling(2, 3, c23);
  return spec;
}

// Rejection-samples an admissible spec with all pairwise couplings drawn
// uniformly; min_det keeps the exponent matrix well conditioned so tests do
// not probe the admissibility boundary where round-off dominates.
inline PureStateSpec random_admissible_spec(std::mt19937& rng, int n, double half_width,
                                            double min_det) {
  std::uniform_real_distribution<double> u(-half_width, half_width);
  for (;;) {
    PureStateSpec spec(n);
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) spec.set_coupling(i, j, u(rng));
    const Admissibility adm = validate_spec(spec);
    if (adm.ok && adm.det_a >= min_det) return spec;
  }
}

// Per-mode phase rotations are symplectic, so they preserve physicality and
// fill the qp blocks that pure-state covariances leave empty.
inline CovarianceMatrix rotate_modes(const CovarianceMatrix& sigma,
                                     const std::vector<double>& angles) {
  const int n = sigma.modes();
  Mat s(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    const double c = std::cos(angles[static_cast<size_t>(i)]);
    const double sn = std::sin(angles[static_cast<size_t>(i)]);
    s(i, i) = c;
    s(i, n + i) = sn;
    s(n + i, i) = -sn;
    s(n + i, n + i) = c;
  }
  Mat m = s * sigma.entries() * s.transposed();
  for (int i = 0; i < 2 * n; ++i) {
    for (int j = i + 1; j < 2 * n; ++j) {
      const double avg = 0.5 * (m(i, j) + m(j, i));
      m(i, j) = avg;
      m(j, i) = avg;
    }
  }
  return CovarianceMatrix(n, std::move(m));
}

// Random physical covariance: rotated pure state plus isotropic classical
// noise. Couplings are kept moderate so matrix entries stay O(1).
inline CovarianceMatrix random_physical_cov(std::mt19937& rng, int n) {
  const PureStateSpec spec = random_admissible_spec(rng, n, n <= 2 ? 0.8 : 0.45, 0.2);
  const CovarianceMatrix pure = covariance_from_pure(spec);
  std::uniform_real_distribution<double> noise(0.0, 0.5);
  std::uniform_real_distribution<double> angle(0.0, M_PI);
  const double mu = noise(rng);
  Mat m = pure.entries();
  for (int i = 0; i < 2 * n; ++i) m(i, i) += mu;
  std::vector<double> angles(static_cast<size_t>(n));
  for (double& a : angles) a = angle(rng);
  return rotate_modes(CovarianceMatrix(n, std::move(m)), angles);
}

// Block-diagonal combination over a mode partition in (q..., p...) ordering.
inline CovarianceMatrix direct_sum(const CovarianceMatrix& a, const CovarianceMatrix& b) {
  const int na = a.modes(), nb = b.modes(), n = na + nb;
  Mat m(2 * n, 2 * n);
  const auto put = [&](const CovarianceMatrix& src, int offset) {
    const int k = src.modes();
    const auto map = [&](int idx) { return idx < k ? offset + idx : n + offset + (idx - k); };
    for (int i = 0; i < 2 * k; ++i)
      for (int j = 0; j < 2 * k; ++j) m(map(i), map(j)) = src(i, j);
  };
  put(a, 0);
  put(b, na);
  return CovarianceMatrix(n, std::move(m));
}

// Random physical single-mode state: rotated squeezed vacuum plus noise.
inline CovarianceMatrix random_single_mode(std::mt19937& rng) {
  std::uniform_real_distribution<double> squeeze(0.6, 1.8);
  std::uniform_real_distribution<double> noise(0.0, 0.5);
  std::uniform_real_distribution<double> angle(0.0, M_PI);
  const double s = squeeze(rng);
  Mat m(2, 2);
  m(0, 0) = 0.5 * s + noise(rng);
  m(1, 1) = 0.5 / s + noise(rng);
  return rotate_modes(CovarianceMatrix(1, std::move(m)), {angle(rng)});
}

// Separable two-mode block: product state plus positive semidefinite
// classical correlations (sigma >= sigma_A + sigma_B entrywise in the
// Loewner order keeps the state separable).
inline CovarianceMatrix random_separable_pair(std::mt19937& rng) {
  CovarianceMatrix base = direct_sum(random_single_mode(rng), random_single_mode(rng));
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat g(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = u(rng);
  const Mat noise = g.transposed() * g;
  Mat m = base.entries();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) += 0.05 * noise(i, j);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const double avg = 0.5 * (m(i, j) + m(j, i));
      m(i, j) = avg;
      m(j, i) = avg;
    }
  return CovarianceMatrix(2, std::move(m));
}

// Fully separable state of n modes assembled from single-mode and separable
// two-mode blocks.
inline CovarianceMatrix random_separable_cov(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> coin(0, 1);
  CovarianceMatrix out = random_single_mode(rng);
  int built = 1;
  if (n >= 2 && coin(rng) == 1) {
    out = random_separable_pair(rng);
    built = 2;
  }
  while (built < n) {
    if (n - built >= 2 && coin(rng) == 1) {
      out = direct_sum(out, random_separable_pair(rng));
      built += 2;
    } else {
      out = direct_sum(out, random_single_mode(rng));
      built += 1;
    }
  }
  return out;
}

// Relabels modes: mode i of the input becomes mode perm[i] of the output
// (0-based permutation).
inline CovarianceMatrix permute_modes(const CovarianceMatrix& sigma,
                                      const std::vector<int>& perm) {
  const int n = sigma.modes();
  Mat m(2 * n, 2 * n);
  const auto map = [&](int idx) {
    return idx < n ? perm[static_cast<size_t>(idx)] : n + perm[static_cast<size_t>(idx - n)];
  };
  for (int i = 0; i < 2 * n; ++i)
    for (int j = 0; j < 2 * n; ++j) m(map(i), map(j)) = sigma(i, j);
  return CovarianceMatrix(n, std::move(m));
}

// ---------------------------------------------------------------------------
// Independent closed forms (derived by hand, cross-checked in exact rational
// arithmetic) used as oracles against the numerical determinant pipeline.
// ---------------------------------------------------------------------------

// Vacuum: the shifted determinant factorizes into one 2x2 block per mode.
inline double vacuum_sigma(const std::vector<double>& lambda) {
  double product = 1.0;
  for (double l : lambda) product *= (1.0 - l * l) / (4.0 * l * l);
  return product;
}

// Two coupled modes (coupling c on the pair), no spectators:
// [(1-l1^2)(1-l2^2) - c^2 (1-l1 l2)^2] / (16 l1^2 l2^2 (1-c^2)).
inline double pair_block_sigma(double c, double l1, double l2) {
  return ((1 - l1 * l1) * (1 - l2 * l2) - c * c * (1 - l1 * l2) * (1 - l1 * l2)) /
         (16.0 * l1 * l1 * l2 * l2 * (1 - c * c));
}

// Family where only modes 1 and 2 couple: the coupled-pair block determinant
// times one vacuum factor (1 - l^2)/(4 l^2) per spectator mode.
inline double pair_family_sigma(double c, const std::vector<double>& lambda) {
  double value = pair_block_sigma(c, lambda[0], lambda[1]);
  for (size_t i = 2; i < lambda.size(); ++i)
    value *= (1.0 - lambda[i] * lambda[i]) / (4.0 * lambda[i] * lambda[i]);
  return value;
}

// Fifth-order minor of the three-mode pure family at the sign-flip point
// (1, -1): equals -c12^2 / (8 det A).
inline double flip_minor5(double c12, double det_a) { return -c12 * c12 / (8.0 * det_a); }

}  // namespace gsep::test
