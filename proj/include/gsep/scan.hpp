// Copyright 2026 The gsep Authors
// SPDX-License-Identifier: Apache-2.0

// Search of the scaling-parameter box for negativity witnesses: dense grid
// scans over 2-D slices, box-constrained multistart minimization of the
// regularized determinant, and the empirical negativity depth.
//
// Depth is defined on the regularized determinant. The raw determinant is
// unbounded below as lambda_i -> 0 whenever its sign there is negative, so
// its infimum carries no information; the regularized form is continuous on
// the closed box and sign-equivalent in the interior.

#pragma once

#include <map>

#include "gsep/scaling.hpp"

namespace gsep {

struct SlicePlan {
  int axis_a = 0;               // 1-based mode indices of the two free axes
  int axis_b = 0;
  std::map<int, double> fixed;  // lambda for every other mode, each in [-1, 1]
  int resolution = 101;         // points per axis over [-1, 1], endpoints included
};

struct ScanSummary {
  double min_reg = 0.0;
  double max_reg = 0.0;
  int min_index_a = 0;
  int min_index_b = 0;
  double min_lambda_a = 0.0;
  double min_lambda_b = 0.0;
  double negative_fraction = 0.0;  // cells with reg < -tol
};

class ScanGrid {
 public:
  ScanGrid(SlicePlan plan, int modes, std::vector<double> raw, std::vector<double> reg,
           ScanSummary summary)
      : plan_(std::move(plan)),
        modes_(modes),
        raw_(std::move(raw)),
        reg_(std::move(reg)),
        summary_(summary) {}

  const SlicePlan& plan() const { return plan_; }
  int modes() const { return modes_; }
  const ScanSummary& summary() const { return summary_; }

  // Grid coordinate along either axis; exact rationals like 0, +-1/2, +-1.
  double axis_value(int index) const {
    return static_cast<double>(2 * index - (plan_.resolution - 1)) /
           static_cast<double>(plan_.resolution - 1);
  }

  // NaN where any lambda coordinate of the node is zero.
  double raw_at(int ia, int ib) const { return raw_[idx(ia, ib)]; }
  double reg_at(int ia, int ib) const { return reg_[idx(ia, ib)]; }

 private:
  size_t idx(int ia, int ib) const {
    return static_cast<size_t>(ia) * plan_.resolution + ib;
  }

  SlicePlan plan_;
  int modes_;
  std::vector<double> raw_;
  std::vector<double> reg_;
  ScanSummary summary_;
};

struct WitnessResult {
  Verdict verdict;
  ScalingVector best_lambda;
  double best_value;  // minimum regularized determinant found
  double depth;       // max(0, -best_value)
  MinorReport minors_at_best;
  int starts;
  unsigned seed;
};

// Evaluates the raw and regularized determinants at every node of the slice.
// Raw values at nodes with a zero lambda coordinate are NaN; regularized
// values are always present. Summary fields come from the regularized grid.
ScanGrid scan_slice(const CovarianceMatrix& sigma, const SlicePlan& plan,
                    double tol = kWitnessTol);

// Multistart Nelder-Mead descent of the regularized determinant over the
// closed box [-1,1]^n, seeded by the best nodes of a coarse pre-scan grid.
// Deterministic for fixed (starts, seed); the result is never worse than the
// best coarse-grid node. Rejects unphysical sigma.
WitnessResult minimize_negativity(const CovarianceMatrix& sigma, int starts = 32,
                                  unsigned seed = 1, int coarse_resolution = 11);

// max(0, -min regularized determinant) with default search parameters.
double negativity_depth(const CovarianceMatrix& sigma);

}  // namespace gsep
