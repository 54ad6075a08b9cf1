// Copyright 2026 The gsep Authors
// SPDX-License-Identifier: Apache-2.0

#include "gsep/scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "gsep/errors.hpp"

namespace gsep {

namespace {

double grid_value(int index, int resolution) {
  return static_cast<double>(2 * index - (resolution - 1)) /
         static_cast<double>(resolution - 1);
}

void validate_plan(const CovarianceMatrix& sigma, const SlicePlan& plan) {
  const int n = sigma.modes();
  if (plan.axis_a < 1 || plan.axis_a > n || plan.axis_b < 1 || plan.axis_b > n) {
    std::ostringstream msg;
    msg << "slice axes (" << plan.axis_a << "," << plan.axis_b << ") out of range for " << n
        << " modes";
    throw std::invalid_argument(msg.str());
  }
  if (plan.axis_a == plan.axis_b) {
    throw std::invalid_argument("slice axes must be distinct");
  }
  if (plan.resolution < 2) {
    throw std::invalid_argument("slice resolution must be at least 2");
  }
  for (int mode = 1; mode <= n; ++mode) {
    const bool is_axis = mode == plan.axis_a || mode == plan.axis_b;
    const auto it = plan.fixed.find(mode);
    if (is_axis && it != plan.fixed.end()) {
      std::ostringstream msg;
      msg << "mode " << mode << " is a free axis and cannot carry a fixed value";
      throw std::invalid_argument(msg.str());
    }
    if (!is_axis) {
      if (it == plan.fixed.end()) {
        std::ostringstream msg;
        msg << "mode " << mode << " needs a fixed lambda value";
        throw std::invalid_argument(msg.str());
      }
      if (!std::isfinite(it->second) || it->second < -1.0 || it->second > 1.0) {
        std::ostringstream msg;
        msg << "fixed lambda for mode " << mode << " outside [-1, 1]";
        throw std::invalid_argument(msg.str());
      }
    }
  }
  for (const auto& [mode, value] : plan.fixed) {
    (void)value;
    if (mode < 1 || mode > n) {
      std::ostringstream msg;
      msg << "fixed value given for mode " << mode << ", but the state has " << n << " modes";
      throw std::invalid_argument(msg.str());
    }
  }
}

// Lexicographic tie-breaking keeps reductions independent of visit order.
bool better(double value, const std::vector<double>& lambda, double best_value,
            const std::vector<double>& best_lambda) {
  if (value != best_value) return value < best_value;
  return lambda < best_lambda;
}

class Objective {
 public:
  explicit Objective(const CovarianceMatrix& sigma)
      : sigma_(sigma), best_value_(std::numeric_limits<double>::infinity()) {}

  double operator()(std::vector<double> x) {
    for (double& v : x) v = std::clamp(v, -1.0, 1.0);
    const double value = regularized_determinant(sigma_, ScalingVector(x));
    if (best_lambda_.empty() || better(value, x, best_value_, best_lambda_)) {
      best_value_ = value;
      best_lambda_ = std::move(x);
    }
    return value;
  }

  double best_value() const { return best_value_; }
  const std::vector<double>& best_lambda() const { return best_lambda_; }

 private:
  const CovarianceMatrix& sigma_;
  double best_value_;
  std::vector<double> best_lambda_;
};

// Standard Nelder-Mead with every candidate clamped into the box.
void nelder_mead(Objective& f, const std::vector<double>& start, double step,
                 double diameter_tol, int max_iter) {
  const int n = static_cast<int>(start.size());
  struct Vertex {
    std::vector<double> x;
    double value;
  };
  std::vector<Vertex> simplex;
  simplex.reserve(static_cast<size_t>(n) + 1);
  simplex.push_back({start, f(start)});
  for (int i = 0; i < n; ++i) {
    std::vector<double> x = start;
    x[i] += (x[i] + step <= 1.0) ? step : -step;
    simplex.push_back({x, f(x)});
  }

  const auto order = [&]() {
    std::sort(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) {
      if (a.value != b.value) return a.value < b.value;
      return a.x < b.x;
    });
  };

  for (int iter = 0; iter < max_iter; ++iter) {
    order();
    double diameter = 0.0;
    for (int i = 1; i <= n; ++i)
      for (int d = 0; d < n; ++d)
        diameter = std::max(diameter, std::abs(simplex[i].x[d] - simplex[0].x[d]));
    if (diameter < diameter_tol) break;

    std::vector<double> centroid(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int d = 0; d < n; ++d) centroid[d] += simplex[i].x[d] / n;

    const auto blend = [&](double coeff) {
      std::vector<double> x(n);
      for (int d = 0; d < n; ++d)
        x[d] = std::clamp(centroid[d] + coeff * (centroid[d] - simplex[n].x[d]), -1.0, 1.0);
      return x;
    };

    const std::vector<double> reflected = blend(1.0);
    const double fr = f(reflected);
    if (fr < simplex[0].value) {
      const std::vector<double> expanded = blend(2.0);
      const double fe = f(expanded);
      simplex[n] = fe < fr ? Vertex{expanded, fe} : Vertex{reflected, fr};
      continue;
    }
    if (fr < simplex[n - 1].value) {
      simplex[n] = {reflected, fr};
      continue;
    }
    const bool outside = fr < simplex[n].value;
    const std::vector<double> contracted = blend(outside ? 0.5 : -0.5);
    const double fc = f(contracted);
    if (fc < (outside ? fr : simplex[n].value)) {
      simplex[n] = {contracted, fc};
      continue;
    }
    for (int i = 1; i <= n; ++i) {  // shrink toward the best vertex
      for (int d = 0; d < n; ++d)
        simplex[i].x[d] = simplex[0].x[d] + 0.5 * (simplex[i].x[d] - simplex[0].x[d]);
      simplex[i].value = f(simplex[i].x);
    }
  }
}

// Minor report tolerant of zero coordinates in the minimizer's argument:
// orders whose lambda prefix contains a (near-)zero are reported as NaN, and
// a minor whose evaluation loses realness near a singular scaling is NaN as
// well. The regularized determinant stays the verdict authority.
MinorReport lenient_minors(const CovarianceMatrix& sigma, const ScalingVector& lambda,
                           double tol) {
  const int n = sigma.modes();
  MinorReport report{lambda, {}, false, std::nullopt};
  report.minors.reserve(static_cast<size_t>(n));
  for (int order = n + 1; order <= 2 * n; ++order) {
    const int k = order - n;
    bool defined = true;
    for (int i = 0; i < k; ++i) {
      if (std::abs(lambda[i]) < 1e-6) defined = false;
    }
    double value = std::numeric_limits<double>::quiet_NaN();
    if (defined) {
      try {
        value = shifted_minor(sigma, lambda, order);
      } catch (const numerical_error&) {
        value = std::numeric_limits<double>::quiet_NaN();
      }
    }
    report.minors.push_back(value);
    if (!std::isnan(value) && value < -tol) report.witnessed = true;
  }
  return report;
}

}  // namespace

ScanGrid scan_slice(const CovarianceMatrix& sigma, const SlicePlan& plan, double tol) {
  validate_plan(sigma, plan);
  const int n = sigma.modes();
  const int res = plan.resolution;

  std::vector<double> base(static_cast<size_t>(n), 0.0);
  for (const auto& [mode, value] : plan.fixed) base[static_cast<size_t>(mode - 1)] = value;

  std::vector<double> raw(static_cast<size_t>(res) * res);
  std::vector<double> reg(static_cast<size_t>(res) * res);
  ScanSummary summary;
  summary.min_reg = std::numeric_limits<double>::infinity();
  summary.max_reg = -std::numeric_limits<double>::infinity();
  int negative = 0;

  std::vector<double> lambda = base;
  for (int ia = 0; ia < res; ++ia) {
    lambda[static_cast<size_t>(plan.axis_a - 1)] = grid_value(ia, res);
    for (int ib = 0; ib < res; ++ib) {
      lambda[static_cast<size_t>(plan.axis_b - 1)] = grid_value(ib, res);
      const ScalingVector lv{lambda};
      const double r = regularized_determinant(sigma, lv);
      const size_t at = static_cast<size_t>(ia) * res + ib;
      reg[at] = r;
      raw[at] = lv.has_zero() ? std::numeric_limits<double>::quiet_NaN()
                              : shifted_determinant(sigma, lv);
      if (r < summary.min_reg) {
        summary.min_reg = r;
        summary.min_index_a = ia;
        summary.min_index_b = ib;
        summary.min_lambda_a = grid_value(ia, res);
        summary.min_lambda_b = grid_value(ib, res);
      }
      summary.max_reg = std::max(summary.max_reg, r);
      if (r < -tol) ++negative;
    }
  }
  summary.negative_fraction = static_cast<double>(negative) / (static_cast<double>(res) * res);
  return ScanGrid(plan, n, std::move(raw), std::move(reg), summary);
}

WitnessResult minimize_negativity(const CovarianceMatrix& sigma, int starts, unsigned seed,
                                  int coarse_resolution) {
  if (starts < 1) throw std::invalid_argument("minimize_negativity: starts must be >= 1");
  if (coarse_resolution < 2) {
    throw std::invalid_argument("minimize_negativity: coarse grid must have >= 2 points");
  }
  const Physicality phys = check_physicality(sigma);
  if (!phys.ok) {
    std::ostringstream msg;
    msg << "covariance matrix is not physical (min eigenvalue of the uncertainty matrix is "
        << phys.min_eigenvalue << "); the criterion is undefined for it";
    throw validation_error(msg.str());
  }

  const int n = sigma.modes();
  Objective objective(sigma);

  // Coarse pre-scan over the full box; its nodes seed the local descents.
  struct Node {
    double value;
    std::vector<double> lambda;
  };
  std::vector<Node> nodes;
  std::vector<double> lambda(static_cast<size_t>(n), -1.0);
  std::vector<int> digits(static_cast<size_t>(n), 0);
  for (;;) {
    for (int i = 0; i < n; ++i) lambda[static_cast<size_t>(i)] = grid_value(digits[i], coarse_resolution);
    nodes.push_back({objective(lambda), lambda});
    int d = n - 1;
    while (d >= 0 && ++digits[static_cast<size_t>(d)] == coarse_resolution) {
      digits[static_cast<size_t>(d)] = 0;
      --d;
    }
    if (d < 0) break;
  }
  std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.lambda < b.lambda;
  });

  const int runs = std::min<int>(starts, static_cast<int>(nodes.size()));
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.05, 0.05);
  for (int s = 0; s < runs; ++s) {
    std::vector<double> start = nodes[static_cast<size_t>(s)].lambda;
    if (s > 0) {
      for (double& v : start) v = std::clamp(v + jitter(rng), -1.0, 1.0);
    }
    nelder_mead(objective, start, 0.15, 1e-8, 4000);
  }

  const double best_value = objective.best_value();
  const double depth = std::max(0.0, -best_value);
  const ScalingVector best_lambda{objective.best_lambda()};
  Verdict verdict;
  if (depth > kWitnessTol) {
    verdict = Verdict::entangled_witnessed;
  } else {
    verdict = n == 2 ? Verdict::separable : Verdict::not_witnessed;
  }
  return WitnessResult{verdict,
                       best_lambda,
                       best_value,
                       depth,
                       lenient_minors(sigma, best_lambda, kWitnessTol),
                       starts,
                       seed};
}

double negativity_depth(const CovarianceMatrix& sigma) {
  return minimize_negativity(sigma).depth;
}

}  // namespace gsep
