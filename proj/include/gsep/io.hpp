// Copyright 2026 The gsep Authors
// SPDX-License-Identifier: Apache-2.0

// State-file parsing, scan/report serialization, and the command-line
// surface. State files are JSON documents:
//
//   {"kind": "pure", "n": 3, "couplings": {"1,2": 0.25, "2,3": 0.5}}
//   {"kind": "covariance", "n": 2, "matrix": [[...4 numbers...], ...]}
//
// Coupling keys are 1-based "i,j" with i < j; the matrix is the 2n x 2n
// covariance in (q_1..q_n, p_1..p_n) ordering.

#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "gsep/scan.hpp"

namespace gsep {

using StateVariant = std::variant<PureStateSpec, CovarianceMatrix>;

// Parses and fully validates a state document. Throws parse_error for
// malformed documents and bad keys, dimension_error for size mismatches,
// validation_error for inadmissible couplings / asymmetric or unphysical
// covariance input.
StateVariant parse_state(const std::string& text);

// Pure states are expanded to their covariance; covariance input passes
// through.
CovarianceMatrix to_covariance(const StateVariant& state);

// Short content digest of a parsed state (FNV-1a over the canonical form),
// echoed into reports so a result can be matched to its input.
std::string state_digest(const StateVariant& state);

// CSV rendering of a slice scan: header lambda_<a>,lambda_<b>,sigma_raw,
// sigma_reg, one row per node in row-major order, 17-significant-digit
// floats, undefined raw values as the literal `nan`.
std::string emit_grid(const ScanGrid& grid);

struct ReportDocument {
  std::string spec_digest;
  std::string verdict;  // "entangled-witnessed" | "not-witnessed" | "separable"
  double depth = 0.0;
  std::vector<double> best_lambda;
  std::vector<double> minors_at_best;  // NaN entries serialize as null
  std::string tool_version;
  int coarse_grid = 0;
  int starts = 0;
  unsigned seed = 0;
  double witness_tol = 0.0;
};

ReportDocument make_report(const StateVariant& state, const WitnessResult& result,
                           int coarse_grid);
std::string serialize_report(const ReportDocument& report);
ReportDocument parse_report(const std::string& text);

std::string verdict_name(Verdict verdict);

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;         // completed, no witness found
inline constexpr int kExitInput = 1;      // unreadable/invalid input or usage
inline constexpr int kExitNumerical = 2;  // a numerical guarantee failed
inline constexpr int kExitWitness = 3;    // completed, entanglement witnessed

// Full command dispatch: validate / eval / ppt / scan / analyze. `args`
// excludes the program name. Output goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gsep
