// Copyright 2026 The gsep Authors
// SPDX-License-Identifier: Apache-2.0

#include "gsep/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gsep/errors.hpp"
#include "gsep/version.hpp"

namespace gsep {

namespace {

using nlohmann::json;

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

bool parse_strict_int(const std::string& text, int& out) {
  if (text.empty()) return false;
  size_t pos = 0;
  if (text[0] == '-') pos = 1;
  if (pos == text.size()) return false;
  long value = 0;
  for (; pos < text.size(); ++pos) {
    if (!std::isdigit(static_cast<unsigned char>(text[pos]))) return false;
    value = value * 10 + (text[pos] - '0');
    if (value > 1'000'000) return false;
  }
  out = static_cast<int>(text[0] == '-' ? -value : value);
  return true;
}

PureStateSpec parse_pure(const json& j, int n) {
  if (!j.contains("couplings")) {
    throw parse_error("pure state document must carry a \"couplings\" object");
  }
  if (j.contains("matrix")) {
    throw parse_error("pure state document must not carry a \"matrix\" entry");
  }
  const json& couplings = j.at("couplings");
  if (!couplings.is_object()) {
    throw parse_error("\"couplings\" must be an object keyed by \"i,j\"");
  }
  PureStateSpec spec(n);
  for (const auto& [key, value] : couplings.items()) {
    const size_t comma = key.find(',');
    int i = 0, k = 0;
    if (comma == std::string::npos || !parse_strict_int(key.substr(0, comma), i) ||
        !parse_strict_int(key.substr(comma + 1), k)) {
      throw parse_error("bad coupling key \"" + key + "\" (expected \"i,j\")");
    }
    if (i < 1 || k < 1 || i >= k || k > n) {
      throw parse_error("bad coupling key \"" + key + "\" (need 1 <= i < j <= " +
                        std::to_string(n) + ")");
    }
    if (!value.is_number()) {
      throw parse_error("coupling \"" + key + "\" is not a number");
    }
    const double c = value.get<double>();
    if (!(std::abs(c) < 1.0)) {
      throw validation_error("coupling \"" + key + "\" = " + format_double(c) +
                             " outside the open interval (-1, 1)");
    }
    spec.set_coupling(i, k, c);
  }
  const Admissibility adm = validate_spec(spec);
  if (!adm.ok) throw validation_error("inadmissible state: " + adm.reason);
  return spec;
}

CovarianceMatrix parse_covariance(const json& j, int n) {
  if (!j.contains("matrix")) {
    throw parse_error("covariance document must carry a \"matrix\" array");
  }
  if (j.contains("couplings")) {
    throw parse_error("covariance document must not carry a \"couplings\" entry");
  }
  const json& rows = j.at("matrix");
  const int d = 2 * n;
  if (!rows.is_array() || static_cast<int>(rows.size()) != d) {
    throw dimension_error("matrix must have " + std::to_string(d) + " rows, got " +
                          std::to_string(rows.is_array() ? rows.size() : 0));
  }
  Mat m(d, d);
  for (int i = 0; i < d; ++i) {
    const json& row = rows.at(static_cast<size_t>(i));
    if (!row.is_array() || static_cast<int>(row.size()) != d) {
      throw dimension_error("matrix row " + std::to_string(i + 1) + " must have " +
                            std::to_string(d) + " entries");
    }
    for (int k = 0; k < d; ++k) {
      const json& cell = row.at(static_cast<size_t>(k));
      if (!cell.is_number()) {
        throw parse_error("matrix entry (" + std::to_string(i + 1) + "," +
                          std::to_string(k + 1) + ") is not a number");
      }
      m(i, k) = cell.get<double>();
    }
  }
  CovarianceMatrix sigma(n, std::move(m));  // throws on asymmetry
  const Physicality phys = check_physicality(sigma);
  if (!phys.ok) {
    throw validation_error(
        "covariance matrix violates the uncertainty relation (min eigenvalue of sigma + "
        "(i/2) Omega is " +
        format_double(phys.min_eigenvalue) + ")");
  }
  return sigma;
}

uint64_t fnv1a(const std::string& text) {
  uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::string canonical_form(const StateVariant& state) {
  std::ostringstream s;
  if (std::holds_alternative<PureStateSpec>(state)) {
    const auto& spec = std::get<PureStateSpec>(state);
    s << "pure;n=" << spec.modes();
    for (const auto& [pair, c] : spec.couplings()) {
      s << ";" << pair.first << "," << pair.second << "=" << format_double(c);
    }
  } else {
    const auto& sigma = std::get<CovarianceMatrix>(state);
    s << "cov;n=" << sigma.modes();
    for (int i = 0; i < sigma.dim(); ++i)
      for (int j = 0; j < sigma.dim(); ++j) s << ";" << format_double(sigma(i, j));
  }
  return s.str();
}

}  // namespace

StateVariant parse_state(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw parse_error("malformed document: not valid JSON");
  if (!j.is_object()) throw parse_error("malformed document: top level must be an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "kind" && key != "n" && key != "couplings" && key != "matrix") {
      throw parse_error("unknown key \"" + key + "\"");
    }
  }
  if (!j.contains("kind") || !j.at("kind").is_string()) {
    throw parse_error("missing or non-string \"kind\"");
  }
  if (!j.contains("n") || !j.at("n").is_number_integer()) {
    throw parse_error("missing or non-integer mode count \"n\"");
  }
  const int n = j.at("n").get<int>();
  if (n < 1 || n > 8) {
    throw parse_error("mode count must be between 1 and 8, got " + std::to_string(n));
  }
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "pure") return parse_pure(j, n);
  if (kind == "covariance") return parse_covariance(j, n);
  throw parse_error("unknown kind \"" + kind + "\" (expected \"pure\" or \"covariance\")");
}

CovarianceMatrix to_covariance(const StateVariant& state) {
  if (std::holds_alternative<PureStateSpec>(state)) {
    return covariance_from_pure(std::get<PureStateSpec>(state));
  }
  return std::get<CovarianceMatrix>(state);
}

std::string state_digest(const StateVariant& state) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "fnv1a:%016llx",
                static_cast<unsigned long long>(fnv1a(canonical_form(state))));
  return buf;
}

std::string emit_grid(const ScanGrid& grid) {
  std::ostringstream out;
  out << "lambda_" << grid.plan().axis_a << ",lambda_" << grid.plan().axis_b
      << ",sigma_raw,sigma_reg\n";
  const int res = grid.plan().resolution;
  for (int ia = 0; ia < res; ++ia) {
    const std::string a = format_double(grid.axis_value(ia));
    for (int ib = 0; ib < res; ++ib) {
      out << a << ',' << format_double(grid.axis_value(ib)) << ','
          << format_double(grid.raw_at(ia, ib)) << ',' << format_double(grid.reg_at(ia, ib))
          << '\n';
    }
  }
  return out.str();
}

std::string verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::separable:
      return "separable";
    case Verdict::not_witnessed:
      return "not-witnessed";
    case Verdict::entangled_witnessed:
      return "entangled-witnessed";
  }
  return "not-witnessed";
}

ReportDocument make_report(const StateVariant& state, const WitnessResult& result,
                           int coarse_grid) {
  ReportDocument doc;
  doc.spec_digest = state_digest(state);
  doc.verdict = verdict_name(result.verdict);
  doc.depth = result.depth;
  doc.best_lambda = result.best_lambda.values();
  doc.minors_at_best = result.minors_at_best.minors;
  doc.tool_version = kToolVersion;
  doc.coarse_grid = coarse_grid;
  doc.starts = result.starts;
  doc.seed = result.seed;
  doc.witness_tol = kWitnessTol;
  return doc;
}

std::string serialize_report(const ReportDocument& report) {
  json j;
  j["spec_digest"] = report.spec_digest;
  j["verdict"] = report.verdict;
  j["depth"] = report.depth;
  j["best_lambda"] = report.best_lambda;
  json minors = json::array();
  for (double m : report.minors_at_best) {
    if (std::isnan(m)) {
      minors.push_back(nullptr);
    } else {
      minors.push_back(m);
    }
  }
  j["minors_at_best"] = std::move(minors);
  j["tool_version"] = report.tool_version;
  j["parameters"] = {{"coarse_grid", report.coarse_grid},
                     {"starts", report.starts},
                     {"seed", report.seed},
                     {"witness_tol", report.witness_tol}};
  return j.dump(2) + "\n";
}

ReportDocument parse_report(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw parse_error("malformed report document");
  try {
    ReportDocument doc;
    doc.spec_digest = j.at("spec_digest").get<std::string>();
    doc.verdict = j.at("verdict").get<std::string>();
    doc.depth = j.at("depth").get<double>();
    doc.best_lambda = j.at("best_lambda").get<std::vector<double>>();
    for (const json& m : j.at("minors_at_best")) {
      doc.minors_at_best.push_back(m.is_null() ? std::numeric_limits<double>::quiet_NaN()
                                               : m.get<double>());
    }
    doc.tool_version = j.at("tool_version").get<std::string>();
    const json& p = j.at("parameters");
    doc.coarse_grid = p.at("coarse_grid").get<int>();
    doc.starts = p.at("starts").get<int>();
    doc.seed = p.at("seed").get<unsigned>();
    doc.witness_tol = p.at("witness_tol").get<double>();
    return doc;
  } catch (const json::exception& e) {
    throw parse_error(std::string("malformed report document: ") + e.what());
  }
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot read file: " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<double> parse_lambda_list(const std::string& text, int n) {
  std::vector<double> values;
  std::stringstream s(text);
  std::string token;
  while (std::getline(s, token, ',')) {
    size_t used = 0;
    double v = 0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad lambda value \"" + token + "\"");
    }
    while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used]))) ++used;
    if (used != token.size()) throw std::invalid_argument("bad lambda value \"" + token + "\"");
    values.push_back(v);
  }
  if (static_cast<int>(values.size()) != n) {
    throw std::invalid_argument("expected " + std::to_string(n) + " lambda values, got " +
                                std::to_string(values.size()));
  }
  return values;
}

std::vector<int> parse_pattern(const std::string& text, int n) {
  std::vector<int> signs;
  std::stringstream s(text);
  std::string token;
  while (std::getline(s, token, ',')) {
    if (token == "+" || token == "+1" || token == "1") {
      signs.push_back(1);
    } else if (token == "-" || token == "-1") {
      signs.push_back(-1);
    } else {
      throw std::invalid_argument("bad pattern entry \"" + token + "\" (use + or -)");
    }
  }
  if (static_cast<int>(signs.size()) != n) {
    throw std::invalid_argument("expected " + std::to_string(n) + " pattern entries, got " +
                                std::to_string(signs.size()));
  }
  return signs;
}

void print_minors(std::ostream& out, const MinorReport& report, int modes) {
  for (size_t i = 0; i < report.minors.size(); ++i) {
    out << "minor[" << modes + 1 + static_cast<int>(i)
        << "]: " << format_double(report.minors[i]) << "\n";
  }
  out << "witnessed: " << (report.witnessed ? "yes" : "no") << "\n";
}

int cmd_validate(const std::string& path, std::ostream& out) {
  const StateVariant state = parse_state(read_file(path));
  if (std::holds_alternative<PureStateSpec>(state)) {
    const auto& spec = std::get<PureStateSpec>(state);
    const Admissibility adm = validate_spec(spec);
    out << "kind: pure\nmodes: " << spec.modes() << "\n";
    out << "admissible: yes (det A = " << format_double(adm.det_a)
        << ", min eigenvalue = " << format_double(adm.min_eig_a) << ")\n";
    const Physicality phys = check_physicality(covariance_from_pure(spec));
    out << "physical: yes (min eigenvalue of sigma + (i/2) Omega = "
        << format_double(phys.min_eigenvalue) << ")\n";
  } else {
    const auto& sigma = std::get<CovarianceMatrix>(state);
    const Physicality phys = check_physicality(sigma);
    out << "kind: covariance\nmodes: " << sigma.modes() << "\n";
    out << "physical: yes (min eigenvalue of sigma + (i/2) Omega = "
        << format_double(phys.min_eigenvalue) << ")\n";
  }
  return kExitOk;
}

int cmd_eval(const std::string& path, const std::string& lambda_text, std::ostream& out) {
  const CovarianceMatrix sigma = to_covariance(parse_state(read_file(path)));
  const ScalingVector lambda{parse_lambda_list(lambda_text, sigma.modes())};
  const double raw = shifted_determinant(sigma, lambda);
  const double reg = regularized_determinant(sigma, lambda);
  const MinorReport report = minor_report(sigma, lambda);
  out << "sigma: " << format_double(raw) << "\n";
  out << "sigma_reg: " << format_double(reg) << "\n";
  print_minors(out, report, sigma.modes());
  return report.witnessed ? kExitWitness : kExitOk;
}

int cmd_ppt(const std::string& path, const std::string& pattern_text, std::ostream& out) {
  const CovarianceMatrix sigma = to_covariance(parse_state(read_file(path)));
  std::vector<int> pattern;
  if (pattern_text.empty()) {
    pattern.assign(static_cast<size_t>(sigma.modes()), -1);
    pattern[0] = 1;
  } else {
    pattern = parse_pattern(pattern_text, sigma.modes());
  }
  out << "pattern:";
  for (int s : pattern) out << " " << (s > 0 ? "+1" : "-1");
  out << "\n";
  const MinorReport report = ppt_test(sigma, pattern);
  print_minors(out, report, sigma.modes());
  if (report.two_mode_verdict) {
    out << "verdict: " << verdict_name(*report.two_mode_verdict) << "\n";
  }
  return report.witnessed ? kExitWitness : kExitOk;
}

int cmd_scan(const std::string& path, const std::vector<std::string>& fixes,
             const std::string& axes_text, int resolution, const std::string& out_path,
             std::ostream& out, std::ostream& err) {
  const CovarianceMatrix sigma = to_covariance(parse_state(read_file(path)));
  SlicePlan plan;
  plan.resolution = resolution;
  {
    const size_t comma = axes_text.find(',');
    if (comma == std::string::npos || !parse_strict_int(axes_text.substr(0, comma), plan.axis_a) ||
        !parse_strict_int(axes_text.substr(comma + 1), plan.axis_b)) {
      throw std::invalid_argument("bad --axes value \"" + axes_text + "\" (expected a,b)");
    }
  }
  for (const std::string& fix : fixes) {
    const size_t eq = fix.find('=');
    int mode = 0;
    if (eq == std::string::npos || !parse_strict_int(fix.substr(0, eq), mode)) {
      throw std::invalid_argument("bad --fix value \"" + fix + "\" (expected i=value)");
    }
    size_t used = 0;
    double value = 0;
    const std::string vtext = fix.substr(eq + 1);
    try {
      value = std::stod(vtext, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad --fix value \"" + fix + "\"");
    }
    if (used != vtext.size()) throw std::invalid_argument("bad --fix value \"" + fix + "\"");
    plan.fixed[mode] = value;
  }
  const ScanGrid grid = scan_slice(sigma, plan);
  const std::string csv = emit_grid(grid);
  if (out_path.empty()) {
    out << csv;
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw parse_error("cannot write file: " + out_path);
    file << csv;
  }
  const ScanSummary& s = grid.summary();
  err << "min sigma_reg = " << format_double(s.min_reg) << " at lambda_" << plan.axis_a << " = "
      << format_double(s.min_lambda_a) << ", lambda_" << plan.axis_b << " = "
      << format_double(s.min_lambda_b) << "; negative fraction = "
      << format_double(s.negative_fraction) << "\n";
  return s.min_reg < -kWitnessTol ? kExitWitness : kExitOk;
}

int cmd_analyze(const std::string& path, int coarse, int starts, unsigned seed, bool as_json,
                std::ostream& out) {
  const StateVariant state = parse_state(read_file(path));
  const CovarianceMatrix sigma = to_covariance(state);
  const WitnessResult result = minimize_negativity(sigma, starts, seed, coarse);
  if (as_json) {
    out << serialize_report(make_report(state, result, coarse));
  } else {
    out << "verdict: " << verdict_name(result.verdict) << "\n";
    out << "depth: " << format_double(result.depth) << "\n";
    out << "best lambda:";
    for (double v : result.best_lambda.values()) out << " " << format_double(v);
    out << "\n";
    print_minors(out, result.minors_at_best, sigma.modes());
    out << "spec digest: " << state_digest(state) << "\n";
  }
  return result.verdict == Verdict::entangled_witnessed ? kExitWitness : kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement witness for multimode Gaussian states via partial momentum "
               "scaling of the covariance matrix"};
  app.name("gsep");
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  std::string file, lambda_text, pattern_text, axes_text, out_path;
  std::vector<std::string> fixes;
  int scan_grid = 101;
  int coarse = 11;
  int starts = 32;
  unsigned seed = 1;
  bool as_json = false;

  CLI::App* validate = app.add_subcommand("validate", "Admissibility / physicality report");
  validate->add_option("spec", file, "state file (JSON)")->required();

  CLI::App* eval = app.add_subcommand("eval", "Evaluate the determinant and all minors at one "
                                              "scaling vector");
  eval->add_option("spec", file, "state file (JSON)")->required();
  eval->add_option("--lambda", lambda_text, "comma-separated lambda values, one per mode")
      ->required();

  CLI::App* ppt = app.add_subcommand("ppt", "Momentum sign-flip (partial transpose) test");
  ppt->add_option("spec", file, "state file (JSON)")->required();
  ppt->add_option("--pattern", pattern_text, "comma-separated +/- signs (default: + - - ...)");

  CLI::App* scan = app.add_subcommand("scan", "CSV scan of a 2-D slice of the lambda box");
  scan->add_option("spec", file, "state file (JSON)")->required();
  scan->add_option("--fix", fixes, "fixed lambda for a mode, as i=value (repeatable)");
  scan->add_option("--axes", axes_text, "free axes as a,b (1-based mode indices)")->required();
  scan->add_option("--grid", scan_grid, "points per axis (default 101)");
  scan->add_option("--out", out_path, "write CSV to this file instead of stdout");

  CLI::App* analyze = app.add_subcommand("analyze", "Full witness search over the lambda box");
  analyze->add_option("spec", file, "state file (JSON)")->required();
  analyze->add_option("--grid", coarse, "coarse pre-scan points per axis (default 11)");
  analyze->add_option("--starts", starts, "local descents to run (default 32)");
  analyze->add_option("--seed", seed, "seed for start jitter (default 1)");
  analyze->add_flag("--json", as_json, "emit a JSON report document");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (validate->parsed()) return cmd_validate(file, out);
    if (eval->parsed()) return cmd_eval(file, lambda_text, out);
    if (ppt->parsed()) return cmd_ppt(file, pattern_text, out);
    if (scan->parsed()) return cmd_scan(file, fixes, axes_text, scan_grid, out_path, out, err);
    if (analyze->parsed()) return cmd_analyze(file, coarse, starts, seed, as_json, out);
  } catch (const numerical_error& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  err << "error: no subcommand\n";
  return kExitInput;
}

}  // namespace gsep
