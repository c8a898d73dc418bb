#pragma once

#include <string>
#include <vector>

#include "affkm/json_io.hpp"

namespace affkm {

/// Weight expression parser for the CLI: sums of terms c*w<k>, c*L0 and c*d
/// (unicode spellings accepted for the symbols), with rational coefficients.
/// "0" denotes the zero weight. Throws parse_error with a position.
AffineWeight parse_weight_expr(const RootSystem& rs, const std::string& expr);

struct RunConfig {
  enum class Command { minimal, weights, mu0, casimir_audit, obstruct, verify_all };
  enum class Emit { json, table };

  Command command = Command::verify_all;
  std::string algebra;      // finite type, e.g. "A2"
  std::string super_spec;   // superalgebra name, e.g. "B(1,1)"
  std::string highest;      // weight expression; empty means level * Lambda_0
  std::string support_path; // candidate file for `obstruct`
  Rat s;                    // mu0 delta coefficient
  long level = 1;
  long depth = 2;
  long max_rank = 4;
  Emit emit = Emit::json;
  std::string out_path;     // empty writes to stdout
  bool with_timing = false; // timing fields are excluded from byte-stable JSON
  Exec exec = default_exec();
};

struct CheckResult {
  std::string id;
  std::string params;
  bool pass = false;
  long witnesses = 0;
  double wall_ms = 0.0;
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

struct RunOutput {
  VerificationReport report;
  Json artifact;
  std::string rendered; // what run() wrote (json or table)
  int exit_code = 0;
};

/// Executes one command and renders its artifact. Deterministic for a fixed
/// config; wall-clock fields appear only under with_timing. Exit codes:
/// 0 success / all checks pass (for `obstruct`: contradiction derived),
/// 1 a swept check failed, 2 `obstruct` stayed consistent at depth.
RunOutput run(const RunConfig& config);

/// Writes output.rendered to config.out_path, the directory named by
/// AFFKM_OUT_DIR, or stdout, in that order of preference.
void emit_output(const RunConfig& config, const RunOutput& output);

} // namespace affkm
