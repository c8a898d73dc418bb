#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <string>

#include "affkm/report.hpp"

namespace {

using affkm::RunConfig;

void add_common(CLI::App* cmd, RunConfig& config, std::string& emit) {
  cmd->add_option("--emit", emit, "output format: json or table")
      ->check(CLI::IsMember({"json", "table"}));
  cmd->add_option("--out", config.out_path, "output file (default: stdout or $AFFKM_OUT_DIR)");
  cmd->add_flag("--with-timing", config.with_timing,
                "include wall-clock fields in JSON (off by default: JSON is byte-stable)");
  cmd->add_flag_callback("--serial", [&config] { config.exec = affkm::Exec::serial; },
                         "run the kernels on the serial reference path");
}

int dispatch(const RunConfig& config) {
  affkm::RunOutput out = affkm::run(config);
  affkm::emit_output(config, out);
  return out.exit_code;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic toolkit for affine weight combinatorics"};
  app.require_subcommand(1);

  RunConfig config;
  std::string emit = "json";
  std::string s_str = "0";

  CLI::App* minimal = app.add_subcommand("minimal", "minimal coset representatives and their "
                                                    "values on the highest coroot");
  minimal->add_option("--type", config.algebra, "finite type, e.g. A2")->required();
  add_common(minimal, config, emit);

  CLI::App* weights = app.add_subcommand("weights", "truncated weight support with "
                                                    "multiplicities");
  weights->add_option("--type", config.algebra, "finite type")->required();
  weights->add_option("--level", config.level, "level (default 1)");
  weights->add_option("--highest", config.highest,
                      "highest weight, e.g. \"L0\", \"w1+L0\" (default: level * Lambda0)");
  weights->add_option("--depth", config.depth, "truncation depth (default 2)");
  add_common(weights, config, emit);

  CLI::App* mu0 = app.add_subcommand("mu0", "minimal-coset weight at a chosen delta level, "
                                            "with its membership flag");
  mu0->add_option("--type", config.algebra, "finite type")->required();
  mu0->add_option("--level", config.level, "level (default 1)");
  mu0->add_option("--highest", config.highest, "highest weight expression");
  mu0->add_option("--s", s_str, "delta coefficient of mu0 (rational, default 0)");
  add_common(mu0, config, emit);

  CLI::App* casimir = app.add_subcommand("casimir-audit", "pair separations over a truncated "
                                                          "support");
  casimir->add_option("--type", config.algebra, "finite type")->required();
  casimir->add_option("--level", config.level, "level (default 1)");
  casimir->add_option("--highest", config.highest, "highest weight expression");
  casimir->add_option("--depth", config.depth, "truncation depth (default 2)");
  add_common(casimir, config, emit);

  CLI::App* obstruct = app.add_subcommand("obstruct", "run the two-component obstruction "
                                                      "engine on a support candidate");
  obstruct->add_option("--spec", config.super_spec, "superalgebra name, e.g. \"B(1,1)\"");
  obstruct->add_option("--support", config.support_path, "candidate JSON file")->required();
  add_common(obstruct, config, emit);

  CLI::App* verify = app.add_subcommand("verify-all", "sweep the executable checks and "
                                                      "report per-check status");
  verify->add_option("--max-rank", config.max_rank, "largest rank swept (default 4)");
  verify->add_option("--depth", config.depth, "truncation depth for the pair audit");
  add_common(verify, config, emit);

  CLI11_PARSE(app, argc, argv);

  config.emit = (emit == "table") ? RunConfig::Emit::table : RunConfig::Emit::json;
  if (minimal->parsed()) config.command = RunConfig::Command::minimal;
  if (weights->parsed()) config.command = RunConfig::Command::weights;
  if (mu0->parsed()) config.command = RunConfig::Command::mu0;
  if (casimir->parsed()) config.command = RunConfig::Command::casimir_audit;
  if (obstruct->parsed()) config.command = RunConfig::Command::obstruct;
  if (verify->parsed()) config.command = RunConfig::Command::verify_all;

  try {
    if (mu0->parsed()) config.s = affkm::rat_parse(s_str);
    return dispatch(config);
  } catch (const affkm::parse_error& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return 64;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 65;
  }
}
