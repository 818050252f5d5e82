#pragma once

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace mmfix::fixtures {

struct CliCase {
  const char* name;
  const char* args;
  int exit_code;
  bool json_stdout = true;
};

// Every subcommand with each outcome class it can report.
inline const std::vector<CliCase>& cli_cases() {
  static const std::vector<CliCase> cases{
      {"check_pass", "check mult_ok.csv --flavor mult", 0},
      {"check_fail", "check mult_bad.csv --flavor mult", 1},
      {"check_ragged", "check ragged.csv --flavor mult", 2},
      {"check_nonnumeric", "check nonnumeric.csv --flavor metric", 2},
      {"check_metric_like", "check mult_ok.csv --flavor metric-like", 0},
      {"transform_log", "transform mult_ok.csv --dir log", 0},
      {"transform_log_csv", "transform mult_ok.csv --dir log --format csv", 0, false},
      {"transform_exp_csv", "transform zero.csv --dir exp --format csv", 0, false},
      {"transform_domain", "transform negative.csv --dir exp", 1},
      {"transform_below_one", "transform mult_bad.csv --dir log", 1},
      {"solve_demo", "solve --map affine:0.5,1 --x0 0 --lambda 0.5 --tol 1e-9", 0},
      {"solve_constant", "solve --map affine:0,3 --x0 0 --lambda 0", 0},
      {"solve_max_iter", "solve --map affine:0.5,1 --x0 0 --lambda 0.5 --max-iter 1", 3},
      {"solve_lambda_one", "solve --map affine:0.5,1 --lambda 1", 2},
      {"solve_estimate", "solve --map affine:0.5,1 --estimate --seed 7 --probe-count 16", 0},
      {"solve_trace_csv", "solve --map affine:0.5,1 --metric abs --lambda 0.5 --format csv", 0, false},
      {"estimate_contraction", "estimate-lambda --map affine:0.5,1 --seed 3 --probe-count 10", 0},
      {"estimate_identity", "estimate-lambda --map affine:1,0 --seed 3 --probe-count 10", 1},
      {"common_quarter", "common quarter.json --seed 5", 0},
      {"common_constant", "common constant3.json", 0},
      {"common_multiplicative", "common mult3.json", 0},
      {"common_range_fail", "common range_fail.json", 1},
      {"common_max_iter", "common quarter.json --seed 5 --max-iter 2", 3},
      {"common_schema", "common bad_schema.json", 2},
      {"usage_error", "solve", 2},
  };
  return cases;
}

struct CliRun {
  int exit_code = -1;
  std::string out;
};

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs the CLI inside `workdir` and captures stdout; stderr is discarded.
inline CliRun run_cli(const std::string& cli, const std::string& workdir, const std::string& args) {
  const auto tmp = std::filesystem::temp_directory_path() /
                   ("mmfix_cli_" + std::to_string(::getpid()) + "_" + std::to_string(std::rand()) + ".out");
  const std::string cmd = "cd '" + workdir + "' && '" + cli + "' " + args + " > '" + tmp.string() + "' 2>/dev/null";
  const int status = std::system(cmd.c_str());
  CliRun run;
  run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  run.out = slurp(tmp);
  std::filesystem::remove(tmp);
  return run;
}

// Top-level keys each subcommand's stdout JSON must carry.
inline bool schema_ok(const std::string& name, const nlohmann::json& j) {
  auto has = [&](std::initializer_list<const char*> keys) {
    if (!j.is_object()) return false;
    for (const char* k : keys) {
      if (!j.contains(k)) return false;
    }
    return true;
  };
  if (j.is_object() && j.contains("error")) return j["error"].contains("kind") && j["error"].contains("message");
  if (name.rfind("check", 0) == 0) return has({"flavor", "overall", "sampled", "verdicts"});
  if (name.rfind("transform", 0) == 0) return has({"direction", "output", "input_report", "output_report", "table"});
  if (name.rfind("solve", 0) == 0) {
    return has({"stop_reason", "point", "iterations", "residual_additive", "residual_multiplicative", "certificate",
                "trace"});
  }
  if (name.rfind("estimate", 0) == 0) return has({"contraction"});
  if (name.rfind("common", 0) == 0) return has({"outcome", "source_flavor", "domain", "point", "hypothesis_report"});
  return false;
}

}  // namespace mmfix::fixtures
