// mmfix command-line front end. Talks to the library only through mmfix.h.
//
// Exit codes: 0 success, 1 axiom/hypothesis failure or domain violation,
// 2 malformed input or arguments, 3 no convergence within --max-iter.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mmfix/mmfix.h"

namespace {

using json = nlohmann::ordered_json;

enum Exit : int { kOk = 0, kFailed = 1, kBadInput = 2, kNotConverged = 3 };

struct Options {
  std::string out;
  std::string format = "json";
  double tol = 1e-9;
  std::uint64_t seed = 0;
};

// Thrown to unwind to main with an exit code and a JSON error body.
struct CliFailure {
  int code;
  std::string kind;
  std::string message;
  json extra = json::object();
};

[[noreturn]] void bad_input(const std::string& message) { throw CliFailure{kBadInput, "argument", message}; }

int exit_for(mmfix_status s) {
  switch (s) {
    case MMFIX_ERR_DOMAIN:
    case MMFIX_ERR_SOLVER:
    case MMFIX_ERR_NUMERIC: return kFailed;
    default: return kBadInput;
  }
}

void check(mmfix_status s) {
  if (s != MMFIX_OK) throw CliFailure{exit_for(s), mmfix_status_name(s), mmfix_last_error()};
}

// Owns a string returned by the library.
class LibString {
 public:
  LibString() = default;
  LibString(const LibString&) = delete;
  LibString& operator=(const LibString&) = delete;
  ~LibString() { mmfix_string_free(ptr_); }
  char** out() { return &ptr_; }
  std::string str() const { return ptr_ ? std::string(ptr_) : std::string(); }

 private:
  char* ptr_ = nullptr;
};

template <class T, void (*Destroy)(T*)>
class Handle {
 public:
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Destroy(ptr_); }
  T** out() { return &ptr_; }
  T* get() const { return ptr_; }

 private:
  T* ptr_ = nullptr;
};

using Table = Handle<mmfix_table, mmfix_table_destroy>;
using Report = Handle<mmfix_report, mmfix_report_destroy>;
using FixedPoint = Handle<mmfix_fixed_point, mmfix_fixed_point_destroy>;
using Problem = Handle<mmfix_problem, mmfix_problem_destroy>;
using CommonResult = Handle<mmfix_common_result, mmfix_common_result_destroy>;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliFailure{kBadInput, "io", "cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes next to the target and renames, so readers never see partial files.
void write_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CliFailure{kBadInput, "io", "cannot write '" + tmp.string() + "'"};
    out << content;
    if (!out.flush()) throw CliFailure{kBadInput, "io", "write to '" + tmp.string() + "' failed"};
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw CliFailure{kBadInput, "io", "cannot replace '" + path + "'"};
  }
}

void emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
  } else {
    write_atomic(opt.out, text);
  }
}

mmfix_flavor flavor_flag(const std::string& name) {
  if (name == "metric") return MMFIX_FLAVOR_ADDITIVE;
  if (name == "mult") return MMFIX_FLAVOR_MULTIPLICATIVE;
  if (name == "metric-like") return MMFIX_FLAVOR_METRIC_LIKE;
  bad_input("unknown flavor '" + name + "'");
}

std::vector<double> parse_numbers(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      bad_input(what + ": '" + item + "' is not a number");
    }
  }
  return out;
}

struct ScalarMap {
  double a = 0.0;
  double b = 0.0;

  static double apply(double x, void* self) {
    const auto* m = static_cast<const ScalarMap*>(self);
    return m->a * x + m->b;
  }
};

// "affine:a,b" or "constant:c"
ScalarMap parse_map(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) bad_input("--map expects affine:a,b or constant:c");
  const std::string kind = text.substr(0, colon);
  const auto params = parse_numbers(text.substr(colon + 1), "--map");
  if (kind == "affine" && params.size() == 2) return {params[0], params[1]};
  if (kind == "constant" && params.size() == 1) return {0.0, params[0]};
  bad_input("--map expects affine:a,b or constant:c, got '" + text + "'");
}

mmfix_metric parse_metric(const std::string& name) {
  if (name == "exp-abs") return MMFIX_METRIC_EXP_ABS;
  if (name == "abs") return MMFIX_METRIC_ABS;
  bad_input("--metric expects exp-abs or abs");
}

json parse_json(const std::string& text) { return json::parse(text); }

// ---- check ----------------------------------------------------------------

int cmd_check(const Options& opt, const std::string& path, const std::string& flavor) {
  const std::string text = read_file(path);
  Table table;
  check(mmfix_table_parse_csv(text.c_str(), flavor_flag(flavor), table.out()));
  Report report;
  check(mmfix_check(table.get(), report.out()));
  LibString js;
  check(mmfix_report_to_json(report.get(), js.out()));
  emit(opt, js.str());
  const bool ok = mmfix_report_overall(report.get()) != 0;
  std::cerr << "check: " << path << " " << (ok ? "passes" : "fails") << " the " << flavor << " axioms\n";
  return ok ? kOk : kFailed;
}

// ---- transform ------------------------------------------------------------

json report_json(const mmfix_table* table) {
  Report report;
  check(mmfix_check(table, report.out()));
  LibString js;
  check(mmfix_report_to_json(report.get(), js.out()));
  return parse_json(js.str());
}

int cmd_transform(const Options& opt, const std::string& path, const std::string& dir) {
  if (dir != "log" && dir != "exp") bad_input("--dir expects log or exp");
  const bool log = dir == "log";
  const std::string text = read_file(path);
  Table input;
  check(mmfix_table_parse_csv(text.c_str(), log ? MMFIX_FLAVOR_MULTIPLICATIVE : MMFIX_FLAVOR_ADDITIVE, input.out()));

  Table output;
  size_t bad_i = 0, bad_j = 0;
  const mmfix_status s = mmfix_transform(input.get(), log ? MMFIX_DIR_LOG : MMFIX_DIR_EXP, output.out(), &bad_i, &bad_j);
  if (s != MMFIX_OK) {
    CliFailure f{exit_for(s), mmfix_status_name(s), mmfix_last_error()};
    if (s == MMFIX_ERR_DOMAIN) f.extra["witness"] = {bad_i, bad_j};
    throw f;
  }
  LibString csv;
  check(mmfix_table_to_csv(output.get(), csv.out()));

  if (opt.format == "csv" && opt.out.empty()) {
    std::cout << csv.str();
    return kOk;
  }
  if (!opt.out.empty()) write_atomic(opt.out, csv.str());

  json summary;
  summary["direction"] = dir;
  summary["output"] = opt.out.empty() ? json(nullptr) : json(opt.out);
  summary["input_report"] = report_json(input.get());
  summary["output_report"] = report_json(output.get());
  json rows = json::array();
  const size_t n = mmfix_table_size(output.get());
  for (size_t i = 0; i < n; ++i) {
    json row = json::array();
    for (size_t j = 0; j < n; ++j) {
      double v = 0.0;
      check(mmfix_table_entry(output.get(), i, j, &v));
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  summary["table"] = std::move(rows);
  std::cout << summary.dump(2) << "\n";
  std::cerr << "transform: " << dir << " of " << n << "x" << n << " table\n";
  return kOk;
}

// ---- estimate-lambda / solve ----------------------------------------------

struct ProbeOptions {
  std::string range = "-10,10";
  std::size_t count = 64;
};

std::vector<std::pair<double, double>> probe_pairs(const ProbeOptions& opts, std::uint64_t seed) {
  const auto bounds = parse_numbers(opts.range, "--probe-range");
  if (bounds.size() != 2 || !(bounds[0] < bounds[1])) bad_input("--probe-range expects lo,hi with lo < hi");
  if (opts.count == 0) bad_input("--probe-count must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(bounds[0], bounds[1]);
  std::vector<std::pair<double, double>> pairs;
  while (pairs.size() < opts.count) {
    const double x = uniform(rng);
    const double y = uniform(rng);
    if (x != y) pairs.emplace_back(x, y);
  }
  return pairs;
}

struct Estimate {
  bool contraction = false;
  double lambda = 0.0;
  std::size_t pairs = 0;
  std::string json;
};

Estimate estimate(ScalarMap& map, const ProbeOptions& opts, std::uint64_t seed) {
  const auto pairs = probe_pairs(opts, seed);
  std::vector<double> xs, ys;
  for (const auto& [x, y] : pairs) {
    xs.push_back(x);
    ys.push_back(y);
  }
  int is_contraction = 0;
  double lambda = 0.0;
  double witness[2] = {0.0, 0.0};
  LibString js;
  check(mmfix_estimate_lambda(ScalarMap::apply, &map, xs.data(), ys.data(), xs.size(), &is_contraction, &lambda,
                              witness, js.out()));
  return {is_contraction != 0, lambda, pairs.size(), js.str()};
}

int cmd_estimate(const Options& opt, const std::string& map_text, const ProbeOptions& opts) {
  ScalarMap map = parse_map(map_text);
  const Estimate est = estimate(map, opts, opt.seed);
  emit(opt, est.json);
  std::cerr << "estimate-lambda: " << (est.contraction ? "contraction, lambda_hat = " : "not a contraction, ratio = ")
            << est.lambda << " over " << est.pairs << " pairs\n";
  return est.contraction ? kOk : kFailed;
}

struct SolveArgs {
  std::string map;
  std::string metric = "exp-abs";
  double x0 = 0.0;
  std::optional<double> lambda;
  bool estimate = false;
  ProbeOptions probes;
  std::size_t max_iter = 1000;
  std::string trace;
};

int cmd_solve(const Options& opt, const SolveArgs& args) {
  ScalarMap map = parse_map(args.map);
  const mmfix_metric metric = parse_metric(args.metric);

  double lambda = 0.0;
  int declared = 1;
  std::size_t pairs = 0;
  if (args.estimate) {
    if (metric != MMFIX_METRIC_EXP_ABS) bad_input("--estimate needs --metric exp-abs");
    const Estimate est = estimate(map, args.probes, opt.seed);
    if (!est.contraction) {
      std::cout << est.json;
      std::cerr << "solve: sampled ratio " << est.lambda << " >= 1, not a contraction\n";
      return kFailed;
    }
    lambda = est.lambda;
    declared = 0;
    pairs = est.pairs;
  } else if (args.lambda) {
    lambda = *args.lambda;
  } else {
    bad_input("solve needs --lambda or --estimate");
  }

  FixedPoint result;
  check(mmfix_solve_fixed_point(ScalarMap::apply, &map, metric, args.x0, lambda, declared, pairs, opt.tol,
                                args.max_iter, result.out()));
  LibString js, csv;
  check(mmfix_fixed_point_to_json(result.get(), js.out()));
  check(mmfix_fixed_point_trace_csv(result.get(), csv.out()));
  if (!args.trace.empty()) write_atomic(args.trace, csv.str());
  emit(opt, opt.format == "csv" ? csv.str() : js.str());

  const bool converged = mmfix_fixed_point_stop_reason(result.get()) == MMFIX_STOP_CONVERGED;
  std::cerr << "solve: " << (converged ? "converged" : "max iterations") << " after "
            << mmfix_fixed_point_iterations(result.get()) << " iterations, x = " << mmfix_fixed_point_point(result.get())
            << "\n";
  return converged ? kOk : kNotConverged;
}

// ---- common ---------------------------------------------------------------

int cmd_common(const Options& opt, const std::string& path, std::size_t max_iter) {
  const std::string text = read_file(path);
  const std::string base = std::filesystem::path(path).parent_path().string();
  Problem problem;
  check(mmfix_problem_load(text.c_str(), base.empty() ? "." : base.c_str(), opt.seed, problem.out()));
  CommonResult result;
  check(mmfix_common_solve(problem.get(), opt.tol, max_iter, result.out()));
  LibString js;
  check(mmfix_common_result_to_json(result.get(), js.out()));
  emit(opt, js.str());
  switch (mmfix_common_result_outcome(result.get())) {
    case MMFIX_COMMON_CONVERGED: std::cerr << "common: converged\n"; return kOk;
    case MMFIX_COMMON_HYPOTHESIS_FAILED: std::cerr << "common: a hypothesis fails, see hypothesis_report\n"; return kFailed;
    case MMFIX_COMMON_MAX_ITERATIONS: std::cerr << "common: no convergence within --max-iter\n"; return kNotConverged;
  }
  return kNotConverged;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiplicative/additive metric duality and fixed point solvers", "mmfix"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--out", opt.out, "Write the primary output to this file");
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--tol", opt.tol, "Tolerance (additive units)")->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "Seed for randomized probe sets");

  std::string table_path, flavor, dir, system_path;
  auto* check_cmd = app.add_subcommand("check", "Check the axioms of a distance table")->fallthrough();
  check_cmd->add_option("table", table_path, "CSV distance table")->required();
  check_cmd->add_option("--flavor", flavor, "metric | mult | metric-like")
      ->required()
      ->check(CLI::IsMember({"metric", "mult", "metric-like"}));

  auto* transform_cmd = app.add_subcommand("transform", "Log/exp transform of a distance table")->fallthrough();
  transform_cmd->add_option("table", table_path, "CSV distance table")->required();
  transform_cmd->add_option("--dir", dir, "log | exp")->required()->check(CLI::IsMember({"log", "exp"}));

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Picard iteration for a contraction on the real line")->fallthrough();
  solve_cmd->add_option("--map", solve.map, "affine:a,b or constant:c")->required();
  solve_cmd->add_option("--metric", solve.metric, "exp-abs | abs");
  solve_cmd->add_option("--x0", solve.x0, "Starting point");
  solve_cmd->add_option("--lambda", solve.lambda, "Declared contraction factor");
  solve_cmd->add_flag("--estimate", solve.estimate, "Estimate lambda from random probe pairs");
  solve_cmd->add_option("--probe-range", solve.probes.range, "lo,hi for probe pairs");
  solve_cmd->add_option("--probe-count", solve.probes.count, "Number of probe pairs");
  solve_cmd->add_option("--max-iter", solve.max_iter, "Iteration cap")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--trace", solve.trace, "Write the iteration trace CSV here");

  std::string est_map;
  ProbeOptions est_probes;
  auto* est_cmd = app.add_subcommand("estimate-lambda", "Estimate a multiplicative contraction factor")->fallthrough();
  est_cmd->add_option("--map", est_map, "affine:a,b or constant:c")->required();
  est_cmd->add_option("--probe-range", est_probes.range, "lo,hi for probe pairs");
  est_cmd->add_option("--probe-count", est_probes.count, "Number of probe pairs");

  std::size_t common_max_iter = 1000;
  auto* common_cmd = app.add_subcommand("common", "Common fixed point of four maps")->fallthrough();
  common_cmd->add_option("system", system_path, "System manifest (JSON)")->required();
  common_cmd->add_option("--max-iter", common_max_iter, "Iteration cap")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cout << json{{"error", {{"kind", "argument"}, {"message", e.what()}}}}.dump(2) << "\n";
    return kBadInput;
  }

  try {
    if (*check_cmd) return cmd_check(opt, table_path, flavor);
    if (*transform_cmd) return cmd_transform(opt, table_path, dir);
    if (*solve_cmd) return cmd_solve(opt, solve);
    if (*est_cmd) return cmd_estimate(opt, est_map, est_probes);
    if (*common_cmd) return cmd_common(opt, system_path, common_max_iter);
  } catch (const CliFailure& f) {
    json body{{"error", {{"kind", f.kind}, {"message", f.message}}}};
    for (const auto& [k, v] : f.extra.items()) body["error"][k] = v;
    std::cout << body.dump(2) << "\n";
    std::cerr << "mmfix: " << f.message << "\n";
    return f.code;
  }
  return kBadInput;
}
