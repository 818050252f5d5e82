#include "mmfix/mmfix.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "mmfix/banach_solver.hpp"
#include "mmfix/common_fixed_point.hpp"
#include "mmfix/duality.hpp"
#include "mmfix/error.hpp"
#include "mmfix/io.hpp"
#include "mmfix/manifest.hpp"
#include "mmfix/metric_core.hpp"

struct mmfix_table {
  mmfix::DistanceTable table;
};

struct mmfix_report {
  mmfix::AxiomReport report;
};

struct mmfix_fixed_point {
  mmfix::FixedPointResult result;
};

struct mmfix_problem {
  mmfix::CommonProblem problem;
};

struct mmfix_common_result {
  mmfix::CommonFixedPointResult result;
  std::shared_ptr<const mmfix_problem> problem;
};

namespace {

thread_local std::string g_last_error;

mmfix_status status_for(mmfix::ErrorKind kind) {
  using mmfix::ErrorKind;
  switch (kind) {
    case ErrorKind::Structural: return MMFIX_ERR_STRUCTURAL;
    case ErrorKind::Parse: return MMFIX_ERR_PARSE;
    case ErrorKind::Domain: return MMFIX_ERR_DOMAIN;
    case ErrorKind::Argument: return MMFIX_ERR_ARGUMENT;
    case ErrorKind::Numeric: return MMFIX_ERR_NUMERIC;
    case ErrorKind::Unsupported: return MMFIX_ERR_UNSUPPORTED;
    case ErrorKind::Solver: return MMFIX_ERR_SOLVER;
    case ErrorKind::Schema: return MMFIX_ERR_SCHEMA;
    case ErrorKind::Io: return MMFIX_ERR_IO;
  }
  return MMFIX_ERR_INTERNAL;
}

mmfix_status fail(mmfix_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <class Body>
mmfix_status guarded(Body&& body) {
  try {
    body();
    return MMFIX_OK;
  } catch (const mmfix::Error& e) {
    return fail(status_for(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(MMFIX_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MMFIX_ERR_INTERNAL, e.what());
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

mmfix::Flavor to_flavor(mmfix_flavor f) {
  switch (f) {
    case MMFIX_FLAVOR_ADDITIVE: return mmfix::Flavor::Additive;
    case MMFIX_FLAVOR_MULTIPLICATIVE: return mmfix::Flavor::Multiplicative;
    case MMFIX_FLAVOR_METRIC_LIKE: return mmfix::Flavor::MetricLike;
  }
  throw mmfix::Error(mmfix::ErrorKind::Argument, "unknown flavor code");
}

mmfix_flavor from_flavor(mmfix::Flavor f) {
  switch (f) {
    case mmfix::Flavor::Additive: return MMFIX_FLAVOR_ADDITIVE;
    case mmfix::Flavor::Multiplicative: return MMFIX_FLAVOR_MULTIPLICATIVE;
    case mmfix::Flavor::MetricLike: return MMFIX_FLAVOR_METRIC_LIKE;
  }
  return MMFIX_FLAVOR_ADDITIVE;
}

mmfix::SelfMap wrap(mmfix_scalar_fn f, void* user) {
  if (!f) throw mmfix::Error(mmfix::ErrorKind::Argument, "null map callback");
  return [f, user](const mmfix::Point& x) { return mmfix::Point(f(x.scalar(), user)); };
}

mmfix::MetricFn builtin(mmfix_metric m) {
  switch (m) {
    case MMFIX_METRIC_EXP_ABS: return mmfix::MetricFn::exp_abs();
    case MMFIX_METRIC_ABS: return mmfix::MetricFn::euclidean();
  }
  throw mmfix::Error(mmfix::ErrorKind::Argument, "unknown metric code");
}

template <class T>
void require(const T* p, const char* what) {
  if (!p) throw mmfix::Error(mmfix::ErrorKind::Argument, std::string("null ") + what);
}

}  // namespace

extern "C" {

const char* mmfix_version(void) { return "1.0.0"; }

const char* mmfix_last_error(void) { return g_last_error.c_str(); }

const char* mmfix_status_name(mmfix_status status) {
  switch (status) {
    case MMFIX_OK: return "ok";
    case MMFIX_ERR_STRUCTURAL: return "structural";
    case MMFIX_ERR_PARSE: return "parse";
    case MMFIX_ERR_DOMAIN: return "domain";
    case MMFIX_ERR_ARGUMENT: return "argument";
    case MMFIX_ERR_NUMERIC: return "numeric";
    case MMFIX_ERR_UNSUPPORTED: return "unsupported";
    case MMFIX_ERR_SOLVER: return "solver";
    case MMFIX_ERR_SCHEMA: return "schema";
    case MMFIX_ERR_IO: return "io";
    case MMFIX_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void mmfix_string_free(char* s) { std::free(s); }

mmfix_status mmfix_table_create(size_t n, const double* entries, mmfix_flavor flavor, mmfix_table** out) {
  return guarded([&] {
    require(out, "output handle");
    if (n > 0) require(entries, "entries");
    std::vector<std::vector<double>> rows(n);
    for (size_t i = 0; i < n; ++i) rows[i].assign(entries + i * n, entries + (i + 1) * n);
    *out = new mmfix_table{mmfix::DistanceTable::from_rows(std::move(rows), to_flavor(flavor))};
  });
}

mmfix_status mmfix_table_parse_csv(const char* text, mmfix_flavor flavor, mmfix_table** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "output handle");
    *out = new mmfix_table{mmfix::parse_table_csv(text, to_flavor(flavor))};
  });
}

void mmfix_table_destroy(mmfix_table* table) { delete table; }

size_t mmfix_table_size(const mmfix_table* table) { return table ? table->table.size() : 0; }

mmfix_flavor mmfix_table_flavor(const mmfix_table* table) {
  return table ? from_flavor(table->table.flavor()) : MMFIX_FLAVOR_ADDITIVE;
}

mmfix_status mmfix_table_entry(const mmfix_table* table, size_t i, size_t j, double* out) {
  return guarded([&] {
    require(table, "table");
    require(out, "output");
    *out = table->table.at(i, j);
  });
}

mmfix_status mmfix_table_to_csv(const mmfix_table* table, char** out) {
  return guarded([&] {
    require(table, "table");
    require(out, "output");
    *out = copy_string(mmfix::to_csv(table->table));
  });
}

mmfix_status mmfix_check(const mmfix_table* table, mmfix_report** out) {
  return guarded([&] {
    require(table, "table");
    require(out, "output handle");
    *out = new mmfix_report{mmfix::check_axioms(table->table)};
  });
}

void mmfix_report_destroy(mmfix_report* report) { delete report; }

int mmfix_report_overall(const mmfix_report* report) { return report && report->report.overall() ? 1 : 0; }

size_t mmfix_report_verdict_count(const mmfix_report* report) { return report ? report->report.verdicts.size() : 0; }

mmfix_status mmfix_report_verdict(const mmfix_report* report, size_t index, const char** axiom, int* pass,
                                  size_t witness[3], size_t* witness_len) {
  return guarded([&] {
    require(report, "report");
    if (index >= report->report.verdicts.size()) {
      throw mmfix::Error(mmfix::ErrorKind::Argument, "verdict index out of range");
    }
    const auto& v = report->report.verdicts[index];
    if (axiom) *axiom = v.axiom.c_str();
    if (pass) *pass = v.pass ? 1 : 0;
    if (witness) {
      for (size_t k = 0; k < v.witness.size() && k < 3; ++k) witness[k] = v.witness[k];
    }
    if (witness_len) *witness_len = v.witness.size();
  });
}

mmfix_status mmfix_report_to_json(const mmfix_report* report, char** out) {
  return guarded([&] {
    require(report, "report");
    require(out, "output");
    *out = copy_string(mmfix::to_json(report->report));
  });
}

mmfix_status mmfix_transform(const mmfix_table* table, mmfix_direction dir, mmfix_table** out, size_t* bad_i,
                             size_t* bad_j) {
  return guarded([&] {
    require(table, "table");
    require(out, "output handle");
    try {
      *out = new mmfix_table{dir == MMFIX_DIR_LOG ? mmfix::log_transform(table->table)
                                                  : mmfix::exp_transform(table->table)};
    } catch (const mmfix::Error& e) {
      if (e.witness().size() == 2) {
        if (bad_i) *bad_i = e.witness()[0];
        if (bad_j) *bad_j = e.witness()[1];
      }
      throw;
    }
  });
}

mmfix_status mmfix_estimate_lambda(mmfix_scalar_fn f, void* user, const double* xs, const double* ys, size_t n_pairs,
                                   int* is_contraction, double* lambda_hat, double witness[2], char** json) {
  return guarded([&] {
    require(xs, "xs");
    require(ys, "ys");
    std::vector<std::pair<mmfix::Point, mmfix::Point>> samples;
    samples.reserve(n_pairs);
    for (size_t k = 0; k < n_pairs; ++k) samples.emplace_back(xs[k], ys[k]);
    const auto estimate = mmfix::estimate_multiplicative_lambda(wrap(f, user), mmfix::MetricFn::exp_abs(), samples);
    if (const auto* cert = std::get_if<mmfix::ContractionCertificate>(&estimate)) {
      if (is_contraction) *is_contraction = 1;
      if (lambda_hat) *lambda_hat = cert->lambda_hat;
    } else {
      const auto& nc = std::get<mmfix::NotAContraction>(estimate);
      if (is_contraction) *is_contraction = 0;
      if (lambda_hat) *lambda_hat = nc.ratio;
      if (witness) {
        witness[0] = nc.witness.first.scalar();
        witness[1] = nc.witness.second.scalar();
      }
    }
    if (json) *json = copy_string(mmfix::to_json(estimate));
  });
}

mmfix_status mmfix_solve_fixed_point(mmfix_scalar_fn f, void* user, mmfix_metric metric, double x0, double lambda,
                                     int declared, size_t sample_pairs, double tol, size_t max_iter,
                                     mmfix_fixed_point** out) {
  return guarded([&] {
    require(out, "output handle");
    const mmfix::ContractionCertificate cert{lambda, declared ? 0 : sample_pairs, declared != 0};
    const auto map = wrap(f, user);
    const auto m = builtin(metric);
    auto result = m.flavor() == mmfix::Flavor::Multiplicative
                      ? mmfix::solve_fixed_point(map, m, x0, cert, tol, max_iter)
                      : mmfix::solve_fixed_point_additive(map, m, x0, cert, tol, max_iter);
    *out = new mmfix_fixed_point{std::move(result)};
  });
}

void mmfix_fixed_point_destroy(mmfix_fixed_point* result) { delete result; }

double mmfix_fixed_point_point(const mmfix_fixed_point* result) { return result->result.point.scalar(); }

size_t mmfix_fixed_point_iterations(const mmfix_fixed_point* result) { return result->result.iterations; }

mmfix_stop_reason mmfix_fixed_point_stop_reason(const mmfix_fixed_point* result) {
  return result->result.converged() ? MMFIX_STOP_CONVERGED : MMFIX_STOP_MAX_ITERATIONS;
}

double mmfix_fixed_point_residual_additive(const mmfix_fixed_point* result) {
  return result->result.residual_additive;
}

double mmfix_fixed_point_residual_multiplicative(const mmfix_fixed_point* result) {
  return result->result.residual_multiplicative;
}

mmfix_status mmfix_fixed_point_to_json(const mmfix_fixed_point* result, char** out) {
  return guarded([&] {
    require(result, "result");
    require(out, "output");
    *out = copy_string(mmfix::to_json(result->result));
  });
}

mmfix_status mmfix_fixed_point_trace_csv(const mmfix_fixed_point* result, char** out) {
  return guarded([&] {
    require(result, "result");
    require(out, "output");
    *out = copy_string(mmfix::trace_to_csv(result->result.trace));
  });
}

int mmfix_verify_fixed_point(mmfix_scalar_fn f, void* user, mmfix_metric metric, double x, double tol) {
  int verdict = 0;
  const mmfix_status s =
      guarded([&] { verdict = mmfix::verify_fixed_point(wrap(f, user), builtin(metric), x, tol) ? 1 : 0; });
  return s == MMFIX_OK ? verdict : -1;
}

mmfix_status mmfix_problem_load(const char* manifest_json, const char* base_dir, uint64_t seed, mmfix_problem** out) {
  return guarded([&] {
    require(manifest_json, "manifest");
    require(out, "output handle");
    *out = new mmfix_problem{
        mmfix::parse_common_manifest(manifest_json, base_dir ? std::filesystem::path(base_dir) : std::filesystem::path("."), seed)};
  });
}

mmfix_status mmfix_problem_create_finite(const mmfix_table* table, const size_t* a, const size_t* b, const size_t* s,
                                         const size_t* t, double lambda, size_t x0, mmfix_problem** out) {
  return guarded([&] {
    require(table, "table");
    require(out, "output handle");
    const size_t n = table->table.size();
    const auto vec = [n](const size_t* m, const char* name) {
      require(m, name);
      return std::vector<std::size_t>(m, m + n);
    };
    auto sys = mmfix::FourMapSystem::finite(table->table, {vec(a, "A"), vec(b, "B"), vec(s, "S"), vec(t, "T")});
    if (x0 >= n) throw mmfix::Error(mmfix::ErrorKind::Argument, "x0 outside the domain");
    *out = new mmfix_problem{mmfix::CommonProblem{std::move(sys), lambda, x0}};
  });
}

void mmfix_problem_destroy(mmfix_problem* problem) { delete problem; }

mmfix_status mmfix_problem_brute_force(const mmfix_problem* problem, size_t* points, size_t capacity, size_t* count) {
  return guarded([&] {
    require(problem, "problem");
    const auto found = mmfix::brute_force_common_fixed_points(problem->problem.system);
    for (size_t k = 0; k < found.size() && k < capacity && points; ++k) points[k] = found[k];
    if (count) *count = found.size();
  });
}

mmfix_status mmfix_common_solve(const mmfix_problem* problem, double tol, size_t max_iter, mmfix_common_result** out) {
  return guarded([&] {
    require(problem, "problem");
    require(out, "output handle");
    auto copy = std::make_shared<const mmfix_problem>(*problem);
    *out = new mmfix_common_result{mmfix::solve_problem(copy->problem, tol, max_iter), std::move(copy)};
  });
}

void mmfix_common_result_destroy(mmfix_common_result* result) { delete result; }

mmfix_common_outcome mmfix_common_result_outcome(const mmfix_common_result* result) {
  switch (result->result.outcome) {
    case mmfix::CommonOutcome::Converged: return MMFIX_COMMON_CONVERGED;
    case mmfix::CommonOutcome::HypothesisFailed: return MMFIX_COMMON_HYPOTHESIS_FAILED;
    case mmfix::CommonOutcome::MaxIterations: return MMFIX_COMMON_MAX_ITERATIONS;
  }
  return MMFIX_COMMON_MAX_ITERATIONS;
}

mmfix_status mmfix_common_result_point_index(const mmfix_common_result* result, size_t* out) {
  return guarded([&] {
    require(result, "result");
    require(out, "output");
    const auto& point = result->result.point;
    if (!point || !std::holds_alternative<std::size_t>(*point)) {
      throw mmfix::Error(mmfix::ErrorKind::Unsupported, "result has no finite common fixed point");
    }
    *out = std::get<std::size_t>(*point);
  });
}

mmfix_status mmfix_common_result_to_json(const mmfix_common_result* result, char** out) {
  return guarded([&] {
    require(result, "result");
    require(out, "output");
    *out = copy_string(mmfix::to_json(result->result, result->problem->problem.system));
  });
}

}  // extern "C"
