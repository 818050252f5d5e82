/*
 * C interface to the mmfix library.
 *
 * Objects are opaque handles created by mmfix_*_create / mmfix_*_parse /
 * solver calls and released with the matching *_destroy. Every fallible call
 * returns an mmfix_status; on failure mmfix_last_error() describes the cause
 * for the calling thread until its next failing call. Strings handed out by
 * the library are NUL-terminated, owned by the caller and released with
 * mmfix_string_free().
 */
#ifndef MMFIX_MMFIX_H
#define MMFIX_MMFIX_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MMFIX_BUILDING_LIBRARY)
#    define MMFIX_API __declspec(dllexport)
#  else
#    define MMFIX_API __declspec(dllimport)
#  endif
#else
#  define MMFIX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mmfix_status {
  MMFIX_OK = 0,
  MMFIX_ERR_STRUCTURAL = 1,
  MMFIX_ERR_PARSE = 2,
  MMFIX_ERR_DOMAIN = 3,
  MMFIX_ERR_ARGUMENT = 4,
  MMFIX_ERR_NUMERIC = 5,
  MMFIX_ERR_UNSUPPORTED = 6,
  MMFIX_ERR_SOLVER = 7,
  MMFIX_ERR_SCHEMA = 8,
  MMFIX_ERR_IO = 9,
  MMFIX_ERR_INTERNAL = 10
} mmfix_status;

typedef enum mmfix_flavor {
  MMFIX_FLAVOR_ADDITIVE = 0,
  MMFIX_FLAVOR_MULTIPLICATIVE = 1,
  MMFIX_FLAVOR_METRIC_LIKE = 2
} mmfix_flavor;

typedef enum mmfix_direction { MMFIX_DIR_LOG = 0, MMFIX_DIR_EXP = 1 } mmfix_direction;

/* Builtin metrics on the real line. */
typedef enum mmfix_metric {
  MMFIX_METRIC_EXP_ABS = 0, /* p(x,y) = exp(|x - y|), multiplicative */
  MMFIX_METRIC_ABS = 1      /* d(x,y) = |x - y|, additive */
} mmfix_metric;

typedef enum mmfix_stop_reason { MMFIX_STOP_CONVERGED = 0, MMFIX_STOP_MAX_ITERATIONS = 1 } mmfix_stop_reason;

typedef enum mmfix_common_outcome {
  MMFIX_COMMON_CONVERGED = 0,
  MMFIX_COMMON_HYPOTHESIS_FAILED = 1,
  MMFIX_COMMON_MAX_ITERATIONS = 2
} mmfix_common_outcome;

typedef struct mmfix_table mmfix_table;
typedef struct mmfix_report mmfix_report;
typedef struct mmfix_fixed_point mmfix_fixed_point;
typedef struct mmfix_problem mmfix_problem;
typedef struct mmfix_common_result mmfix_common_result;

/* Self-map of the real line supplied by the caller. */
typedef double (*mmfix_scalar_fn)(double x, void* user);

MMFIX_API const char* mmfix_version(void);
MMFIX_API const char* mmfix_last_error(void);
MMFIX_API const char* mmfix_status_name(mmfix_status status);
MMFIX_API void mmfix_string_free(char* s);

/* ---- distance tables ---------------------------------------------------- */

/* `entries` is row-major n*n. */
MMFIX_API mmfix_status mmfix_table_create(size_t n, const double* entries, mmfix_flavor flavor, mmfix_table** out);
MMFIX_API mmfix_status mmfix_table_parse_csv(const char* text, mmfix_flavor flavor, mmfix_table** out);
MMFIX_API void mmfix_table_destroy(mmfix_table* table);
MMFIX_API size_t mmfix_table_size(const mmfix_table* table);
MMFIX_API mmfix_flavor mmfix_table_flavor(const mmfix_table* table);
MMFIX_API mmfix_status mmfix_table_entry(const mmfix_table* table, size_t i, size_t j, double* out);
MMFIX_API mmfix_status mmfix_table_to_csv(const mmfix_table* table, char** out);

/* ---- axiom checks ------------------------------------------------------- */

/* Checks the axioms of the table's own flavor. */
MMFIX_API mmfix_status mmfix_check(const mmfix_table* table, mmfix_report** out);
MMFIX_API void mmfix_report_destroy(mmfix_report* report);
MMFIX_API int mmfix_report_overall(const mmfix_report* report);
MMFIX_API size_t mmfix_report_verdict_count(const mmfix_report* report);
/* `axiom` stays valid while the report lives. `witness` receives up to 3 indices. */
MMFIX_API mmfix_status mmfix_report_verdict(const mmfix_report* report, size_t index, const char** axiom, int* pass,
                                            size_t witness[3], size_t* witness_len);
MMFIX_API mmfix_status mmfix_report_to_json(const mmfix_report* report, char** out);

/* ---- log / exp transforms ---------------------------------------------- */

/* On a domain error the offending pair is written to bad_i/bad_j when non-null. */
MMFIX_API mmfix_status mmfix_transform(const mmfix_table* table, mmfix_direction dir, mmfix_table** out,
                                       size_t* bad_i, size_t* bad_j);

/* ---- Banach / Picard ---------------------------------------------------- */

/* Estimates lambda over the pairs (xs[k], ys[k]) under exp(|x - y|).
   *is_contraction is 1 with *lambda_hat set, or 0 with the ratio in
   *lambda_hat and the witnessing pair in witness[2]. `json` may be null. */
MMFIX_API mmfix_status mmfix_estimate_lambda(mmfix_scalar_fn f, void* user, const double* xs, const double* ys,
                                             size_t n_pairs, int* is_contraction, double* lambda_hat,
                                             double witness[2], char** json);

/* Picard iteration from x0. With MMFIX_METRIC_EXP_ABS the iteration runs in
   the log image of p; tolerances are additive. `declared` marks lambda as
   caller-supplied rather than estimated (sample_pairs is recorded then). */
MMFIX_API mmfix_status mmfix_solve_fixed_point(mmfix_scalar_fn f, void* user, mmfix_metric metric, double x0,
                                               double lambda, int declared, size_t sample_pairs, double tol,
                                               size_t max_iter, mmfix_fixed_point** out);
MMFIX_API void mmfix_fixed_point_destroy(mmfix_fixed_point* result);
MMFIX_API double mmfix_fixed_point_point(const mmfix_fixed_point* result);
MMFIX_API size_t mmfix_fixed_point_iterations(const mmfix_fixed_point* result);
MMFIX_API mmfix_stop_reason mmfix_fixed_point_stop_reason(const mmfix_fixed_point* result);
MMFIX_API double mmfix_fixed_point_residual_additive(const mmfix_fixed_point* result);
MMFIX_API double mmfix_fixed_point_residual_multiplicative(const mmfix_fixed_point* result);
MMFIX_API mmfix_status mmfix_fixed_point_to_json(const mmfix_fixed_point* result, char** out);
MMFIX_API mmfix_status mmfix_fixed_point_trace_csv(const mmfix_fixed_point* result, char** out);
MMFIX_API int mmfix_verify_fixed_point(mmfix_scalar_fn f, void* user, mmfix_metric metric, double x, double tol);

/* ---- four-map common fixed points -------------------------------------- */

/* Loads a system manifest (JSON text). Relative file references resolve
   against base_dir (may be null for the working directory). */
MMFIX_API mmfix_status mmfix_problem_load(const char* manifest_json, const char* base_dir, uint64_t seed,
                                          mmfix_problem** out);
/* Finite system over `table` with index maps of length mmfix_table_size(table). */
MMFIX_API mmfix_status mmfix_problem_create_finite(const mmfix_table* table, const size_t* a, const size_t* b,
                                                   const size_t* s, const size_t* t, double lambda, size_t x0,
                                                   mmfix_problem** out);
MMFIX_API void mmfix_problem_destroy(mmfix_problem* problem);
/* Writes up to `capacity` points of { z : Az = Bz = Sz = Tz = z } and the total count. */
MMFIX_API mmfix_status mmfix_problem_brute_force(const mmfix_problem* problem, size_t* points, size_t capacity,
                                                 size_t* count);
MMFIX_API mmfix_status mmfix_common_solve(const mmfix_problem* problem, double tol, size_t max_iter,
                                          mmfix_common_result** out);
MMFIX_API void mmfix_common_result_destroy(mmfix_common_result* result);
MMFIX_API mmfix_common_outcome mmfix_common_result_outcome(const mmfix_common_result* result);
/* Finite problems only: index of the common fixed point. */
MMFIX_API mmfix_status mmfix_common_result_point_index(const mmfix_common_result* result, size_t* out);
MMFIX_API mmfix_status mmfix_common_result_to_json(const mmfix_common_result* result, char** out);

#ifdef __cplusplus
}
#endif

#endif /* MMFIX_MMFIX_H */
