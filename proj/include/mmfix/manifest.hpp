#pragma once

// JSON manifest describing a four-map system and how to solve it.
//
//   {
//     "domain":  {"kind": "finite", "labels": ["a", "b", "c"]}
//              | {"kind": "interval", "lo": 0, "hi": 1},
//     "maps":    {"A": [0, 1, 2], ...}                       (finite: index arrays)
//              | {"A": {"kind": "affine", "a": 1, "b": 0},
//                 "S": {"kind": "constant", "c": 0}, ...}    (interval: builtins)
//     "metric":  {"file": "table.csv", "flavor": "metric" | "mult"}
//              | {"rows": [[...], ...], "flavor": ...}
//              | {"builtin": "exp-abs" | "abs"},
//     "sections": {"A": <builtin>, "B": <builtin>},           (optional)
//     "modulus": {"kind": "linear", "lambda": 0.25},
//     "x0": 0 | "a",                                         (index, label or number)
//     "probes": {"grid": 101, "random": 0},                  (interval only)
//     "continuity_declared": false
//   }
//
// For multiplicative metrics "lambda" is the factor of the multiplicative
// condition and must lie in (0, 1/2); otherwise it is the linear modulus.

#include <cstdint>
#include <filesystem>
#include <string_view>

#include "mmfix/common_fixed_point.hpp"

namespace mmfix {

struct CommonProblem {
  FourMapSystem system;
  double lambda = 0.0;
  Element x0;
};

/// Throws Schema naming the offending field path (e.g. "maps.A[2]").
/// Relative metric files resolve against `base_dir`; `seed` drives random probes.
CommonProblem parse_common_manifest(std::string_view json_text, const std::filesystem::path& base_dir,
                                    std::uint64_t seed);

/// Dispatches to the multiplicative or additive solver by metric flavor.
CommonFixedPointResult solve_problem(const CommonProblem& problem, double tol, std::size_t max_iter);

}  // namespace mmfix
