#pragma once

// Text formats: distance-table CSV, JSON reports and trace CSV.

#include <string>
#include <string_view>

#include "mmfix/banach_solver.hpp"
#include "mmfix/common_fixed_point.hpp"
#include "mmfix/metric_core.hpp"

namespace mmfix {

/// Parses a distance table. The first row is a header of labels when any of
/// its fields is not a number. Throws Parse for non-numeric cells (naming row
/// and column, 1-based over the file) and Structural for ragged input.
DistanceTable parse_table_csv(std::string_view text, Flavor flavor);

/// Header row of labels followed by the entries in shortest round-trip form.
std::string to_csv(const DistanceTable& table);

/// {"flavor", "overall", "sampled", "verdicts": [{"axiom", "pass", "witness"}]}
std::string to_json(const AxiomReport& report);

std::string to_json(const LambdaEstimate& estimate);

std::string to_json(const FixedPointResult& result);

/// Columns: k, x (or x0, x1, ...), step_distance, apriori, aposteriori.
/// step_distance is empty on the last row; bound columns are empty when the
/// trace carries no contraction factor.
std::string trace_to_csv(const IterationTrace& trace);

std::string to_json(const CommonFixedPointResult& result, const FourMapSystem& system);

/// Shortest decimal string that reads back to the same double.
std::string format_number(double value);

}  // namespace mmfix
