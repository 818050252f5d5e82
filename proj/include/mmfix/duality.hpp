#pragma once

// Log/exp transforms between multiplicative and additive distance structures,
// and the Cauchy-tail predicates they preserve.

#include <cstddef>
#include <variant>
#include <vector>

#include "mmfix/metric_core.hpp"

namespace mmfix {

/// Raw logarithms in (-kClampTolerance, 0) are rounding noise and clamp to 0.
inline constexpr double kClampTolerance = 1e-12;

/// ln of a multiplicative distance, clamped near the neutral element.
/// Throws Domain when p is below 1 beyond the clamp band or not finite.
double log_distance(double p);

/// d_p = ln p. Input must be Multiplicative; output is Additive with the same labels.
DistanceTable log_transform(const DistanceTable& p);
/// The returned metric evaluates ln p lazily and throws Domain on p < 1.
MetricFn log_transform(const MetricFn& p);

/// p_d = e^d. Input must be Additive; outputs are at least 1.
DistanceTable exp_transform(const DistanceTable& d);
MetricFn exp_transform(const MetricFn& d);

/// A finite stretch x_0, x_1, ... of a sequence together with the metric it
/// lives in: either indices into a table or points of a function-backed metric.
class SequenceSample {
 public:
  static SequenceSample over_table(DistanceTable table, std::vector<std::size_t> indices);
  static SequenceSample over_metric(MetricFn metric, std::vector<Point> points);

  std::size_t size() const noexcept;
  Flavor flavor() const noexcept;
  double distance(std::size_t a, std::size_t b) const;

  /// Same points under log_transform of the metric.
  SequenceSample log_image() const;

 private:
  struct TableBacked {
    DistanceTable table;
    std::vector<std::size_t> indices;
  };
  struct MetricBacked {
    MetricFn metric;
    std::vector<Point> points;
  };

  explicit SequenceSample(std::variant<TableBacked, MetricBacked> data) : data_(std::move(data)) {}

  std::variant<TableBacked, MetricBacked> data_;
};

/// True iff dist(x_n, x_m) < eps for all n, m >= start. `eps` must exceed the
/// flavor's neutral element (1 multiplicative, 0 otherwise).
bool is_eps_cauchy_tail(const SequenceSample& seq, double eps, std::size_t start);

/// Evaluates the tail predicate under p with `eps_mult` and under ln p with
/// ln(eps_mult), returning whether the two agree.
bool cauchy_equivalence_check(const SequenceSample& seq, double eps_mult, std::size_t start);

}  // namespace mmfix
