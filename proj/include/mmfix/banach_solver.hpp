#pragma once

// Picard iteration for contractions, run in the additive image of a
// multiplicative metric, with a-priori and a-posteriori error envelopes.

#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "mmfix/metric_core.hpp"
#include "mmfix/point.hpp"

namespace mmfix {

struct ContractionCertificate {
  double lambda_hat = 0.0;
  std::size_t sample_pairs = 0;
  /// True when the caller supplied lambda, false when it was estimated.
  bool declared = true;

  static ContractionCertificate declare(double lambda) { return {lambda, 0, true}; }
};

/// Estimation outcome when some sample pair is not shrunk.
struct NotAContraction {
  double ratio = 1.0;
  std::pair<Point, Point> witness;
};

using LambdaEstimate = std::variant<ContractionCertificate, NotAContraction>;

/// lambda_hat = max ln p(fx, fy) / ln p(x, y) over the sample pairs.
/// A sampled lambda is a lower estimate of the true supremum.
LambdaEstimate estimate_multiplicative_lambda(const SelfMap& f, const MetricFn& metric,
                                              const std::vector<std::pair<Point, Point>>& samples);

enum class StopReason { Converged, MaxIterations };
const char* to_string(StopReason reason) noexcept;

/// Iterates x_0..x_n with the additive step distances and error envelopes.
///
/// step_distances[k] = d(x_k, x_{k+1}) for k < n.
/// apriori_bounds[k] = lambda^k / (1 - lambda) * d(x_0, x_1) for k <= n.
/// aposteriori_bounds[k] = lambda / (1 - lambda) * d(x_{k-1}, x_k) for 1 <= k <= n,
/// and aposteriori_bounds[0] = apriori_bounds[0].
/// Both bound lists are empty when no contraction factor is known.
struct IterationTrace {
  std::vector<Point> iterates;
  std::vector<double> step_distances;
  std::vector<double> apriori_bounds;
  std::vector<double> aposteriori_bounds;
  std::optional<double> lambda;
  StopReason stop_reason = StopReason::MaxIterations;

  std::size_t steps() const noexcept { return step_distances.size(); }

  /// Appends x_{k+1} and the distance d(x_k, x_{k+1}), extending the bounds.
  void push(Point next, double step);
};

/// Starts a trace at x_0 with the given contraction factor (if any).
IterationTrace start_trace(Point x0, std::optional<double> lambda);

struct FixedPointResult {
  Point point;
  std::size_t iterations = 0;
  /// d_p(f(x*), x*)
  double residual_additive = 0.0;
  /// p(f(x*), x*); for an additive solve this is exp(residual_additive).
  double residual_multiplicative = 1.0;
  ContractionCertificate certificate;
  IterationTrace trace;

  bool converged() const noexcept { return trace.stop_reason == StopReason::Converged; }
};

/// Picard iteration x_{k+1} = f(x_k) under an additive metric. Stops once the
/// a-posteriori bound drops to `tol_additive` or after `max_iter` steps.
FixedPointResult solve_fixed_point_additive(const SelfMap& f, const MetricFn& metric, const Point& x0,
                                            const ContractionCertificate& lambda, double tol_additive,
                                            std::size_t max_iter);

/// Solves in (X, ln p): a multiplicative contraction with factor lambda is an
/// additive contraction with the same factor there. The trace is in additive
/// units; residual_multiplicative is evaluated with p itself.
FixedPointResult solve_fixed_point(const SelfMap& f, const MetricFn& metric, const Point& x0,
                                   const ContractionCertificate& lambda, double tol_additive, std::size_t max_iter);

/// Additive metrics: d(f(x), x) <= tol. Multiplicative: p(f(x), x) <= 1 + tol.
bool verify_fixed_point(const SelfMap& f, const MetricFn& metric, const Point& x, double tol);

}  // namespace mmfix
