#include "mmfix/banach_solver.hpp"

#include <cmath>
#include <string>

#include "mmfix/duality.hpp"
#include "mmfix/error.hpp"

namespace mmfix {

const char* to_string(StopReason reason) noexcept {
  switch (reason) {
    case StopReason::Converged: return "converged";
    case StopReason::MaxIterations: return "max_iterations";
  }
  return "unknown";
}

LambdaEstimate estimate_multiplicative_lambda(const SelfMap& f, const MetricFn& metric,
                                              const std::vector<std::pair<Point, Point>>& samples) {
  if (metric.flavor() != Flavor::Multiplicative) {
    throw Error(ErrorKind::Argument, "lambda estimation expects a multiplicative metric");
  }
  if (samples.empty()) throw Error(ErrorKind::Argument, "no sample pairs for lambda estimation");

  double worst = 0.0;
  std::size_t worst_index = 0;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const auto& [x, y] = samples[s];
    const double dxy = log_distance(metric(x, y));
    if (dxy == 0.0) {
      throw Error(ErrorKind::Argument, "sample pair " + std::to_string(s) + " (" + x.to_string() + ", " +
                                           y.to_string() + ") has p = 1; the contraction ratio is undefined");
    }
    const double ratio = log_distance(metric(f(x), f(y))) / dxy;
    if (ratio > worst) {
      worst = ratio;
      worst_index = s;
    }
  }
  if (worst >= 1.0) return NotAContraction{worst, samples[worst_index]};
  return ContractionCertificate{worst, samples.size(), false};
}

IterationTrace start_trace(Point x0, std::optional<double> lambda) {
  IterationTrace trace;
  trace.iterates.push_back(std::move(x0));
  trace.lambda = lambda;
  return trace;
}

void IterationTrace::push(Point next, double step) {
  iterates.push_back(std::move(next));
  step_distances.push_back(step);
  if (!lambda) return;
  const double lam = *lambda;
  const double first = step_distances.front();
  if (step_distances.size() == 1) {
    apriori_bounds.push_back(first / (1.0 - lam));
    aposteriori_bounds.push_back(first / (1.0 - lam));
  }
  const auto k = static_cast<double>(step_distances.size());
  apriori_bounds.push_back(std::pow(lam, k) / (1.0 - lam) * first);
  aposteriori_bounds.push_back(lam / (1.0 - lam) * step);
}

namespace {

void validate(const ContractionCertificate& lambda, double tol, std::size_t max_iter) {
  if (!(lambda.lambda_hat >= 0.0 && lambda.lambda_hat < 1.0)) {
    throw Error(ErrorKind::Argument,
                "contraction factor " + Point(lambda.lambda_hat).to_string() + " is outside [0, 1)");
  }
  if (!(tol > 0.0)) throw Error(ErrorKind::Argument, "tolerance must be positive");
  if (max_iter < 1) throw Error(ErrorKind::Argument, "max_iter must be at least 1");
}

}  // namespace

FixedPointResult solve_fixed_point_additive(const SelfMap& f, const MetricFn& metric, const Point& x0,
                                            const ContractionCertificate& lambda, double tol_additive,
                                            std::size_t max_iter) {
  if (metric.flavor() != Flavor::Additive) {
    throw Error(ErrorKind::Argument, "additive Picard iteration expects an additive metric");
  }
  validate(lambda, tol_additive, max_iter);
  if (!metric.contains(x0)) {
    throw Error(ErrorKind::Domain, "starting point " + x0.to_string() + " lies outside " + describe(metric.domain()));
  }

  FixedPointResult result;
  result.certificate = lambda;
  result.trace = start_trace(x0, lambda.lambda_hat);
  auto& trace = result.trace;

  Point x = x0;
  for (std::size_t k = 1; k <= max_iter; ++k) {
    Point next = f(x);
    if (!metric.contains(next)) {
      throw Error(ErrorKind::Domain, "iterate " + std::to_string(k) + " = " + next.to_string() + " left " +
                                         describe(metric.domain()));
    }
    const double step = metric(x, next);
    if (!std::isfinite(step)) {
      throw Error(ErrorKind::Numeric, "non-finite distance at iterate " + std::to_string(k));
    }
    trace.push(next, step);
    x = std::move(next);
    if (trace.aposteriori_bounds.back() <= tol_additive) {
      trace.stop_reason = StopReason::Converged;
      break;
    }
  }

  result.iterations = trace.steps();
  result.residual_additive = metric(f(x), x);
  if (!std::isfinite(result.residual_additive)) {
    throw Error(ErrorKind::Numeric, "non-finite residual at iterate " + std::to_string(result.iterations));
  }
  result.residual_multiplicative = std::exp(result.residual_additive);
  result.point = std::move(x);
  return result;
}

FixedPointResult solve_fixed_point(const SelfMap& f, const MetricFn& metric, const Point& x0,
                                   const ContractionCertificate& lambda, double tol_additive, std::size_t max_iter) {
  if (metric.flavor() != Flavor::Multiplicative) {
    throw Error(ErrorKind::Argument, "solve_fixed_point expects a multiplicative metric");
  }
  auto result = solve_fixed_point_additive(f, log_transform(metric), x0, lambda, tol_additive, max_iter);
  result.residual_multiplicative = metric(f(result.point), result.point);
  return result;
}

bool verify_fixed_point(const SelfMap& f, const MetricFn& metric, const Point& x, double tol) {
  if (!(tol >= 0.0)) throw Error(ErrorKind::Argument, "tolerance must be nonnegative");
  const double r = metric(f(x), x);
  if (metric.flavor() == Flavor::Multiplicative) return r <= 1.0 + tol;
  return r <= tol;
}

}  // namespace mmfix
