#include "mmfix/duality.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "mmfix/error.hpp"

namespace mmfix {

namespace {

void require_flavor(Flavor actual, Flavor expected, const char* op) {
  if (actual != expected) {
    throw Error(ErrorKind::Argument, std::string(op) + " expects a " + to_string(expected) + " input, got " +
                                         to_string(actual));
  }
}

std::string pair_string(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

double exp_distance(double d) {
  if (!(d >= 0.0)) throw Error(ErrorKind::Domain, "additive distance " + Point(d).to_string() + " is negative");
  return std::max(1.0, std::exp(d));
}

}  // namespace

double log_distance(double p) {
  if (!std::isfinite(p)) throw Error(ErrorKind::Domain, "multiplicative distance is not finite");
  const double raw = std::log(p);
  if (raw >= 0.0) return raw;
  if (raw > -kClampTolerance) return 0.0;
  throw Error(ErrorKind::Domain, "multiplicative distance " + Point(p).to_string() + " is below 1");
}

DistanceTable log_transform(const DistanceTable& p) {
  require_flavor(p.flavor(), Flavor::Multiplicative, "log_transform");
  auto rows = p.rows();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) {
      try {
        rows[i][j] = log_distance(rows[i][j]);
      } catch (const Error& e) {
        throw Error(ErrorKind::Domain, std::string(e.what()) + " at " + pair_string(i, j), {i, j});
      }
    }
  }
  return DistanceTable(p.labels(), std::move(rows), Flavor::Additive);
}

MetricFn log_transform(const MetricFn& p) {
  require_flavor(p.flavor(), Flavor::Multiplicative, "log_transform");
  return MetricFn(
      p.domain(),
      [p](const Point& x, const Point& y) {
        try {
          return log_distance(p(x, y));
        } catch (const Error& e) {
          throw Error(ErrorKind::Domain, std::string(e.what()) + " at (" + x.to_string() + ", " + y.to_string() + ")");
        }
      },
      Flavor::Additive, "ln(" + p.name() + ")");
}

DistanceTable exp_transform(const DistanceTable& d) {
  require_flavor(d.flavor(), Flavor::Additive, "exp_transform");
  auto rows = d.rows();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) {
      try {
        rows[i][j] = exp_distance(rows[i][j]);
      } catch (const Error& e) {
        throw Error(ErrorKind::Domain, std::string(e.what()) + " at " + pair_string(i, j), {i, j});
      }
    }
  }
  return DistanceTable(d.labels(), std::move(rows), Flavor::Multiplicative);
}

MetricFn exp_transform(const MetricFn& d) {
  require_flavor(d.flavor(), Flavor::Additive, "exp_transform");
  return MetricFn(
      d.domain(),
      [d](const Point& x, const Point& y) {
        try {
          return exp_distance(d(x, y));
        } catch (const Error& e) {
          throw Error(ErrorKind::Domain, std::string(e.what()) + " at (" + x.to_string() + ", " + y.to_string() + ")");
        }
      },
      Flavor::Multiplicative, "exp(" + d.name() + ")");
}

SequenceSample SequenceSample::over_table(DistanceTable table, std::vector<std::size_t> indices) {
  if (indices.empty()) throw Error(ErrorKind::Argument, "sequence sample is empty");
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] >= table.size()) {
      throw Error(ErrorKind::Argument, "sequence element " + std::to_string(k) + " refers to index " +
                                           std::to_string(indices[k]) + " outside the table");
    }
  }
  return SequenceSample(TableBacked{std::move(table), std::move(indices)});
}

SequenceSample SequenceSample::over_metric(MetricFn metric, std::vector<Point> points) {
  if (points.empty()) throw Error(ErrorKind::Argument, "sequence sample is empty");
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (!metric.contains(points[k])) {
      throw Error(ErrorKind::Domain,
                  "sequence element " + std::to_string(k) + " lies outside " + describe(metric.domain()));
    }
  }
  return SequenceSample(MetricBacked{std::move(metric), std::move(points)});
}

std::size_t SequenceSample::size() const noexcept {
  return std::visit(
      [](const auto& d) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(d)>, TableBacked>) {
          return d.indices.size();
        } else {
          return d.points.size();
        }
      },
      data_);
}

Flavor SequenceSample::flavor() const noexcept {
  if (const auto* t = std::get_if<TableBacked>(&data_)) return t->table.flavor();
  return std::get<MetricBacked>(data_).metric.flavor();
}

double SequenceSample::distance(std::size_t a, std::size_t b) const {
  if (const auto* t = std::get_if<TableBacked>(&data_)) return t->table.at(t->indices.at(a), t->indices.at(b));
  const auto& m = std::get<MetricBacked>(data_);
  return m.metric(m.points.at(a), m.points.at(b));
}

SequenceSample SequenceSample::log_image() const {
  if (const auto* t = std::get_if<TableBacked>(&data_)) return SequenceSample(TableBacked{log_transform(t->table), t->indices});
  const auto& m = std::get<MetricBacked>(data_);
  return SequenceSample(MetricBacked{log_transform(m.metric), m.points});
}

bool is_eps_cauchy_tail(const SequenceSample& seq, double eps, std::size_t start) {
  const double neutral = seq.flavor() == Flavor::Multiplicative ? 1.0 : 0.0;
  if (!(eps > neutral)) {
    throw Error(ErrorKind::Argument, "eps must exceed " + Point(neutral).to_string() + " for a " +
                                         to_string(seq.flavor()) + " metric");
  }
  if (start >= seq.size()) {
    throw Error(ErrorKind::Argument,
                "start index " + std::to_string(start) + " beyond sequence length " + std::to_string(seq.size()));
  }
  for (std::size_t n = start; n < seq.size(); ++n) {
    for (std::size_t m = n; m < seq.size(); ++m) {
      if (!(seq.distance(n, m) < eps)) return false;
    }
  }
  return true;
}

bool cauchy_equivalence_check(const SequenceSample& seq, double eps_mult, std::size_t start) {
  if (seq.flavor() != Flavor::Multiplicative) {
    throw Error(ErrorKind::Argument, "cauchy_equivalence_check expects a multiplicative sequence");
  }
  const bool multiplicative = is_eps_cauchy_tail(seq, eps_mult, start);
  const bool additive = is_eps_cauchy_tail(seq.log_image(), std::log(eps_mult), start);
  return multiplicative == additive;
}

}  // namespace mmfix
