#include "mmfix/metric_core.hpp"

#include <cmath>
#include <utility>

#include "mmfix/error.hpp"

namespace mmfix {

const char* to_string(Flavor flavor) noexcept {
  switch (flavor) {
    case Flavor::Additive: return "additive";
    case Flavor::Multiplicative: return "multiplicative";
    case Flavor::MetricLike: return "metric-like";
  }
  return "unknown";
}

Flavor parse_flavor(std::string_view name) {
  if (name == "additive" || name == "metric") return Flavor::Additive;
  if (name == "multiplicative" || name == "mult") return Flavor::Multiplicative;
  if (name == "metric-like" || name == "metric_like") return Flavor::MetricLike;
  throw Error(ErrorKind::Argument, "unknown flavor '" + std::string(name) + "'");
}

DistanceTable::DistanceTable(std::vector<std::string> labels, std::vector<std::vector<double>> rows, Flavor flavor)
    : labels_(std::move(labels)), n_(rows.size()), flavor_(flavor) {
  if (n_ == 0) throw Error(ErrorKind::Structural, "distance table has no points");
  if (labels_.size() != n_) {
    throw Error(ErrorKind::Structural,
                "label count " + std::to_string(labels_.size()) + " does not match row count " + std::to_string(n_));
  }
  entries_.reserve(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (rows[i].size() != n_) {
      throw Error(ErrorKind::Structural, "row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                                             " entries, expected " + std::to_string(n_));
    }
    for (std::size_t j = 0; j < n_; ++j) {
      if (!std::isfinite(rows[i][j])) {
        throw Error(ErrorKind::Structural, "non-finite entry at (" + std::to_string(i) + "," + std::to_string(j) + ")",
                    {i, j});
      }
      entries_.push_back(rows[i][j]);
    }
  }
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if ((*this)(i, j) != (*this)(j, i)) {
        throw Error(ErrorKind::Structural, "asymmetric entries at (" + std::to_string(i) + "," + std::to_string(j) + ")",
                    {i, j});
      }
    }
  }
}

DistanceTable DistanceTable::from_rows(std::vector<std::vector<double>> rows, Flavor flavor) {
  std::vector<std::string> labels;
  labels.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) labels.push_back("x" + std::to_string(i));
  return DistanceTable(std::move(labels), std::move(rows), flavor);
}

double DistanceTable::at(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) {
    throw Error(ErrorKind::Argument, "index (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
  }
  return (*this)(i, j);
}

std::vector<std::vector<double>> DistanceTable::rows() const {
  std::vector<std::vector<double>> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i].assign(entries_.begin() + i * n_, entries_.begin() + (i + 1) * n_);
  return out;
}

DistanceTable DistanceTable::with_flavor(Flavor flavor) const {
  DistanceTable copy = *this;
  copy.flavor_ = flavor;
  return copy;
}

DistanceTable DistanceTable::with_entry(std::size_t i, std::size_t j, double value) const {
  if (i >= n_ || j >= n_) throw Error(ErrorKind::Argument, "with_entry index out of range");
  if (!std::isfinite(value)) throw Error(ErrorKind::Structural, "non-finite entry", {i, j});
  DistanceTable copy = *this;
  copy.entries_[i * n_ + j] = value;
  copy.entries_[j * n_ + i] = value;
  return copy;
}

bool domain_contains(const Domain& domain, const Point& x) noexcept {
  if (const auto* iv = std::get_if<Interval>(&domain)) {
    return x.dim() == 1 && x[0] >= iv->lo && x[0] <= iv->hi;
  }
  return x.dim() == std::get<VectorSpace>(domain).dim;
}

std::string describe(const Domain& domain) {
  if (const auto* iv = std::get_if<Interval>(&domain)) {
    return "[" + Point(iv->lo).to_string() + ", " + Point(iv->hi).to_string() + "]";
  }
  return "R^" + std::to_string(std::get<VectorSpace>(domain).dim);
}

MetricFn::MetricFn(Domain domain, Distance distance, Flavor flavor, std::string name)
    : domain_(std::move(domain)), distance_(std::move(distance)), flavor_(flavor), name_(std::move(name)) {
  if (!distance_) throw Error(ErrorKind::Argument, "metric has no distance function");
}

MetricFn MetricFn::exp_abs(Domain domain) {
  return MetricFn(
      std::move(domain), [](const Point& x, const Point& y) { return std::exp(euclidean_distance(x, y)); },
      Flavor::Multiplicative, "exp-abs");
}

MetricFn MetricFn::euclidean(Domain domain) {
  return MetricFn(std::move(domain), euclidean_distance, Flavor::Additive, "abs");
}

DistanceTable MetricFn::tabulate(std::span<const Point> samples) const {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> rows(samples.size(), std::vector<double>(samples.size()));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    labels.push_back(samples[i].to_string());
    for (std::size_t j = 0; j < samples.size(); ++j) rows[i][j] = (*this)(samples[i], samples[j]);
  }
  return DistanceTable(std::move(labels), std::move(rows), flavor_);
}

bool AxiomReport::overall() const noexcept {
  for (const auto& v : verdicts) {
    if (!v.pass) return false;
  }
  return true;
}

const Verdict* AxiomReport::find(std::string_view name) const noexcept {
  for (const auto& v : verdicts) {
    if (v.axiom == name) return &v;
  }
  return nullptr;
}

namespace {

// All checkers scan indices lexicographically and keep the first witness.
template <class Dist>
class Checker {
 public:
  Checker(std::size_t n, Dist dist) : n_(n), dist_(std::move(dist)) {}

  template <class Pred>
  Verdict pairwise(const char* name, Pred ok) const {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (!ok(i, j, dist_(i, j))) return {name, false, {i, j}};
      }
    }
    return {name, true, {}};
  }

  Verdict symmetry() const {
    return pairwise(axiom::kSymmetry, [&](std::size_t i, std::size_t j, double dij) { return dij == dist_(j, i); });
  }

  template <class Pred>
  Verdict triangle(const char* name, Pred ok) const {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        for (std::size_t k = 0; k < n_; ++k) {
          if (!ok(dist_(i, k), dist_(i, j), dist_(j, k))) return {name, false, {i, j, k}};
        }
      }
    }
    return {name, true, {}};
  }

 private:
  std::size_t n_;
  Dist dist_;
};

template <class Dist>
AxiomReport multiplicative_report(std::size_t n, Dist dist) {
  Checker check(n, std::move(dist));
  AxiomReport report{Flavor::Multiplicative, {}, false};
  report.verdicts.push_back(
      check.pairwise(axiom::kLowerBound, [](std::size_t, std::size_t, double p) { return p >= 1.0; }));
  report.verdicts.push_back(check.pairwise(
      axiom::kIdentity, [](std::size_t i, std::size_t j, double p) { return (p == 1.0) == (i == j); }));
  report.verdicts.push_back(check.symmetry());
  report.verdicts.push_back(check.triangle(axiom::kMultiplicativeTriangle, [](double pik, double pij, double pjk) {
    return pik <= pij * pjk * (1.0 + kTolMultiplicative);
  }));
  return report;
}

template <class Dist>
AxiomReport metric_report(std::size_t n, Dist dist) {
  Checker check(n, std::move(dist));
  AxiomReport report{Flavor::Additive, {}, false};
  report.verdicts.push_back(
      check.pairwise(axiom::kNonnegativity, [](std::size_t, std::size_t, double d) { return d >= 0.0; }));
  report.verdicts.push_back(check.pairwise(
      axiom::kIdentity, [](std::size_t i, std::size_t j, double d) { return (d == 0.0) == (i == j); }));
  report.verdicts.push_back(check.symmetry());
  report.verdicts.push_back(check.triangle(
      axiom::kTriangle, [](double dik, double dij, double djk) { return dik <= dij + djk + kTolAdditive; }));
  return report;
}

template <class Dist>
AxiomReport metric_like_report(std::size_t n, Dist dist) {
  Checker check(n, std::move(dist));
  AxiomReport report{Flavor::MetricLike, {}, false};
  report.verdicts.push_back(check.symmetry());
  report.verdicts.push_back(check.pairwise(
      axiom::kZeroImpliesEqual, [](std::size_t i, std::size_t j, double d) { return d != 0.0 || i == j; }));
  report.verdicts.push_back(check.triangle(
      axiom::kTriangle, [](double dik, double dij, double djk) { return dik <= dij + djk + kTolAdditive; }));
  return report;
}

void require_flavor(const DistanceTable& table, Flavor expected) {
  if (table.flavor() != expected) {
    throw Error(ErrorKind::Argument, std::string("expected a ") + to_string(expected) + " table, got " +
                                         to_string(table.flavor()));
  }
}

template <class Dist>
AxiomReport report_for(Flavor flavor, std::size_t n, Dist dist) {
  switch (flavor) {
    case Flavor::Multiplicative: return multiplicative_report(n, std::move(dist));
    case Flavor::Additive: return metric_report(n, std::move(dist));
    case Flavor::MetricLike: return metric_like_report(n, std::move(dist));
  }
  throw Error(ErrorKind::Argument, "unknown flavor");
}

}  // namespace

AxiomReport check_multiplicative_axioms(const DistanceTable& table) {
  require_flavor(table, Flavor::Multiplicative);
  return multiplicative_report(table.size(), [&](std::size_t i, std::size_t j) { return table(i, j); });
}

AxiomReport check_metric_axioms(const DistanceTable& table) {
  require_flavor(table, Flavor::Additive);
  return metric_report(table.size(), [&](std::size_t i, std::size_t j) { return table(i, j); });
}

AxiomReport check_metric_like_axioms(const DistanceTable& table) {
  require_flavor(table, Flavor::MetricLike);
  return metric_like_report(table.size(), [&](std::size_t i, std::size_t j) { return table(i, j); });
}

AxiomReport check_axioms(const DistanceTable& table) {
  return report_for(table.flavor(), table.size(), [&](std::size_t i, std::size_t j) { return table(i, j); });
}

AxiomReport check_sampled_axioms(const MetricFn& metric, std::span<const Point> samples) {
  if (samples.empty()) throw Error(ErrorKind::Argument, "no sample points");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!metric.contains(samples[i])) {
      throw Error(ErrorKind::Domain, "sample " + std::to_string(i) + " lies outside " + describe(metric.domain()), {i});
    }
  }
  const std::size_t n = samples.size();
  std::vector<double> cache(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) cache[i * n + j] = metric(samples[i], samples[j]);
  }
  auto report = report_for(metric.flavor(), n, [&](std::size_t i, std::size_t j) { return cache[i * n + j]; });
  report.sampled = true;
  return report;
}

}  // namespace mmfix
