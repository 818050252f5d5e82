#pragma once

// Finite and function-backed distance structures, and the axiom checkers that
// certify which family (metric, multiplicative metric, metric-like) a table
// belongs to.

#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mmfix/point.hpp"

namespace mmfix {

enum class Flavor { Additive, Multiplicative, MetricLike };

const char* to_string(Flavor flavor) noexcept;
/// Accepts "additive"/"metric", "multiplicative"/"mult", "metric-like".
Flavor parse_flavor(std::string_view name);

/// Slack on computed triangle sums. Identity axioms compare exactly.
inline constexpr double kTolAdditive = 1e-9;
/// Relative slack on the multiplicative triangle: p(i,k) <= p(i,j) p(j,k) (1 + tol).
inline constexpr double kTolMultiplicative = 1e-9;

/// Square symmetric table of pairwise distances with a flavor tag.
///
/// Construction enforces the structural invariants only: square shape,
/// matching label count, finite entries and exact symmetry. Value ranges
/// (p >= 1, d >= 0) are properties the checkers certify, so a table that
/// violates them can still be built and reported on.
class DistanceTable {
 public:
  DistanceTable(std::vector<std::string> labels, std::vector<std::vector<double>> rows, Flavor flavor);

  /// Labels default to "x0", "x1", ...
  static DistanceTable from_rows(std::vector<std::vector<double>> rows, Flavor flavor);

  std::size_t size() const noexcept { return n_; }
  Flavor flavor() const noexcept { return flavor_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * n_ + j]; }
  double at(std::size_t i, std::size_t j) const;

  std::vector<std::vector<double>> rows() const;

  DistanceTable with_flavor(Flavor flavor) const;
  /// Copy with entries (i,j) and (j,i) both set to `value`.
  DistanceTable with_entry(std::size_t i, std::size_t j, double value) const;

  friend bool operator==(const DistanceTable&, const DistanceTable&) = default;

 private:
  DistanceTable() = default;

  std::vector<std::string> labels_;
  std::vector<double> entries_;
  std::size_t n_ = 0;
  Flavor flavor_ = Flavor::Additive;
};

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct VectorSpace {
  std::size_t dim = 1;
  friend bool operator==(const VectorSpace&, const VectorSpace&) = default;
};

using Domain = std::variant<Interval, VectorSpace>;

bool domain_contains(const Domain& domain, const Point& x) noexcept;
std::string describe(const Domain& domain);

/// Distance given by a function on a real domain, for solver use.
class MetricFn {
 public:
  using Distance = std::function<double(const Point&, const Point&)>;

  MetricFn(Domain domain, Distance distance, Flavor flavor, std::string name = "custom");

  /// p(x,y) = exp(|x - y|), the multiplicative image of the euclidean metric.
  static MetricFn exp_abs(Domain domain = Interval{});
  /// d(x,y) = |x - y|.
  static MetricFn euclidean(Domain domain = Interval{});

  double operator()(const Point& x, const Point& y) const { return distance_(x, y); }

  Flavor flavor() const noexcept { return flavor_; }
  const Domain& domain() const noexcept { return domain_; }
  const std::string& name() const noexcept { return name_; }
  bool contains(const Point& x) const noexcept { return domain_contains(domain_, x); }

  /// Tabulates the metric on `samples`, labels carry the coordinates.
  DistanceTable tabulate(std::span<const Point> samples) const;

 private:
  Domain domain_;
  Distance distance_;
  Flavor flavor_;
  std::string name_;
};

struct Verdict {
  std::string axiom;
  bool pass = true;
  /// Empty on pass; a pair (x,y) or a triple (x,y,z) of indices on failure.
  /// Triangle triples read d(x,z) <= d(x,y) + d(y,z).
  std::vector<std::size_t> witness;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

struct AxiomReport {
  Flavor flavor = Flavor::Additive;
  std::vector<Verdict> verdicts;
  /// True when the verdicts come from a finite sample of an infinite domain.
  bool sampled = false;

  bool overall() const noexcept;
  const Verdict* find(std::string_view axiom) const noexcept;

  friend bool operator==(const AxiomReport&, const AxiomReport&) = default;
};

// Axiom names as they appear in reports.
namespace axiom {
inline constexpr const char* kLowerBound = "lower_bound";
inline constexpr const char* kNonnegativity = "nonnegativity";
inline constexpr const char* kIdentity = "identity";
inline constexpr const char* kZeroImpliesEqual = "zero_implies_equal";
inline constexpr const char* kSymmetry = "symmetry";
inline constexpr const char* kTriangle = "triangle";
inline constexpr const char* kMultiplicativeTriangle = "multiplicative_triangle";
}  // namespace axiom

/// p >= 1, p(i,j) == 1 iff i == j, symmetry, p(i,k) <= p(i,j) p(j,k).
AxiomReport check_multiplicative_axioms(const DistanceTable& table);
/// d >= 0, d(i,j) == 0 iff i == j, symmetry, d(i,k) <= d(i,j) + d(j,k).
AxiomReport check_metric_axioms(const DistanceTable& table);
/// Symmetry, d(i,j) == 0 implies i == j, d(i,k) <= d(i,j) + d(j,k).
/// Positive self-distances are allowed.
AxiomReport check_metric_like_axioms(const DistanceTable& table);

/// Dispatches on the table's flavor.
AxiomReport check_axioms(const DistanceTable& table);

/// Spot-checks a function-backed metric on the given sample points. The
/// report is marked sampled; witnesses index into `samples`.
AxiomReport check_sampled_axioms(const MetricFn& metric, std::span<const Point> samples);

}  // namespace mmfix
