#pragma once

// Four self-maps A, B, S, T of a common domain: hypothesis predicates for the
// common fixed point theorem (range inclusion, weak commutativity, weak
// compatibility, contractive condition), a Jungck-type solver and a
// brute-force oracle for finite domains.
//
// Metrics are held in additive form. Multiplicative inputs are log-transformed
// when the system is built; the original is kept for reporting.

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mmfix/banach_solver.hpp"
#include "mmfix/metric_core.hpp"
#include "mmfix/point.hpp"

namespace mmfix {

enum class MapRole { A, B, S, T };
const char* to_string(MapRole role) noexcept;

inline constexpr std::array<MapRole, 4> kAllRoles{MapRole::A, MapRole::B, MapRole::S, MapRole::T};

/// An ordered pair (first, second); commutation compares first(second(x))
/// with second(first(x)).
struct MapPair {
  MapRole first;
  MapRole second;
};
inline constexpr MapPair kPairSA{MapRole::S, MapRole::A};
inline constexpr MapPair kPairTB{MapRole::T, MapRole::B};

/// Finite systems use label indices, numeric systems use points.
using Element = std::variant<std::size_t, Point>;

/// Index maps on {0, ..., n-1}.
struct FiniteMaps {
  std::vector<std::size_t> A, B, S, T;
};

struct NumericMaps {
  SelfMap A, B, S, T;
};

/// Right inverses: A(A_inv(y)) = y and B(B_inv(y)) = y on the relevant ranges.
struct Sections {
  SelfMap A_inv;
  SelfMap B_inv;
};

class FourMapSystem {
 public:
  static FourMapSystem finite(std::shared_ptr<const DistanceTable> metric, FiniteMaps maps);
  static FourMapSystem finite(DistanceTable metric, FiniteMaps maps);
  /// Numeric systems are probed on `probes`; the sections, when present,
  /// certify range inclusion and supply preimages to the solver.
  static FourMapSystem numeric(Interval domain, NumericMaps maps, MetricFn metric, std::vector<Point> probes,
                               std::optional<Sections> sections = std::nullopt);

  bool is_finite() const noexcept;
  /// Number of points (finite) or probes (numeric).
  std::size_t size() const noexcept;
  Flavor source_flavor() const noexcept;

  // Finite systems only.
  const DistanceTable& table() const;
  const DistanceTable& source_table() const;
  const std::shared_ptr<const DistanceTable>& source_table_ptr() const;
  const std::vector<std::size_t>& map(MapRole role) const;

  // Numeric systems only.
  const MetricFn& metric() const;
  const MetricFn& source_metric() const;
  const Interval& domain() const;
  const std::vector<Point>& probes() const;
  const std::optional<Sections>& sections() const;
  const NumericMaps& numeric_maps() const;

  std::size_t apply(MapRole role, std::size_t x) const;
  Point apply(MapRole role, const Point& x) const;
  Element apply(MapRole role, const Element& x) const;

  /// Additive distance between two elements of the matching kind.
  double distance(const Element& x, const Element& y) const;
  /// Label for finite systems, coordinates for numeric ones.
  std::string describe(const Element& x) const;

  /// Whether the caller asserts that one of A, B, S, T is continuous.
  /// Recorded in reports only; it is not machine-checked.
  bool continuity_declared() const noexcept { return continuity_declared_; }
  void declare_continuity(bool declared) noexcept { continuity_declared_ = declared; }

 private:
  struct FiniteData {
    std::shared_ptr<const DistanceTable> source;
    std::shared_ptr<const DistanceTable> working;
    std::array<std::vector<std::size_t>, 4> maps;
  };
  struct NumericData {
    Interval domain;
    NumericMaps maps;
    MetricFn source;
    MetricFn working;
    std::vector<Point> probes;
    std::optional<Sections> sections;
  };

  explicit FourMapSystem(std::variant<FiniteData, NumericData> data) : data_(std::move(data)) {}

  const FiniteData& finite_data() const;
  const NumericData& numeric_data() const;

  std::variant<FiniteData, NumericData> data_;
  bool continuity_declared_ = false;
};

/// phi with phi(t) < t for t > 0. Only the linear kind is verifiable; opaque
/// functions are accepted and reported as unchecked.
class ContractiveModulus {
 public:
  /// phi(t) = lambda * t, lambda in [0, 1).
  static ContractiveModulus linear(double lambda);
  static ContractiveModulus unchecked(std::function<double(double)> phi, std::string name);

  double operator()(double t) const { return lambda_ ? *lambda_ * t : phi_(t); }
  bool is_checked() const noexcept { return lambda_.has_value(); }
  std::optional<double> lambda() const noexcept { return lambda_; }
  const std::string& name() const noexcept { return name_; }

 private:
  ContractiveModulus() = default;

  std::optional<double> lambda_;
  std::function<double(double)> phi_;
  std::string name_;
};

struct CheckResult {
  bool holds = true;
  std::vector<Element> witness;
  std::string detail;

  explicit operator bool() const noexcept { return holds; }
};

/// T(X) in A(X) and S(X) in B(X). On failure the witness is the orphaned image.
/// Numeric systems need sections; without them this throws Unsupported.
CheckResult check_range_inclusion(const FourMapSystem& sys);

/// d(first(second x), second(first x)) <= d(first x, second x) + kTolAdditive
/// for every point (finite) or probe (numeric). Witness: x.
CheckResult check_weak_commutative(MapPair pair, const FourMapSystem& sys);

/// first(second x) == second(first x) at every coincidence point first x == second x.
/// Finite systems compare labels exactly, numeric ones within kTolAdditive. Witness: x.
CheckResult check_weakly_compatible(MapPair pair, const FourMapSystem& sys);

/// max{d(Ax,By), d(Ax,Sx), d(By,Ty), c d(Ax,Ty), c d(By,Sx)} with c = 1/2 when
/// halved, 1 otherwise.
struct MixedMax {
  double value = 0.0;
  std::array<double, 5> terms{};
  bool halved = true;
};
MixedMax mixed_max(const FourMapSystem& sys, const Element& x, const Element& y, bool halved);

/// d(Sx, Ty) <= phi(m(x, y)) + kTolAdditive over all ordered pairs of points
/// (finite) or probes (numeric). Witness: the first violating (x, y).
CheckResult check_contractive_condition(const FourMapSystem& sys, const ContractiveModulus& modulus, bool halved);
CheckResult check_contractive_condition(const FourMapSystem& sys, const ContractiveModulus& modulus, bool halved,
                                        const std::vector<std::pair<Element, Element>>& probes);

enum class HypothesisStatus { Pass, Fail, Unchecked, Declared, Undeclared, Vacuous };
const char* to_string(HypothesisStatus status) noexcept;

struct HypothesisOutcome {
  std::string name;
  HypothesisStatus status = HypothesisStatus::Pass;
  /// Gating outcomes must not be Fail for the solver to run.
  bool gating = true;
  std::vector<Element> witness;
  std::string detail;
};

struct HypothesisReport {
  std::vector<HypothesisOutcome> outcomes;

  bool passed() const noexcept;
  const HypothesisOutcome* find(std::string_view name) const noexcept;
};

/// Runs every predicate the solver relies on, with the halved condition.
HypothesisReport check_hypotheses(const FourMapSystem& sys, const ContractiveModulus& modulus);

enum class CommonOutcome { Converged, HypothesisFailed, MaxIterations };
const char* to_string(CommonOutcome outcome) noexcept;

struct CommonFixedPointResult {
  CommonOutcome outcome = CommonOutcome::HypothesisFailed;
  std::optional<Element> point;
  /// d(Mz, z) for M in A, B, S, T order.
  std::array<double, 4> residuals{};
  /// exp of the additive residuals, present for multiplicative systems.
  std::optional<std::array<double, 4>> residuals_multiplicative;
  std::size_t iterations = 0;
  /// Jungck sequence y_n. Finite systems record label indices as 1-D points.
  IterationTrace trace;
  HypothesisReport hypotheses;

  bool success() const noexcept { return outcome == CommonOutcome::Converged; }
};

/// Jungck iteration y_{2n} = S x_{2n} = B x_{2n+1}, y_{2n+1} = T x_{2n+1} = A x_{2n+2}.
/// Preimages are the smallest index (finite) or come from the sections.
/// Refuses to iterate when a gating hypothesis fails. Stops once
/// d(y_n, y_{n+1}) <= tol and the candidate y_{n+1} is fixed by all four maps
/// (exactly on finite domains, within tol otherwise).
CommonFixedPointResult solve_common_fixed_point(const FourMapSystem& sys, const ContractiveModulus& modulus,
                                                const Element& x0, double tol, std::size_t max_iter);

/// { z : Az = Bz = Sz = Tz = z } by exhaustive scan. Finite systems only.
std::vector<std::size_t> brute_force_common_fixed_points(const FourMapSystem& sys);

/// Multiplicative system with lambda in (0, 1/2), recast over ln p.
///
/// lambda * max{unhalved terms} <= 2 lambda * max{halved terms}, so the
/// multiplicative condition at lambda implies the halved additive condition
/// with modulus Linear(2 lambda), 2 lambda < 1.
struct ReducedSystem {
  FourMapSystem system;
  ContractiveModulus modulus;
  double source_lambda = 0.0;
  double bridge_factor = 2.0;
  bool halved = true;
};

ReducedSystem reduce_multiplicative_system(const FourMapSystem& sys, double lambda);

/// Checks the multiplicative hypotheses (axioms of p, unhalved condition at
/// lambda), reduces, solves in additive form and reports residuals in both
/// flavors.
CommonFixedPointResult solve_multiplicative_common_fixed_point(const FourMapSystem& sys, double lambda,
                                                               const Element& x0, double tol, std::size_t max_iter);

}  // namespace mmfix
