#include "mmfix/common_fixed_point.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mmfix/duality.hpp"
#include "mmfix/error.hpp"

namespace mmfix {

const char* to_string(MapRole role) noexcept {
  switch (role) {
    case MapRole::A: return "A";
    case MapRole::B: return "B";
    case MapRole::S: return "S";
    case MapRole::T: return "T";
  }
  return "?";
}

const char* to_string(HypothesisStatus status) noexcept {
  switch (status) {
    case HypothesisStatus::Pass: return "pass";
    case HypothesisStatus::Fail: return "fail";
    case HypothesisStatus::Unchecked: return "unchecked";
    case HypothesisStatus::Declared: return "declared";
    case HypothesisStatus::Undeclared: return "undeclared";
    case HypothesisStatus::Vacuous: return "vacuous";
  }
  return "unknown";
}

const char* to_string(CommonOutcome outcome) noexcept {
  switch (outcome) {
    case CommonOutcome::Converged: return "converged";
    case CommonOutcome::HypothesisFailed: return "hypothesis_failed";
    case CommonOutcome::MaxIterations: return "max_iterations";
  }
  return "unknown";
}

namespace {

constexpr std::size_t role_index(MapRole role) noexcept { return static_cast<std::size_t>(role); }

std::string pair_name(MapPair pair) { return std::string(to_string(pair.first)) + to_string(pair.second); }

const SelfMap& select(const NumericMaps& maps, MapRole role) {
  switch (role) {
    case MapRole::A: return maps.A;
    case MapRole::B: return maps.B;
    case MapRole::S: return maps.S;
    case MapRole::T: return maps.T;
  }
  return maps.A;
}

}  // namespace

// ---------------------------------------------------------------------------
// FourMapSystem

FourMapSystem FourMapSystem::finite(std::shared_ptr<const DistanceTable> metric, FiniteMaps maps) {
  if (!metric) throw Error(ErrorKind::Argument, "finite system has no metric table");
  const std::size_t n = metric->size();
  std::array<std::vector<std::size_t>, 4> arr{std::move(maps.A), std::move(maps.B), std::move(maps.S),
                                              std::move(maps.T)};
  for (MapRole role : kAllRoles) {
    const auto& m = arr[role_index(role)];
    if (m.size() != n) {
      throw Error(ErrorKind::Structural, std::string("map ") + to_string(role) + " has " + std::to_string(m.size()) +
                                             " entries, domain has " + std::to_string(n));
    }
    for (std::size_t x = 0; x < n; ++x) {
      if (m[x] >= n) {
        throw Error(ErrorKind::Domain, std::string("map ") + to_string(role) + " sends " + std::to_string(x) +
                                           " outside the domain",
                    {x});
      }
    }
  }
  std::shared_ptr<const DistanceTable> working = metric;
  if (metric->flavor() == Flavor::Multiplicative) working = std::make_shared<const DistanceTable>(log_transform(*metric));
  return FourMapSystem(FiniteData{std::move(metric), std::move(working), std::move(arr)});
}

FourMapSystem FourMapSystem::finite(DistanceTable metric, FiniteMaps maps) {
  return finite(std::make_shared<const DistanceTable>(std::move(metric)), std::move(maps));
}

FourMapSystem FourMapSystem::numeric(Interval domain, NumericMaps maps, MetricFn metric, std::vector<Point> probes,
                                     std::optional<Sections> sections) {
  if (!(domain.lo <= domain.hi)) throw Error(ErrorKind::Argument, "empty interval domain");
  if (!maps.A || !maps.B || !maps.S || !maps.T) throw Error(ErrorKind::Argument, "numeric system is missing a map");
  if (sections && (!sections->A_inv || !sections->B_inv)) {
    throw Error(ErrorKind::Argument, "sections must provide both A_inv and B_inv");
  }
  if (probes.empty()) throw Error(ErrorKind::Argument, "numeric system needs at least one probe point");
  const Domain dom = domain;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    if (!domain_contains(dom, probes[i])) {
      throw Error(ErrorKind::Domain, "probe " + probes[i].to_string() + " lies outside " + mmfix::describe(dom), {i});
    }
    for (MapRole role : kAllRoles) {
      const Point image = select(maps, role)(probes[i]);
      if (!domain_contains(dom, image)) {
        throw Error(ErrorKind::Domain, std::string("map ") + to_string(role) + " sends probe " +
                                           probes[i].to_string() + " to " + image.to_string() + " outside " +
                                           mmfix::describe(dom),
                    {i});
      }
    }
  }
  MetricFn working = metric.flavor() == Flavor::Multiplicative ? log_transform(metric) : metric;
  return FourMapSystem(NumericData{domain, std::move(maps), std::move(metric), std::move(working), std::move(probes),
                                   std::move(sections)});
}

bool FourMapSystem::is_finite() const noexcept { return std::holds_alternative<FiniteData>(data_); }

std::size_t FourMapSystem::size() const noexcept {
  if (const auto* f = std::get_if<FiniteData>(&data_)) return f->working->size();
  return std::get<NumericData>(data_).probes.size();
}

Flavor FourMapSystem::source_flavor() const noexcept {
  if (const auto* f = std::get_if<FiniteData>(&data_)) return f->source->flavor();
  return std::get<NumericData>(data_).source.flavor();
}

const FourMapSystem::FiniteData& FourMapSystem::finite_data() const {
  if (const auto* f = std::get_if<FiniteData>(&data_)) return *f;
  throw Error(ErrorKind::Unsupported, "operation requires a finite domain");
}

const FourMapSystem::NumericData& FourMapSystem::numeric_data() const {
  if (const auto* n = std::get_if<NumericData>(&data_)) return *n;
  throw Error(ErrorKind::Unsupported, "operation requires a numeric domain");
}

const DistanceTable& FourMapSystem::table() const { return *finite_data().working; }
const DistanceTable& FourMapSystem::source_table() const { return *finite_data().source; }
const std::shared_ptr<const DistanceTable>& FourMapSystem::source_table_ptr() const { return finite_data().source; }
const std::vector<std::size_t>& FourMapSystem::map(MapRole role) const { return finite_data().maps[role_index(role)]; }
const MetricFn& FourMapSystem::metric() const { return numeric_data().working; }
const MetricFn& FourMapSystem::source_metric() const { return numeric_data().source; }
const Interval& FourMapSystem::domain() const { return numeric_data().domain; }
const std::vector<Point>& FourMapSystem::probes() const { return numeric_data().probes; }
const std::optional<Sections>& FourMapSystem::sections() const { return numeric_data().sections; }
const NumericMaps& FourMapSystem::numeric_maps() const { return numeric_data().maps; }

std::size_t FourMapSystem::apply(MapRole role, std::size_t x) const {
  const auto& m = map(role);
  if (x >= m.size()) throw Error(ErrorKind::Argument, "element index " + std::to_string(x) + " outside the domain");
  return m[x];
}

Point FourMapSystem::apply(MapRole role, const Point& x) const { return select(numeric_maps(), role)(x); }

Element FourMapSystem::apply(MapRole role, const Element& x) const {
  if (const auto* i = std::get_if<std::size_t>(&x)) return apply(role, *i);
  return apply(role, std::get<Point>(x));
}

double FourMapSystem::distance(const Element& x, const Element& y) const {
  if (is_finite()) {
    const auto* i = std::get_if<std::size_t>(&x);
    const auto* j = std::get_if<std::size_t>(&y);
    if (!i || !j) throw Error(ErrorKind::Argument, "finite system expects index elements");
    return table().at(*i, *j);
  }
  const auto* p = std::get_if<Point>(&x);
  const auto* q = std::get_if<Point>(&y);
  if (!p || !q) throw Error(ErrorKind::Argument, "numeric system expects point elements");
  return metric()(*p, *q);
}

std::string FourMapSystem::describe(const Element& x) const {
  if (const auto* i = std::get_if<std::size_t>(&x)) {
    if (is_finite() && *i < size()) return source_table().labels()[*i];
    return std::to_string(*i);
  }
  return std::get<Point>(x).to_string();
}

// ---------------------------------------------------------------------------
// ContractiveModulus

ContractiveModulus ContractiveModulus::linear(double lambda) {
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    throw Error(ErrorKind::Argument, "linear modulus needs lambda in [0, 1), got " + Point(lambda).to_string());
  }
  ContractiveModulus m;
  m.lambda_ = lambda;
  m.name_ = "linear(" + Point(lambda).to_string() + ")";
  return m;
}

ContractiveModulus ContractiveModulus::unchecked(std::function<double(double)> phi, std::string name) {
  if (!phi) throw Error(ErrorKind::Argument, "modulus has no function");
  ContractiveModulus m;
  m.phi_ = std::move(phi);
  m.name_ = std::move(name);
  return m;
}

// ---------------------------------------------------------------------------
// Predicates, written once over a view of the domain.

namespace {

struct FiniteView {
  const DistanceTable& d;
  const FourMapSystem& sys;

  using E = std::size_t;

  std::size_t count() const { return d.size(); }
  E element(std::size_t i) const { return i; }
  E apply(MapRole role, E x) const { return sys.map(role)[x]; }
  double dist(E x, E y) const { return d(x, y); }
  bool same(E x, E y) const { return x == y; }
  static Element wrap(E x) { return x; }
  static Point trace_point(E x) { return Point(static_cast<double>(x)); }
};

struct NumericView {
  const MetricFn& d;
  const NumericMaps& maps;
  const std::vector<Point>& probes;

  using E = Point;

  std::size_t count() const { return probes.size(); }
  const E& element(std::size_t i) const { return probes[i]; }
  E apply(MapRole role, const E& x) const { return select(maps, role)(x); }
  double dist(const E& x, const E& y) const { return d(x, y); }
  bool same(const E& x, const E& y) const { return d(x, y) <= kTolAdditive; }
  static Element wrap(const E& x) { return x; }
  static Point trace_point(const E& x) { return x; }
};

FiniteView finite_view(const FourMapSystem& sys) { return {sys.table(), sys}; }
NumericView numeric_view(const FourMapSystem& sys) { return {sys.metric(), sys.numeric_maps(), sys.probes()}; }

template <class View>
CheckResult weak_commutative(const View& v, MapPair pair) {
  for (std::size_t i = 0; i < v.count(); ++i) {
    const auto& x = v.element(i);
    const auto fx = v.apply(pair.first, x);
    const auto gx = v.apply(pair.second, x);
    const double lhs = v.dist(v.apply(pair.first, gx), v.apply(pair.second, fx));
    const double rhs = v.dist(fx, gx);
    if (!(lhs <= rhs + kTolAdditive)) {
      return {false, {View::wrap(x)}, "d(" + pair_name(pair) + "x, " + pair_name({pair.second, pair.first}) + "x) > d(" +
                                          to_string(pair.first) + "x, " + to_string(pair.second) + "x)"};
    }
  }
  return {};
}

template <class View>
CheckResult weakly_compatible(const View& v, MapPair pair) {
  for (std::size_t i = 0; i < v.count(); ++i) {
    const auto& x = v.element(i);
    const auto fx = v.apply(pair.first, x);
    const auto gx = v.apply(pair.second, x);
    if (!v.same(fx, gx)) continue;
    if (!v.same(v.apply(pair.first, gx), v.apply(pair.second, fx))) {
      return {false, {View::wrap(x)}, "coincidence point where " + pair_name(pair) + "x != " +
                                          pair_name({pair.second, pair.first}) + "x"};
    }
  }
  return {};
}

template <class View, class E>
MixedMax mixed(const View& v, const E& x, const E& y, bool halved) {
  const auto ax = v.apply(MapRole::A, x);
  const auto by = v.apply(MapRole::B, y);
  const auto sx = v.apply(MapRole::S, x);
  const auto ty = v.apply(MapRole::T, y);
  const double c = halved ? 0.5 : 1.0;
  MixedMax m;
  m.halved = halved;
  m.terms = {v.dist(ax, by), v.dist(ax, sx), v.dist(by, ty), c * v.dist(ax, ty), c * v.dist(by, sx)};
  m.value = *std::max_element(m.terms.begin(), m.terms.end());
  return m;
}

template <class View, class E>
bool contractive_at(const View& v, const ContractiveModulus& modulus, bool halved, const E& x, const E& y) {
  const double lhs = v.dist(v.apply(MapRole::S, x), v.apply(MapRole::T, y));
  return lhs <= modulus(mixed(v, x, y, halved).value) + kTolAdditive;
}

template <class View>
CheckResult contractive_all_pairs(const View& v, const ContractiveModulus& modulus, bool halved) {
  for (std::size_t i = 0; i < v.count(); ++i) {
    for (std::size_t j = 0; j < v.count(); ++j) {
      if (!contractive_at(v, modulus, halved, v.element(i), v.element(j))) {
        return {false, {View::wrap(v.element(i)), View::wrap(v.element(j))}, "d(Sx, Ty) > phi(m(x, y))"};
      }
    }
  }
  return {};
}

template <class E>
const E& as(const Element& e) {
  if (const auto* p = std::get_if<E>(&e)) return *p;
  throw Error(ErrorKind::Argument, "element kind does not match the system's domain");
}

}  // namespace

CheckResult check_range_inclusion(const FourMapSystem& sys) {
  if (sys.is_finite()) {
    const std::size_t n = sys.size();
    const auto contained = [&](MapRole image_of, MapRole within) -> std::optional<std::size_t> {
      std::vector<bool> range(n, false);
      for (std::size_t x = 0; x < n; ++x) range[sys.map(within)[x]] = true;
      for (std::size_t x = 0; x < n; ++x) {
        if (!range[sys.map(image_of)[x]]) return sys.map(image_of)[x];
      }
      return std::nullopt;
    };
    if (auto orphan = contained(MapRole::T, MapRole::A)) return {false, {*orphan}, "T(X) not contained in A(X)"};
    if (auto orphan = contained(MapRole::S, MapRole::B)) return {false, {*orphan}, "S(X) not contained in B(X)"};
    return {};
  }

  const auto& sections = sys.sections();
  if (!sections) {
    throw Error(ErrorKind::Unsupported, "range inclusion on a numeric domain needs sections of A and B");
  }
  const auto& maps = sys.numeric_maps();
  const Domain dom = sys.domain();
  const auto covered = [&](const Point& y, const SelfMap& map, const SelfMap& section) {
    const Point u = section(y);
    return domain_contains(dom, u) && sys.metric()(map(u), y) <= kTolAdditive;
  };
  for (const auto& x : sys.probes()) {
    const Point y = maps.T(x);
    if (!covered(y, maps.A, sections->A_inv)) return {false, {y}, "T(X) not contained in A(X)"};
  }
  for (const auto& x : sys.probes()) {
    const Point y = maps.S(x);
    if (!covered(y, maps.B, sections->B_inv)) return {false, {y}, "S(X) not contained in B(X)"};
  }
  return {};
}

CheckResult check_weak_commutative(MapPair pair, const FourMapSystem& sys) {
  if (sys.is_finite()) return weak_commutative(finite_view(sys), pair);
  return weak_commutative(numeric_view(sys), pair);
}

CheckResult check_weakly_compatible(MapPair pair, const FourMapSystem& sys) {
  if (sys.is_finite()) return weakly_compatible(finite_view(sys), pair);
  return weakly_compatible(numeric_view(sys), pair);
}

MixedMax mixed_max(const FourMapSystem& sys, const Element& x, const Element& y, bool halved) {
  if (sys.is_finite()) {
    const auto i = as<std::size_t>(x);
    const auto j = as<std::size_t>(y);
    if (i >= sys.size() || j >= sys.size()) throw Error(ErrorKind::Argument, "element index outside the domain");
    return mixed(finite_view(sys), i, j, halved);
  }
  return mixed(numeric_view(sys), as<Point>(x), as<Point>(y), halved);
}

CheckResult check_contractive_condition(const FourMapSystem& sys, const ContractiveModulus& modulus, bool halved) {
  if (sys.is_finite()) return contractive_all_pairs(finite_view(sys), modulus, halved);
  return contractive_all_pairs(numeric_view(sys), modulus, halved);
}

CheckResult check_contractive_condition(const FourMapSystem& sys, const ContractiveModulus& modulus, bool halved,
                                        const std::vector<std::pair<Element, Element>>& probes) {
  if (probes.empty()) throw Error(ErrorKind::Argument, "contractive condition needs at least one probe pair");
  for (const auto& [x, y] : probes) {
    const bool ok = sys.is_finite()
                        ? contractive_at(finite_view(sys), modulus, halved, as<std::size_t>(x), as<std::size_t>(y))
                        : contractive_at(numeric_view(sys), modulus, halved, as<Point>(x), as<Point>(y));
    if (!ok) return {false, {x, y}, "d(Sx, Ty) > phi(m(x, y))"};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Hypothesis report

bool HypothesisReport::passed() const noexcept {
  return std::none_of(outcomes.begin(), outcomes.end(),
                      [](const auto& o) { return o.gating && o.status == HypothesisStatus::Fail; });
}

const HypothesisOutcome* HypothesisReport::find(std::string_view name) const noexcept {
  for (const auto& o : outcomes) {
    if (o.name == name) return &o;
  }
  return nullptr;
}

namespace {

HypothesisOutcome from_check(std::string name, const CheckResult& r, bool gating) {
  return {std::move(name), r.holds ? HypothesisStatus::Pass : HypothesisStatus::Fail, gating, r.witness, r.detail};
}

}  // namespace

HypothesisReport check_hypotheses(const FourMapSystem& sys, const ContractiveModulus& modulus) {
  HypothesisReport report;
  report.outcomes.push_back(from_check("range_inclusion", check_range_inclusion(sys), true));
  for (MapPair pair : {kPairSA, kPairTB}) {
    report.outcomes.push_back(
        from_check("weakly_compatible_" + pair_name(pair), check_weakly_compatible(pair, sys), true));
  }
  for (MapPair pair : {kPairSA, kPairTB}) {
    report.outcomes.push_back(
        from_check("weak_commutative_" + pair_name(pair), check_weak_commutative(pair, sys), false));
  }
  report.outcomes.push_back(
      from_check("contractive_condition", check_contractive_condition(sys, modulus, /*halved=*/true), true));

  HypothesisOutcome mod{"contractive_modulus", HypothesisStatus::Pass, false, {}, modulus.name()};
  if (!modulus.is_checked()) {
    mod.status = HypothesisStatus::Unchecked;
    mod.detail += ": phi(t) < t and upper semicontinuity are not verified";
  }
  report.outcomes.push_back(std::move(mod));

  HypothesisOutcome continuity{"continuity", HypothesisStatus::Vacuous, false, {}, "finite discrete domain"};
  if (!sys.is_finite()) {
    continuity.status = sys.continuity_declared() ? HypothesisStatus::Declared : HypothesisStatus::Undeclared;
    continuity.detail = "caller declaration; not machine-checked";
  }
  report.outcomes.push_back(std::move(continuity));
  return report;
}

// ---------------------------------------------------------------------------
// Solver

namespace {

template <class View, class Preimage>
void jungck(const View& v, const ContractiveModulus& modulus, const typename View::E& x0, double tol,
            std::size_t max_iter, Preimage preimage, CommonFixedPointResult& result) {
  using E = typename View::E;
  E y = v.apply(MapRole::S, x0);
  result.trace = start_trace(View::trace_point(y), modulus.lambda());
  auto& trace = result.trace;

  for (std::size_t step = 1; step <= max_iter; ++step) {
    // Odd steps go through B and T, even steps through A and S.
    const bool odd = step % 2 == 1;
    const E x = preimage(odd ? MapRole::B : MapRole::A, y);
    E next = v.apply(odd ? MapRole::T : MapRole::S, x);
    const double d = v.dist(y, next);
    if (!std::isfinite(d)) throw Error(ErrorKind::Numeric, "non-finite distance at Jungck step " + std::to_string(step));
    trace.push(View::trace_point(next), d);

    if (d <= tol || v.same(y, next)) {
      bool fixed = true;
      for (MapRole role : kAllRoles) {
        const E image = v.apply(role, next);
        result.residuals[role_index(role)] = v.dist(image, next);
        if constexpr (std::is_same_v<E, std::size_t>) {
          fixed = fixed && image == next;
        } else {
          fixed = fixed && result.residuals[role_index(role)] <= tol;
        }
      }
      if (fixed) {
        trace.stop_reason = StopReason::Converged;
        result.outcome = CommonOutcome::Converged;
        result.point = View::wrap(next);
        break;
      }
    }
    y = std::move(next);
  }
  result.iterations = trace.steps();
}

}  // namespace

CommonFixedPointResult solve_common_fixed_point(const FourMapSystem& sys, const ContractiveModulus& modulus,
                                                const Element& x0, double tol, std::size_t max_iter) {
  if (!(tol > 0.0)) throw Error(ErrorKind::Argument, "tolerance must be positive");
  if (max_iter < 1) throw Error(ErrorKind::Argument, "max_iter must be at least 1");

  CommonFixedPointResult result;
  result.hypotheses = check_hypotheses(sys, modulus);
  if (!result.hypotheses.passed()) {
    result.outcome = CommonOutcome::HypothesisFailed;
    return result;
  }
  result.outcome = CommonOutcome::MaxIterations;

  if (sys.is_finite()) {
    const std::size_t start = as<std::size_t>(x0);
    const std::size_t n = sys.size();
    if (start >= n) throw Error(ErrorKind::Argument, "starting index outside the domain");
    // Smallest preimage of each value under A and B.
    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    std::array<std::vector<std::size_t>, 2> first_preimage{std::vector<std::size_t>(n, kNone),
                                                           std::vector<std::size_t>(n, kNone)};
    for (std::size_t x = n; x-- > 0;) {
      first_preimage[0][sys.map(MapRole::A)[x]] = x;
      first_preimage[1][sys.map(MapRole::B)[x]] = x;
    }
    const auto preimage = [&](MapRole role, std::size_t y) {
      const std::size_t u = first_preimage[role == MapRole::A ? 0 : 1][y];
      if (u == kNone) {
        throw Error(ErrorKind::Solver, std::string("no ") + to_string(role) + "-preimage for " +
                                           sys.source_table().labels()[y],
                    {y});
      }
      return u;
    };
    jungck(finite_view(sys), modulus, start, tol, max_iter, preimage, result);
    return result;
  }

  const Point& start = as<Point>(x0);
  const Domain dom = sys.domain();
  if (!domain_contains(dom, start)) throw Error(ErrorKind::Argument, "starting point outside the domain");
  const auto& sections = *sys.sections();  // range inclusion passed, so sections exist
  const auto preimage = [&](MapRole role, const Point& y) {
    const SelfMap& section = role == MapRole::A ? sections.A_inv : sections.B_inv;
    Point u = section(y);
    if (!domain_contains(dom, u) || !(sys.metric()(sys.apply(role, u), y) <= kTolAdditive)) {
      throw Error(ErrorKind::Solver, std::string("section of ") + to_string(role) + " gives no preimage for " +
                                         y.to_string());
    }
    return u;
  };
  jungck(numeric_view(sys), modulus, start, tol, max_iter, preimage, result);
  return result;
}

std::vector<std::size_t> brute_force_common_fixed_points(const FourMapSystem& sys) {
  if (!sys.is_finite()) throw Error(ErrorKind::Unsupported, "brute force needs a finite domain");
  std::vector<std::size_t> out;
  for (std::size_t z = 0; z < sys.size(); ++z) {
    if (std::all_of(kAllRoles.begin(), kAllRoles.end(), [&](MapRole r) { return sys.map(r)[z] == z; })) {
      out.push_back(z);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Multiplicative systems

namespace {

void require_half_open_lambda(double lambda) {
  if (!(lambda > 0.0 && lambda < 0.5)) {
    throw Error(ErrorKind::Argument,
                "multiplicative contraction factor must lie in (0, 1/2), got " + Point(lambda).to_string());
  }
}

AxiomReport source_axioms(const FourMapSystem& sys) {
  if (sys.is_finite()) return check_multiplicative_axioms(sys.source_table());
  auto report = check_sampled_axioms(sys.source_metric(), sys.probes());
  return report;
}

HypothesisOutcome axioms_outcome(const FourMapSystem& sys) {
  const AxiomReport report = source_axioms(sys);
  HypothesisOutcome out{"multiplicative_metric_axioms", HypothesisStatus::Pass, true, {}, ""};
  out.detail = report.sampled ? "sampled on probes" : "exhaustive";
  for (const auto& v : report.verdicts) {
    if (v.pass) continue;
    out.status = HypothesisStatus::Fail;
    out.detail = v.axiom;
    for (std::size_t idx : v.witness) {
      if (sys.is_finite()) {
        out.witness.emplace_back(idx);
      } else {
        out.witness.emplace_back(sys.probes()[idx]);
      }
    }
    break;
  }
  return out;
}

}  // namespace

ReducedSystem reduce_multiplicative_system(const FourMapSystem& sys, double lambda) {
  require_half_open_lambda(lambda);
  if (sys.source_flavor() != Flavor::Multiplicative) {
    throw Error(ErrorKind::Argument, "reduction expects a system over a multiplicative metric");
  }
  const HypothesisOutcome axioms = axioms_outcome(sys);
  if (axioms.status == HypothesisStatus::Fail) {
    throw Error(ErrorKind::Argument, "metric is not a multiplicative metric: " + axioms.detail + " fails");
  }

  ContractiveModulus modulus = ContractiveModulus::linear(2.0 * lambda);
  if (sys.is_finite()) {
    FiniteMaps maps{sys.map(MapRole::A), sys.map(MapRole::B), sys.map(MapRole::S), sys.map(MapRole::T)};
    auto reduced = FourMapSystem::finite(log_transform(sys.source_table()), std::move(maps));
    reduced.declare_continuity(sys.continuity_declared());
    return {std::move(reduced), std::move(modulus), lambda};
  }
  auto reduced = FourMapSystem::numeric(sys.domain(), sys.numeric_maps(), log_transform(sys.source_metric()),
                                        sys.probes(), sys.sections());
  reduced.declare_continuity(sys.continuity_declared());
  return {std::move(reduced), std::move(modulus), lambda};
}

CommonFixedPointResult solve_multiplicative_common_fixed_point(const FourMapSystem& sys, double lambda,
                                                               const Element& x0, double tol, std::size_t max_iter) {
  require_half_open_lambda(lambda);
  if (sys.source_flavor() != Flavor::Multiplicative) {
    throw Error(ErrorKind::Argument, "expected a system over a multiplicative metric");
  }

  std::vector<HypothesisOutcome> pre;
  pre.push_back(axioms_outcome(sys));
  // The system already holds ln p, so the unhalved check there is the
  // multiplicative inequality p(Sx,Ty) <= max{...}^lambda in log form.
  const CheckResult unhalved = check_contractive_condition(sys, ContractiveModulus::linear(lambda), /*halved=*/false);
  pre.push_back(from_check("multiplicative_contractive_condition", unhalved, true));
  const std::string bridge = "unhalved condition at lambda = " + Point(lambda).to_string() +
                             " implies the halved condition with linear(" + Point(2.0 * lambda).to_string() + ")";
  if (unhalved.holds) {
    CheckResult halved = check_contractive_condition(sys, ContractiveModulus::linear(2.0 * lambda), /*halved=*/true);
    halved.detail = bridge;
    pre.push_back(from_check("reduction_bridge", halved, false));
  } else {
    pre.push_back({"reduction_bridge", HypothesisStatus::Vacuous, false, {}, bridge + "; unhalved condition fails"});
  }

  const bool pre_ok = std::none_of(pre.begin(), pre.end(),
                                   [](const auto& o) { return o.gating && o.status == HypothesisStatus::Fail; });

  CommonFixedPointResult result;
  if (pre_ok) {
    const ReducedSystem reduced = reduce_multiplicative_system(sys, lambda);
    result = solve_common_fixed_point(reduced.system, reduced.modulus, x0, tol, max_iter);
  } else {
    result.outcome = CommonOutcome::HypothesisFailed;
    result.hypotheses = check_hypotheses(sys, ContractiveModulus::linear(2.0 * lambda));
  }
  result.hypotheses.outcomes.insert(result.hypotheses.outcomes.begin(), pre.begin(), pre.end());

  std::array<double, 4> mult{};
  for (std::size_t i = 0; i < 4; ++i) mult[i] = std::exp(result.residuals[i]);
  result.residuals_multiplicative = mult;
  return result;
}

}  // namespace mmfix
