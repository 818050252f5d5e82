#include "mmfix/manifest.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

#include "mmfix/error.hpp"
#include "mmfix/io.hpp"

namespace mmfix {

using json = nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::Schema, (path.empty() ? std::string("$") : path) + ": " + what);
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

const json& member(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) schema_error(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) schema_error(join(path, key), "missing");
  return *it;
}

const json* optional_member(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) schema_error(path, "expected an object");
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) schema_error(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) schema_error(path, "expected a finite number");
  return v;
}

std::string string(const json& j, const std::string& path) {
  if (!j.is_string()) schema_error(path, "expected a string");
  return j.get<std::string>();
}

std::size_t count(const json& j, const std::string& path) {
  if (!j.is_number_unsigned()) schema_error(path, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

std::size_t label_index(const json& j, const std::vector<std::string>& labels, const std::string& path) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == s) return i;
    }
    schema_error(path, "unknown label '" + s + "'");
  }
  const std::size_t i = count(j, path);
  if (i >= labels.size()) schema_error(path, "index " + std::to_string(i) + " outside the domain");
  return i;
}

SelfMap builtin_map(const json& j, const std::string& path) {
  const std::string kind = string(member(j, "kind", path), path + ".kind");
  if (kind == "affine") {
    const double a = number(member(j, "a", path), path + ".a");
    const double b = number(member(j, "b", path), path + ".b");
    return [a, b](const Point& x) { return Point(a * x.scalar() + b); };
  }
  if (kind == "constant") {
    const double c = number(member(j, "c", path), path + ".c");
    return [c](const Point&) { return Point(c); };
  }
  if (kind == "identity") return [](const Point& x) { return x; };
  schema_error(path + ".kind", "unknown map kind '" + kind + "' (expected affine, constant or identity)");
}

std::string read_text(const std::filesystem::path& path, const std::string& field) {
  std::ifstream in(path, std::ios::binary);
  if (!in) schema_error(field, "cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Flavor flavor_field(const json& metric, const std::string& path) {
  const std::string name = string(member(metric, "flavor", path), path + ".flavor");
  if (name == "metric" || name == "additive") return Flavor::Additive;
  if (name == "mult" || name == "multiplicative") return Flavor::Multiplicative;
  if (name == "metric-like") return Flavor::MetricLike;
  schema_error(path + ".flavor", "unknown flavor '" + name + "'");
}

DistanceTable finite_metric(const json& metric, const std::vector<std::string>& labels,
                            const std::filesystem::path& base_dir) {
  const Flavor flavor = flavor_field(metric, "metric");
  std::vector<std::vector<double>> rows;
  if (const json* file = optional_member(metric, "file", "metric")) {
    auto path = std::filesystem::path(string(*file, "metric.file"));
    if (path.is_relative()) path = base_dir / path;
    try {
      rows = parse_table_csv(read_text(path, "metric.file"), flavor).rows();
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Schema) throw;
      schema_error("metric.file", e.what());
    }
  } else if (const json* inline_rows = optional_member(metric, "rows", "metric")) {
    if (!inline_rows->is_array()) schema_error("metric.rows", "expected an array of rows");
    for (std::size_t i = 0; i < inline_rows->size(); ++i) {
      const auto& row = (*inline_rows)[i];
      const std::string rp = "metric.rows[" + std::to_string(i) + "]";
      if (!row.is_array()) schema_error(rp, "expected an array");
      std::vector<double> values;
      for (std::size_t j = 0; j < row.size(); ++j) values.push_back(number(row[j], rp + "[" + std::to_string(j) + "]"));
      rows.push_back(std::move(values));
    }
  } else {
    schema_error("metric", "finite domains need 'file' or 'rows'");
  }
  if (rows.size() != labels.size()) {
    schema_error("metric", "table has " + std::to_string(rows.size()) + " points, domain.labels has " +
                               std::to_string(labels.size()));
  }
  try {
    return DistanceTable(labels, std::move(rows), flavor);
  } catch (const Error& e) {
    schema_error("metric", e.what());
  }
}

double modulus_lambda(const json& root, Flavor flavor) {
  const json& modulus = member(root, "modulus", "");
  const std::string kind = string(member(modulus, "kind", "modulus"), "modulus.kind");
  if (kind != "linear") schema_error("modulus.kind", "only 'linear' is supported");
  const double lambda = number(member(modulus, "lambda", "modulus"), "modulus.lambda");
  if (flavor == Flavor::Multiplicative) {
    if (!(lambda > 0.0 && lambda < 0.5)) schema_error("modulus.lambda", "multiplicative systems need lambda in (0, 1/2)");
  } else if (!(lambda >= 0.0 && lambda < 1.0)) {
    schema_error("modulus.lambda", "linear modulus needs lambda in [0, 1)");
  }
  return lambda;
}

bool continuity(const json& root) {
  const json* c = optional_member(root, "continuity_declared", "");
  if (!c) return false;
  if (!c->is_boolean()) schema_error("continuity_declared", "expected a boolean");
  return c->get<bool>();
}

CommonProblem finite_problem(const json& root, const json& domain, const std::filesystem::path& base_dir) {
  const json& labels_json = member(domain, "labels", "domain");
  if (!labels_json.is_array() || labels_json.empty()) schema_error("domain.labels", "expected a nonempty array");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < labels_json.size(); ++i) {
    labels.push_back(string(labels_json[i], "domain.labels[" + std::to_string(i) + "]"));
  }

  const json& maps = member(root, "maps", "");
  std::array<std::vector<std::size_t>, 4> arr;
  for (MapRole role : kAllRoles) {
    const std::string path = std::string("maps.") + to_string(role);
    const json& m = member(maps, to_string(role), "maps");
    if (!m.is_array()) schema_error(path, "finite maps are arrays of indices or labels");
    if (m.size() != labels.size()) {
      schema_error(path, "has " + std::to_string(m.size()) + " entries, domain has " + std::to_string(labels.size()));
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      arr[static_cast<std::size_t>(role)].push_back(label_index(m[i], labels, path + "[" + std::to_string(i) + "]"));
    }
  }

  DistanceTable table = finite_metric(member(root, "metric", ""), labels, base_dir);
  const Flavor flavor = table.flavor();
  if (flavor == Flavor::Multiplicative) {
    for (std::size_t i = 0; i < table.size(); ++i) {
      for (std::size_t j = 0; j < table.size(); ++j) {
        if (table(i, j) < 1.0) {
          schema_error("metric", "multiplicative entry below 1 at (" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
      }
    }
  }
  std::size_t x0 = 0;
  if (const json* x = optional_member(root, "x0", "")) x0 = label_index(*x, labels, "x0");

  CommonProblem problem{
      FourMapSystem::finite(std::move(table), FiniteMaps{std::move(arr[0]), std::move(arr[1]), std::move(arr[2]),
                                                         std::move(arr[3])}),
      modulus_lambda(root, flavor), x0};
  problem.system.declare_continuity(continuity(root));
  return problem;
}

CommonProblem interval_problem(const json& root, const json& domain, std::uint64_t seed) {
  const Interval iv{number(member(domain, "lo", "domain"), "domain.lo"), number(member(domain, "hi", "domain"), "domain.hi")};
  if (!(iv.lo <= iv.hi)) schema_error("domain", "lo must not exceed hi");

  const json& maps = member(root, "maps", "");
  NumericMaps nm{builtin_map(member(maps, "A", "maps"), "maps.A"), builtin_map(member(maps, "B", "maps"), "maps.B"),
                 builtin_map(member(maps, "S", "maps"), "maps.S"), builtin_map(member(maps, "T", "maps"), "maps.T")};

  const json& metric = member(root, "metric", "");
  const std::string builtin = string(member(metric, "builtin", "metric"), "metric.builtin");
  std::optional<MetricFn> fn;
  if (builtin == "exp-abs") {
    fn = MetricFn::exp_abs(iv);
  } else if (builtin == "abs") {
    fn = MetricFn::euclidean(iv);
  } else {
    schema_error("metric.builtin", "unknown builtin '" + builtin + "' (expected exp-abs or abs)");
  }

  std::optional<Sections> sections;
  if (const json* s = optional_member(root, "sections", "")) {
    sections = Sections{builtin_map(member(*s, "A", "sections"), "sections.A"),
                        builtin_map(member(*s, "B", "sections"), "sections.B")};
  }

  std::size_t grid = 101;
  std::size_t random = 0;
  if (const json* p = optional_member(root, "probes", "")) {
    if (const json* g = optional_member(*p, "grid", "probes")) grid = count(*g, "probes.grid");
    if (const json* r = optional_member(*p, "random", "probes")) random = count(*r, "probes.random");
  }
  if (grid + random == 0) schema_error("probes", "at least one probe point is required");
  std::vector<Point> probes;
  if (grid == 1 || iv.lo == iv.hi) {
    if (grid > 0) probes.emplace_back(iv.lo);
  } else {
    for (std::size_t i = 0; i < grid; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(grid - 1);
      probes.emplace_back(i + 1 == grid ? iv.hi : iv.lo + t * (iv.hi - iv.lo));
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(iv.lo, iv.hi);
  for (std::size_t i = 0; i < random; ++i) probes.emplace_back(uniform(rng));

  double x0 = iv.lo;
  if (const json* x = optional_member(root, "x0", "")) x0 = number(*x, "x0");
  if (x0 < iv.lo || x0 > iv.hi) schema_error("x0", "outside the domain");

  const double lambda = modulus_lambda(root, fn->flavor());
  try {
    CommonProblem problem{FourMapSystem::numeric(iv, std::move(nm), std::move(*fn), std::move(probes), std::move(sections)),
                          lambda, Point(x0)};
    problem.system.declare_continuity(continuity(root));
    return problem;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Domain) schema_error("maps", e.what());
    throw;
  }
}

}  // namespace

CommonProblem parse_common_manifest(std::string_view json_text, const std::filesystem::path& base_dir,
                                    std::uint64_t seed) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Schema, std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) schema_error("$", "expected an object");
  const json& domain = member(root, "domain", "");
  const std::string kind = string(member(domain, "kind", "domain"), "domain.kind");
  if (kind == "finite") return finite_problem(root, domain, base_dir);
  if (kind == "interval") return interval_problem(root, domain, seed);
  schema_error("domain.kind", "expected 'finite' or 'interval'");
}

CommonFixedPointResult solve_problem(const CommonProblem& problem, double tol, std::size_t max_iter) {
  if (problem.system.source_flavor() == Flavor::Multiplicative) {
    return solve_multiplicative_common_fixed_point(problem.system, problem.lambda, problem.x0, tol, max_iter);
  }
  return solve_common_fixed_point(problem.system, ContractiveModulus::linear(problem.lambda), problem.x0, tol,
                                  max_iter);
}

}  // namespace mmfix
