#include "mmfix/io.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>

#include "json.hpp"

#include "mmfix/error.hpp"

namespace mmfix {

using json = nlohmann::ordered_json;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Splits one CSV record; double quotes delimit fields that may hold commas.
std::vector<std::string> split_record(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        current += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        current += c;
      }
    } else if (c == '"' && trim(current).empty()) {
      current.clear();
      quoted = was_quoted = true;
    } else if (c == ',') {
      fields.push_back(was_quoted ? current : std::string(trim(current)));
      current.clear();
      was_quoted = false;
    } else {
      current += c;
    }
  }
  if (quoted) throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": unterminated quoted field");
  fields.push_back(was_quoted ? current : std::string(trim(current)));
  return fields;
}

std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  double value = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || end != s.data() + s.size()) return std::nullopt;
  return value;
}

json point_json(const Point& p) {
  if (p.dim() == 1) return p[0];
  json arr = json::array();
  for (double c : p.coords()) arr.push_back(c);
  return arr;
}

json numbers(const std::vector<double>& xs) {
  json arr = json::array();
  for (double x : xs) arr.push_back(x);
  return arr;
}

json trace_json(const IterationTrace& trace, const FourMapSystem* finite_system) {
  json out;
  out["stop_reason"] = to_string(trace.stop_reason);
  out["lambda"] = trace.lambda ? json(*trace.lambda) : json(nullptr);
  json iterates = json::array();
  for (const auto& p : trace.iterates) {
    if (finite_system) {
      iterates.push_back(finite_system->describe(static_cast<std::size_t>(p[0])));
    } else {
      iterates.push_back(point_json(p));
    }
  }
  out["iterates"] = std::move(iterates);
  out["step_distances"] = numbers(trace.step_distances);
  out["apriori_bounds"] = numbers(trace.apriori_bounds);
  out["aposteriori_bounds"] = numbers(trace.aposteriori_bounds);
  return out;
}

json element_json(const Element& e, const FourMapSystem& sys) {
  if (std::holds_alternative<std::size_t>(e)) return sys.describe(e);
  return point_json(std::get<Point>(e));
}

json residuals_json(const std::array<double, 4>& r) {
  json out;
  for (MapRole role : kAllRoles) out[to_string(role)] = r[static_cast<std::size_t>(role)];
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string format_number(double value) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw Error(ErrorKind::Numeric, "cannot format number");
  return std::string(buf, end);
}

DistanceTable parse_table_csv(std::string_view text, Flavor flavor) {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> records;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = nl == std::string_view::npos ? text : text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (trim(line).empty()) continue;
    records.emplace_back(line_no, split_record(line, line_no));
  }
  if (records.empty()) throw Error(ErrorKind::Structural, "table is empty");

  std::optional<std::vector<std::string>> labels;
  std::size_t first_data = 0;
  for (const auto& field : records.front().second) {
    if (!parse_number(field)) {
      labels = records.front().second;
      first_data = 1;
      break;
    }
  }

  std::vector<std::vector<double>> rows;
  for (std::size_t r = first_data; r < records.size(); ++r) {
    const auto& [line, fields] = records[r];
    std::vector<double> row;
    row.reserve(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const auto v = parse_number(fields[c]);
      if (!v) {
        throw Error(ErrorKind::Parse, "row " + std::to_string(line) + ", column " + std::to_string(c + 1) + ": '" +
                                          fields[c] + "' is not a number");
      }
      row.push_back(*v);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorKind::Structural, "table has a header but no rows");
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.size()) {
      throw Error(ErrorKind::Structural, "row " + std::to_string(records[r + first_data].first) + " has " +
                                             std::to_string(rows[r].size()) + " fields, expected " +
                                             std::to_string(rows.size()));
    }
  }
  if (labels) return DistanceTable(std::move(*labels), std::move(rows), flavor);
  return DistanceTable::from_rows(std::move(rows), flavor);
}

std::string to_csv(const DistanceTable& table) {
  std::ostringstream out;
  const auto& labels = table.labels();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out << ',';
    const bool quote = labels[i].find_first_of(",\"") != std::string::npos;
    if (quote) {
      out << '"';
      for (char c : labels[i]) out << (c == '"' ? "\"\"" : std::string(1, c));
      out << '"';
    } else {
      out << labels[i];
    }
  }
  out << '\n';
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t j = 0; j < table.size(); ++j) {
      if (j) out << ',';
      out << format_number(table(i, j));
    }
    out << '\n';
  }
  return out.str();
}

std::string to_json(const AxiomReport& report) {
  json out;
  out["flavor"] = to_string(report.flavor);
  out["overall"] = report.overall();
  out["sampled"] = report.sampled;
  json verdicts = json::array();
  for (const auto& v : report.verdicts) {
    verdicts.push_back({{"axiom", v.axiom}, {"pass", v.pass}, {"witness", v.witness}});
  }
  out["verdicts"] = std::move(verdicts);
  return dump(out);
}

std::string to_json(const LambdaEstimate& estimate) {
  json out;
  if (const auto* cert = std::get_if<ContractionCertificate>(&estimate)) {
    out["contraction"] = true;
    out["lambda_hat"] = cert->lambda_hat;
    out["sample_pairs"] = cert->sample_pairs;
    out["declared"] = cert->declared;
  } else {
    const auto& nc = std::get<NotAContraction>(estimate);
    out["contraction"] = false;
    out["ratio"] = nc.ratio;
    out["witness"] = json::array({point_json(nc.witness.first), point_json(nc.witness.second)});
  }
  return dump(out);
}

std::string to_json(const FixedPointResult& result) {
  json out;
  out["stop_reason"] = to_string(result.trace.stop_reason);
  out["point"] = point_json(result.point);
  out["iterations"] = result.iterations;
  out["residual_additive"] = result.residual_additive;
  out["residual_multiplicative"] = result.residual_multiplicative;
  out["certificate"] = {{"lambda_hat", result.certificate.lambda_hat},
                        {"sample_pairs", result.certificate.sample_pairs},
                        {"declared", result.certificate.declared}};
  out["bounds"] = "a-priori and a-posteriori Banach estimates in additive units";
  out["trace"] = trace_json(result.trace, nullptr);
  return dump(out);
}

std::string trace_to_csv(const IterationTrace& trace) {
  std::ostringstream out;
  const std::size_t dim = trace.iterates.empty() ? 1 : trace.iterates.front().dim();
  out << 'k';
  if (dim == 1) {
    out << ",x";
  } else {
    for (std::size_t d = 0; d < dim; ++d) out << ",x" << d;
  }
  out << ",step_distance,apriori,aposteriori\n";
  for (std::size_t k = 0; k < trace.iterates.size(); ++k) {
    out << k;
    for (double c : trace.iterates[k].coords()) out << ',' << format_number(c);
    out << ',';
    if (k < trace.step_distances.size()) out << format_number(trace.step_distances[k]);
    out << ',';
    if (k < trace.apriori_bounds.size()) out << format_number(trace.apriori_bounds[k]);
    out << ',';
    if (k < trace.aposteriori_bounds.size()) out << format_number(trace.aposteriori_bounds[k]);
    out << '\n';
  }
  return out.str();
}

std::string to_json(const CommonFixedPointResult& result, const FourMapSystem& system) {
  json out;
  out["outcome"] = to_string(result.outcome);
  out["source_flavor"] = to_string(system.source_flavor());
  out["domain"] = system.is_finite() ? "finite" : "interval";
  out["point"] = result.point ? element_json(*result.point, system) : json(nullptr);
  if (result.point && system.is_finite()) out["point_index"] = std::get<std::size_t>(*result.point);
  out["iterations"] = result.iterations;
  if (result.point) {
    out["residuals"] = residuals_json(result.residuals);
    if (result.residuals_multiplicative) {
      out["residuals_multiplicative"] = residuals_json(*result.residuals_multiplicative);
    }
  }
  json report = json::array();
  for (const auto& o : result.hypotheses.outcomes) {
    json witness = json::array();
    for (const auto& w : o.witness) witness.push_back(element_json(w, system));
    report.push_back({{"name", o.name},
                      {"status", to_string(o.status)},
                      {"gating", o.gating},
                      {"witness", std::move(witness)},
                      {"detail", o.detail}});
  }
  out["hypothesis_report"] = std::move(report);
  if (!result.trace.iterates.empty()) {
    out["trace"] = trace_json(result.trace, system.is_finite() ? &system : nullptr);
  }
  return dump(out);
}

}  // namespace mmfix
