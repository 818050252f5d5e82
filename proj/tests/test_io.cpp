#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <string>

#include "json.hpp"
#include "mmfix/banach_solver.hpp"
#include "mmfix/error.hpp"
#include "mmfix/io.hpp"
#include "mmfix/manifest.hpp"

using namespace mmfix;
using json = nlohmann::json;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Io;
}

std::string message_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

const char* kFiniteManifest = R"({
  "domain": {"kind": "finite", "labels": ["a", "b", "c"]},
  "metric": {"rows": [[0, 1, 2], [1, 0, 1], [2, 1, 0]], "flavor": "metric"},
  "maps": {"A": ["a", "b", "c"], "B": [0, 1, 2], "S": [0, 0, 0], "T": ["a", "a", "a"]},
  "modulus": {"kind": "linear", "lambda": 0.5},
  "x0": "c"
})";

}  // namespace

TEST(Csv, HeaderIsDetected) {
  const auto t = parse_table_csv("a,b\n0,1\n1,0\n", Flavor::Additive);
  EXPECT_EQ(t.labels(), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(t(0, 1), 1.0);
}

TEST(Csv, HeaderlessTableGetsDefaultLabels) {
  const auto t = parse_table_csv("1,2\n2,1\n", Flavor::Multiplicative);
  EXPECT_EQ(t.labels(), (std::vector<std::string>{"x0", "x1"}));
  EXPECT_EQ(t.flavor(), Flavor::Multiplicative);
}

TEST(Csv, QuotesBlankLinesAndCarriageReturns) {
  const auto t = parse_table_csv("\"p, q\",\"say \"\"hi\"\"\"\r\n\r\n 0 , 1.5\r\n1.5,0\r\n", Flavor::Additive);
  EXPECT_EQ(t.labels()[0], "p, q");
  EXPECT_EQ(t.labels()[1], "say \"hi\"");
  EXPECT_EQ(t(1, 0), 1.5);
}

TEST(Csv, Errors) {
  EXPECT_EQ(kind_of([] { parse_table_csv("", Flavor::Additive); }), ErrorKind::Structural);
  EXPECT_EQ(kind_of([] { parse_table_csv("0,1\n1,0,2\n", Flavor::Additive); }), ErrorKind::Structural);
  EXPECT_EQ(kind_of([] { parse_table_csv("a,b\n", Flavor::Additive); }), ErrorKind::Structural);
  EXPECT_EQ(kind_of([] { parse_table_csv("a,b\n0,1\n1,0\n0,0\n", Flavor::Additive); }), ErrorKind::Structural);
  EXPECT_EQ(kind_of([] { parse_table_csv("\"a,b\n", Flavor::Additive); }), ErrorKind::Parse);
  EXPECT_EQ(kind_of([] { parse_table_csv("0,1\n2,0\n", Flavor::Additive); }), ErrorKind::Structural);
  const auto msg = message_of([] { parse_table_csv("a,b\n0,1\n1,zz\n", Flavor::Additive); });
  EXPECT_NE(msg.find("row 3, column 2"), std::string::npos) << msg;
  EXPECT_NE(msg.find("'zz'"), std::string::npos) << msg;
}

TEST(Csv, RoundTripIsExact) {
  const auto t = DistanceTable({"a", "b,c"}, {{0, 0.1 + 0.2}, {0.1 + 0.2, 0}}, Flavor::Additive);
  const auto text = to_csv(t);
  const auto back = parse_table_csv(text, Flavor::Additive);
  EXPECT_EQ(back, t);
  EXPECT_EQ(to_csv(back), text);
}

TEST(Json, AxiomReportShape) {
  const auto report = check_axioms(DistanceTable::from_rows({{1, 0.5}, {0.5, 1}}, Flavor::Multiplicative));
  const auto j = json::parse(to_json(report));
  EXPECT_EQ(j["flavor"], "multiplicative");
  EXPECT_EQ(j["overall"], false);
  ASSERT_TRUE(j["verdicts"].is_array());
  EXPECT_EQ(j["verdicts"][0]["axiom"], "lower_bound");
  EXPECT_EQ(j["verdicts"][0]["witness"], json::array({0, 1}));
}

TEST(Json, FixedPointResultAndTraceCsv) {
  const SelfMap f = [](const Point& x) { return Point(x.scalar() / 2 + 1); };
  const auto r = solve_fixed_point(f, MetricFn::exp_abs(), 0.0, ContractionCertificate::declare(0.5), 1e-9, 3);
  const auto j = json::parse(to_json(r));
  EXPECT_EQ(j["stop_reason"], "max_iterations");
  EXPECT_EQ(j["iterations"], 3);
  EXPECT_EQ(j["trace"]["iterates"].size(), 4u);
  const auto csv = trace_to_csv(r.trace);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "k,x,step_distance,apriori,aposteriori");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

TEST(Manifest, FiniteWithLabels) {
  const auto problem = parse_common_manifest(kFiniteManifest, ".", 0);
  EXPECT_TRUE(problem.system.is_finite());
  EXPECT_EQ(std::get<std::size_t>(problem.x0), 2u);
  EXPECT_EQ(problem.lambda, 0.5);
  const auto r = solve_problem(problem, 1e-9, 100);
  ASSERT_EQ(r.outcome, CommonOutcome::Converged);
  EXPECT_EQ(std::get<std::size_t>(*r.point), 0u);
  const auto j = json::parse(to_json(r, problem.system));
  EXPECT_EQ(j["point"], "a");
  EXPECT_EQ(j["point_index"], 0);
}

TEST(Manifest, SchemaErrorsNameTheField) {
  auto replace = [](std::string s, const std::string& from, const std::string& to) {
    s.replace(s.find(from), from.size(), to);
    return s;
  };
  const std::string base = kFiniteManifest;
  const std::vector<std::pair<std::string, std::string>> cases{
      {replace(base, "\"T\": [\"a\", \"a\", \"a\"]", "\"T\": [\"a\", \"a\", \"z\"]"), "maps.T[2]"},
      {replace(base, "\"lambda\": 0.5", "\"lambda\": 1.5"), "modulus.lambda"},
      {replace(base, "\"kind\": \"linear\"", "\"kind\": \"quadratic\""), "modulus.kind"},
      {replace(base, "\"x0\": \"c\"", "\"x0\": 7"), "x0"},
      {replace(base, "\"flavor\": \"metric\"", "\"flavor\": \"hyper\""), "metric.flavor"},
      {replace(base, "\"B\": [0, 1, 2],", ""), "maps.B"},
      {replace(base, "[[0, 1, 2], [1, 0, 1], [2, 1, 0]]", "[[0, 1], [1, 0]]"), "metric"},
      {replace(base, "\"finite\"", "\"torus\""), "domain.kind"},
      {"[1, 2]", "$"},
      {"{not json", "JSON"},
  };
  for (const auto& [text, field] : cases) {
    try {
      parse_common_manifest(text, ".", 0);
      ADD_FAILURE() << "accepted manifest expected to fail at " << field;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Schema);
      EXPECT_NE(std::string(e.what()).find(field), std::string::npos) << e.what();
    }
  }
}

TEST(Manifest, MultiplicativeRangeAndEntries) {
  const std::string text = R"({
    "domain": {"kind": "finite", "labels": ["a", "b"]},
    "metric": {"rows": [[1, 0.5], [0.5, 1]], "flavor": "mult"},
    "maps": {"A": [0, 1], "B": [0, 1], "S": [0, 0], "T": [0, 0]},
    "modulus": {"kind": "linear", "lambda": 0.25}
  })";
  EXPECT_NE(message_of([&] { parse_common_manifest(text, ".", 0); }).find("metric"), std::string::npos);
  std::string high = text;
  high.replace(high.find("0.5], [0.5"), 10, "2], [2");
  high.replace(high.find("0.25"), 4, "0.75");
  EXPECT_NE(message_of([&] { parse_common_manifest(high, ".", 0); }).find("modulus.lambda"), std::string::npos);
}

TEST(Manifest, IntervalProbesAreSeeded) {
  const std::string text = R"({
    "domain": {"kind": "interval", "lo": 0, "hi": 1},
    "metric": {"builtin": "abs"},
    "maps": {"A": {"kind": "identity"}, "B": {"kind": "identity"},
             "S": {"kind": "affine", "a": 0.25, "b": 0}, "T": {"kind": "affine", "a": 0.25, "b": 0}},
    "sections": {"A": {"kind": "identity"}, "B": {"kind": "identity"}},
    "modulus": {"kind": "linear", "lambda": 0.25},
    "probes": {"grid": 3, "random": 4},
    "x0": 1
  })";
  const auto a = parse_common_manifest(text, ".", 42);
  const auto b = parse_common_manifest(text, ".", 42);
  const auto c = parse_common_manifest(text, ".", 43);
  EXPECT_EQ(a.system.probes().size(), 7u);
  EXPECT_EQ(a.system.probes(), b.system.probes());
  EXPECT_NE(a.system.probes(), c.system.probes());
  const auto r = solve_problem(a, 1e-9, 200);
  ASSERT_EQ(r.outcome, CommonOutcome::Converged);
  EXPECT_NEAR(std::get<Point>(*r.point).scalar(), 0.0, 1e-9);
}
