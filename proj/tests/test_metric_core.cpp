#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "generators.hpp"
#include "mmfix/error.hpp"
#include "mmfix/metric_core.hpp"

using namespace mmfix;

namespace {

constexpr double kLn2 = 0.693147180559945309417232121458;

DistanceTable mult(std::vector<std::vector<double>> rows) {
  return DistanceTable::from_rows(std::move(rows), Flavor::Multiplicative);
}

DistanceTable additive(std::vector<std::vector<double>> rows) {
  return DistanceTable::from_rows(std::move(rows), Flavor::Additive);
}

DistanceTable metric_like(std::vector<std::vector<double>> rows) {
  return DistanceTable::from_rows(std::move(rows), Flavor::MetricLike);
}

using Witness = std::vector<std::size_t>;

}  // namespace

TEST(DistanceTable, RejectsStructuralProblems) {
  EXPECT_THROW(additive({}), Error);
  EXPECT_THROW(additive({{0, 1}, {1}}), Error);
  EXPECT_THROW(additive({{0, NAN}, {NAN, 0}}), Error);
  EXPECT_THROW(DistanceTable({"a"}, {{0, 1}, {1, 0}}, Flavor::Additive), Error);
  try {
    additive({{0, 1}, {2, 0}});
    FAIL() << "asymmetric table accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Structural);
    EXPECT_EQ(e.witness(), (Witness{0, 1}));
  }
}

TEST(DistanceTable, DefaultLabelsAndEntryUpdate) {
  const auto t = additive({{0, 1}, {1, 0}});
  EXPECT_EQ(t.labels(), (std::vector<std::string>{"x0", "x1"}));
  const auto u = t.with_entry(0, 1, 4.0);
  EXPECT_EQ(u(1, 0), 4.0);
  EXPECT_EQ(t(0, 1), 1.0);
  EXPECT_THROW(t.at(2, 0), Error);
}

TEST(MultiplicativeAxioms, SmallestNondegenerateTablePasses) {
  const auto r = check_multiplicative_axioms(mult({{1, 2}, {2, 1}}));
  EXPECT_TRUE(r.overall());
  ASSERT_EQ(r.verdicts.size(), 4u);
  EXPECT_EQ(r.flavor, Flavor::Multiplicative);
}

TEST(MultiplicativeAxioms, ProductTriangleViolation) {
  const auto r = check_multiplicative_axioms(mult({{1, 2, 10}, {2, 1, 3}, {10, 3, 1}}));
  EXPECT_FALSE(r.overall());
  const Verdict* v = r.find(axiom::kMultiplicativeTriangle);
  ASSERT_NE(v, nullptr);
  EXPECT_FALSE(v->pass);
  EXPECT_EQ(v->witness, (Witness{0, 1, 2}));
  EXPECT_TRUE(r.find(axiom::kLowerBound)->pass);
}

TEST(MultiplicativeAxioms, LowerBoundViolation) {
  const auto r = check_multiplicative_axioms(mult({{1, 0.5}, {0.5, 1}}));
  const Verdict* v = r.find(axiom::kLowerBound);
  ASSERT_NE(v, nullptr);
  EXPECT_FALSE(v->pass);
  EXPECT_EQ(v->witness, (Witness{0, 1}));
}

TEST(MultiplicativeAxioms, DistinctPointsAtOneFailIdentity) {
  const auto r = check_multiplicative_axioms(mult({{1, 1}, {1, 1}}));
  EXPECT_FALSE(r.find(axiom::kIdentity)->pass);
  EXPECT_EQ(r.find(axiom::kIdentity)->witness, (Witness{0, 1}));
}

TEST(MultiplicativeAxioms, FlavorMismatchIsAnArgumentError) {
  EXPECT_THROW(check_multiplicative_axioms(additive({{0}})), Error);
  EXPECT_THROW(check_metric_axioms(mult({{1}})), Error);
  EXPECT_THROW(check_metric_like_axioms(additive({{0}})), Error);
}

TEST(MetricAxioms, LogImageOfTwoPointTablePasses) {
  const auto r = check_metric_axioms(additive({{0, kLn2}, {kLn2, 0}}));
  EXPECT_TRUE(r.overall());
}

TEST(MetricAxioms, ZeroOffDiagonalFailsIdentity) {
  const auto r = check_metric_axioms(additive({{0, 0}, {0, 0}}));
  EXPECT_FALSE(r.overall());
  EXPECT_EQ(r.find(axiom::kIdentity)->witness, (Witness{0, 1}));
}

TEST(MetricAxioms, TriangleViolation) {
  const auto r = check_metric_axioms(additive({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}}));
  const Verdict* v = r.find(axiom::kTriangle);
  ASSERT_NE(v, nullptr);
  EXPECT_FALSE(v->pass);
  EXPECT_EQ(v->witness, (Witness{0, 1, 2}));
}

TEST(MetricAxioms, NegativeEntryFailsNonnegativity) {
  const auto r = check_metric_axioms(additive({{0, -1}, {-1, 0}}));
  EXPECT_FALSE(r.find(axiom::kNonnegativity)->pass);
  EXPECT_EQ(r.find(axiom::kNonnegativity)->witness, (Witness{0, 1}));
}

TEST(MetricAxioms, TriangleSlackAbsorbsRounding) {
  EXPECT_TRUE(check_metric_axioms(additive({{0, 1, 2 + 5e-10}, {1, 0, 1}, {2 + 5e-10, 1, 0}})).overall());
  EXPECT_FALSE(check_metric_axioms(additive({{0, 1, 2 + 1e-8}, {1, 0, 1}, {2 + 1e-8, 1, 0}})).overall());
}

TEST(MetricLikeAxioms, PositiveSelfDistanceIsAllowed) {
  EXPECT_TRUE(check_metric_like_axioms(metric_like({{1, 2}, {2, 1}})).overall());
}

TEST(MetricLikeAxioms, ZeroBetweenDistinctPointsFails) {
  const auto r = check_metric_like_axioms(metric_like({{0, 0}, {0, 0}}));
  EXPECT_FALSE(r.find(axiom::kZeroImpliesEqual)->pass);
  EXPECT_EQ(r.find(axiom::kZeroImpliesEqual)->witness, (Witness{0, 1}));
}

TEST(MetricLikeAxioms, EveryMetricTableIsMetricLike) {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 200; ++trial) {
    const auto t = fixtures::random_metric_table(rng, fixtures::random_size(rng, 1, 8));
    ASSERT_TRUE(check_metric_axioms(t).overall());
    EXPECT_TRUE(check_metric_like_axioms(t.with_flavor(Flavor::MetricLike)).overall()) << "trial " << trial;
  }
}

TEST(CheckAxioms, DispatchesOnFlavor) {
  EXPECT_EQ(check_axioms(mult({{1, 2}, {2, 1}})).flavor, Flavor::Multiplicative);
  EXPECT_EQ(check_axioms(additive({{0, 2}, {2, 0}})).verdicts.front().axiom, axiom::kNonnegativity);
  EXPECT_EQ(check_axioms(metric_like({{0, 2}, {2, 0}})).verdicts.front().axiom, axiom::kSymmetry);
}

TEST(CheckAxioms, DeterministicOnRepeatedCalls) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    auto t = fixtures::random_metric_table(rng, 6);
    t = t.with_entry(0, 5, t(0, 5) + 20.0);
    EXPECT_EQ(check_metric_axioms(t), check_metric_axioms(t));
  }
}

// Every reported triangle witness replays as an actual violation.
TEST(CheckAxioms, TriangleWitnessesReplay) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> entry(0.0, 10.0);
  int failures = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = fixtures::random_size(rng, 3, 6);
    std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) rows[i][j] = rows[j][i] = entry(rng);
    }
    const auto t = additive(rows);
    const auto report = check_metric_axioms(t);
    const Verdict* v = report.find(axiom::kTriangle);
    if (v->pass) continue;
    ++failures;
    ASSERT_EQ(v->witness.size(), 3u);
    const auto i = v->witness[0], j = v->witness[1], k = v->witness[2];
    EXPECT_GT(t(i, k), t(i, j) + t(j, k) + kTolAdditive);
  }
  EXPECT_GT(failures, 0);
}

// Inflating one entry past the sum along a two-hop path is always caught.
TEST(CheckAxioms, InflatedEntryIsDetected) {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = fixtures::random_size(rng, 3, 8);
    const auto t = fixtures::random_metric_table(rng, n);
    const std::size_t i = 0, j = 1, k = 2;
    const auto broken = t.with_entry(i, k, t(i, j) + t(j, k) + 1.0);
    const auto report = check_metric_axioms(broken);
    const Verdict* v = report.find(axiom::kTriangle);
    ASSERT_FALSE(v->pass) << "trial " << trial;
    const auto& w = v->witness;
    EXPECT_GT(broken(w[0], w[2]), broken(w[0], w[1]) + broken(w[1], w[2]));
  }
}

TEST(SampledAxioms, ExpAbsIsMultiplicativeOnSamples) {
  const std::vector<Point> samples{-3.0, -1.0, 0.0, 0.5, 2.0, 7.0};
  const auto r = check_sampled_axioms(MetricFn::exp_abs(), samples);
  EXPECT_TRUE(r.sampled);
  EXPECT_TRUE(r.overall());
  EXPECT_EQ(r.flavor, Flavor::Multiplicative);
}

TEST(SampledAxioms, SquaredDistanceBreaksTriangle) {
  const MetricFn squared(Interval{}, [](const Point& x, const Point& y) { return std::pow(x[0] - y[0], 2); },
                         Flavor::Additive, "squared");
  const std::vector<Point> samples{0.0, 1.0, 2.0};
  const auto r = check_sampled_axioms(squared, samples);
  EXPECT_FALSE(r.overall());
  EXPECT_EQ(r.find(axiom::kTriangle)->witness, (Witness{0, 1, 2}));
}

TEST(Flavor, ParsesCliSpellings) {
  EXPECT_EQ(parse_flavor("metric"), Flavor::Additive);
  EXPECT_EQ(parse_flavor("mult"), Flavor::Multiplicative);
  EXPECT_EQ(parse_flavor("metric-like"), Flavor::MetricLike);
  EXPECT_THROW(parse_flavor("ultra"), Error);
}
