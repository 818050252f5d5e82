#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "generators.hpp"
#include "mmfix/duality.hpp"
#include "mmfix/error.hpp"

using namespace mmfix;

namespace {

// Reference values computed at 30 significant digits.
constexpr double kLn2 = 0.693147180559945309417232121458;
constexpr double kE = 2.71828182845904523536028747135;

DistanceTable mult(std::vector<std::vector<double>> rows) {
  return DistanceTable::from_rows(std::move(rows), Flavor::Multiplicative);
}

DistanceTable additive(std::vector<std::vector<double>> rows) {
  return DistanceTable::from_rows(std::move(rows), Flavor::Additive);
}

}  // namespace

TEST(LogDistance, NeutralAndClamp) {
  EXPECT_EQ(log_distance(1.0), 0.0);
  EXPECT_EQ(log_distance(1.0 - 1e-13), 0.0);
  EXPECT_NEAR(log_distance(2.0), kLn2, 1e-16);
  EXPECT_THROW(log_distance(0.5), Error);
  EXPECT_THROW(log_distance(std::nan("")), Error);
  EXPECT_THROW(log_distance(INFINITY), Error);
}

TEST(LogTransform, TwoPointTable) {
  const auto d = log_transform(mult({{1, 2}, {2, 1}}));
  EXPECT_EQ(d.flavor(), Flavor::Additive);
  EXPECT_EQ(d(0, 0), 0.0);
  EXPECT_NEAR(d(0, 1), kLn2, 1e-15);
  EXPECT_NEAR(d(1, 0), kLn2, 1e-15);
}

TEST(LogTransform, SinglePoint) {
  const auto d = log_transform(mult({{1}}));
  EXPECT_EQ(d(0, 0), 0.0);
}

TEST(LogTransform, BelowLowerBoundNamesThePair) {
  try {
    log_transform(mult({{1, 0.5}, {0.5, 1}}));
    FAIL() << "expected a domain error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Domain);
    EXPECT_EQ(e.witness(), (std::vector<std::size_t>{0, 1}));
  }
}

TEST(LogTransform, RequiresMultiplicativeInput) {
  try {
    log_transform(additive({{0}}));
    FAIL() << "expected an argument error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Argument);
  }
}

TEST(ExpTransform, UnitDistance) {
  const auto p = exp_transform(additive({{0, 1}, {1, 0}}));
  EXPECT_EQ(p.flavor(), Flavor::Multiplicative);
  EXPECT_EQ(p(0, 0), 1.0);
  EXPECT_NEAR(p(0, 1), kE, 1e-15);
}

TEST(ExpTransform, SinglePointAndNegativeEntry) {
  EXPECT_EQ(exp_transform(additive({{0}}))(0, 0), 1.0);
  try {
    exp_transform(additive({{0, -1}, {-1, 0}}));
    FAIL() << "expected a domain error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Domain);
    EXPECT_EQ(e.witness(), (std::vector<std::size_t>{0, 1}));
  }
}

TEST(ExpTransform, RequiresAdditiveInput) {
  EXPECT_THROW(exp_transform(DistanceTable::from_rows({{1, 2}, {2, 1}}, Flavor::MetricLike)), Error);
  EXPECT_THROW(exp_transform(mult({{1}})), Error);
}

TEST(Transforms, RoundTripFromAdditive) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = fixtures::random_metric_table(rng, fixtures::random_size(rng, 1, 8));
    const auto back = log_transform(exp_transform(d));
    for (std::size_t i = 0; i < d.size(); ++i) {
      for (std::size_t j = 0; j < d.size(); ++j) ASSERT_NEAR(back(i, j), d(i, j), 1e-12);
    }
  }
}

// Relative error is what survives exp; absolute error grows with the entry.
TEST(Transforms, RoundTripFromMultiplicative) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = exp_transform(fixtures::random_metric_table(rng, fixtures::random_size(rng, 1, 8)));
    const auto back = exp_transform(log_transform(p));
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (std::size_t j = 0; j < p.size(); ++j) ASSERT_NEAR(back(i, j) / p(i, j), 1.0, 1e-12);
    }
  }
  std::mt19937_64 small(3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = exp_transform(fixtures::random_metric_table(small, 6, 2.0));
    const auto back = exp_transform(log_transform(p));
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (std::size_t j = 0; j < p.size(); ++j) ASSERT_NEAR(back(i, j), p(i, j), 1e-12);
    }
  }
}

TEST(Transforms, AxiomsTransferBothWays) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = fixtures::random_metric_table(rng, fixtures::random_size(rng, 1, 8));
    const auto p = exp_transform(d);
    ASSERT_TRUE(check_multiplicative_axioms(p).overall()) << "trial " << trial;
    ASSERT_TRUE(check_metric_axioms(log_transform(p)).overall()) << "trial " << trial;
  }
}

TEST(Transforms, BrokenTriangleHasTheSameWitnessOnBothSides) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = fixtures::random_size(rng, 3, 8);
    auto d = fixtures::random_metric_table(rng, n);
    const std::size_t i = fixtures::random_size(rng, 0, n - 1);
    std::size_t k = fixtures::random_size(rng, 0, n - 2);
    if (k >= i) ++k;
    std::size_t j = 0;
    while (j == i || j == k) ++j;
    d = d.with_entry(i, k, d(i, j) + d(j, k) + 5.0);
    const auto additive_report = check_metric_axioms(d);
    const auto mult_report = check_multiplicative_axioms(exp_transform(d));
    const Verdict* a = additive_report.find(axiom::kTriangle);
    const Verdict* m = mult_report.find(axiom::kMultiplicativeTriangle);
    ASSERT_FALSE(a->pass);
    ASSERT_FALSE(m->pass);
    EXPECT_EQ(a->witness, m->witness) << "trial " << trial;
  }
}

TEST(MetricTransforms, ExpAbsAndAbsAreDual) {
  const auto d = log_transform(MetricFn::exp_abs());
  const auto p = exp_transform(MetricFn::euclidean());
  EXPECT_EQ(d.flavor(), Flavor::Additive);
  EXPECT_EQ(p.flavor(), Flavor::Multiplicative);
  for (double x : {-2.0, 0.0, 0.3, 5.0}) {
    for (double y : {-1.0, 0.0, 4.0}) {
      EXPECT_NEAR(d(x, y), std::abs(x - y), 1e-14);
      EXPECT_NEAR(p(x, y), std::exp(std::abs(x - y)), 1e-12);
    }
  }
  EXPECT_THROW(log_transform(MetricFn::euclidean()), Error);
}

TEST(Cauchy, ConstantSequence) {
  const auto seq = SequenceSample::over_metric(MetricFn::exp_abs(), {3.0, 3.0, 3.0, 3.0});
  EXPECT_TRUE(is_eps_cauchy_tail(seq, 1.01, 0));
  EXPECT_TRUE(cauchy_equivalence_check(seq, 1.01, 0));
}

TEST(Cauchy, UnitStepAgainstTwoAndThree) {
  const auto seq = SequenceSample::over_metric(MetricFn::exp_abs(), {0.0, 1.0});
  EXPECT_FALSE(is_eps_cauchy_tail(seq, 2.0, 0));
  EXPECT_TRUE(is_eps_cauchy_tail(seq, 3.0, 0));
  EXPECT_TRUE(is_eps_cauchy_tail(seq, 2.0, 1));
  EXPECT_FALSE(is_eps_cauchy_tail(seq.log_image(), std::log(2.0), 0));
  EXPECT_TRUE(is_eps_cauchy_tail(seq.log_image(), std::log(3.0), 0));
}

TEST(Cauchy, ThresholdMustExceedNeutralElement) {
  const auto seq = SequenceSample::over_metric(MetricFn::exp_abs(), {0.0, 1.0});
  EXPECT_THROW(is_eps_cauchy_tail(seq, 1.0, 0), Error);
  EXPECT_THROW(is_eps_cauchy_tail(seq.log_image(), 0.0, 0), Error);
  EXPECT_THROW(is_eps_cauchy_tail(seq, 2.0, 2), Error);
}

TEST(Cauchy, OscillationAgreesOnFalse) {
  std::vector<Point> points;
  for (int i = 0; i < 10; ++i) points.emplace_back(static_cast<double>(i % 2));
  const auto seq = SequenceSample::over_metric(MetricFn::exp_abs(), points);
  for (std::size_t start = 0; start + 1 < seq.size(); ++start) {
    EXPECT_FALSE(is_eps_cauchy_tail(seq, 2.0, start));
    EXPECT_TRUE(cauchy_equivalence_check(seq, 2.0, start));
  }
}

TEST(Cauchy, TableBackedSequence) {
  const auto table = mult({{1, 2, 4}, {2, 1, 2}, {4, 2, 1}});
  const auto seq = SequenceSample::over_table(table, {0, 1, 2, 2, 2});
  EXPECT_EQ(seq.flavor(), Flavor::Multiplicative);
  EXPECT_EQ(seq.distance(0, 2), 4.0);
  EXPECT_FALSE(is_eps_cauchy_tail(seq, 3.0, 0));
  EXPECT_TRUE(is_eps_cauchy_tail(seq, 3.0, 1));
  EXPECT_TRUE(is_eps_cauchy_tail(seq, 1.01, 2));
  for (double eps : {1.01, 1.5, 2.0, kE, 3.0, 5.0}) {
    for (std::size_t s = 0; s < seq.size(); ++s) EXPECT_TRUE(cauchy_equivalence_check(seq, eps, s));
  }
}

TEST(Cauchy, GeometricTailAgrees) {
  std::vector<Point> points;
  double x = 0.0;
  for (int k = 0; k < 40; ++k) {
    points.emplace_back(x);
    x = x / 2 + 1;
  }
  const auto seq = SequenceSample::over_metric(MetricFn::exp_abs(), points);
  EXPECT_TRUE(is_eps_cauchy_tail(seq, 1.01, 30));
  EXPECT_FALSE(is_eps_cauchy_tail(seq, 1.01, 0));
  for (std::size_t s = 0; s < seq.size(); ++s) EXPECT_TRUE(cauchy_equivalence_check(seq, 1.01, s));
}

TEST(Cauchy, EquivalenceNeedsMultiplicativeSequence) {
  const auto seq = SequenceSample::over_metric(MetricFn::euclidean(), {0.0, 1.0});
  EXPECT_THROW(cauchy_equivalence_check(seq, 2.0, 0), Error);
}
