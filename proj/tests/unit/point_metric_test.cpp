#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "fixpoint/metric.hpp"
#include "fixpoint/rng.hpp"

using namespace fixpoint;

TEST(Point, RejectsEmptyAndNonFinite) {
  EXPECT_THROW(Point(std::vector<double>{}), InputError);
  EXPECT_THROW(Point({1.0, std::nan("")}), NonFiniteError);
  EXPECT_THROW(Point({std::numeric_limits<double>::infinity()}), NonFiniteError);
}

TEST(Point, TableEntriesShareDimension) {
  EXPECT_THROW(FunctionTable({Point{1.0}, Point{1.0, 2.0}}), InputError);
  EXPECT_THROW(FunctionTable(std::vector<Point>{}), InputError);
  EXPECT_EQ(constant_table(3, Point{2.0}).size(), 3u);
}

TEST(Metric, EvalExamples) {
  EXPECT_EQ(eval_metric(euclidean(1), Point{3.0}, Point{3.0}), 0.0);
  EXPECT_EQ(eval_metric(squared(1), Point{1.0}, Point{0.5}), 0.25);
  EXPECT_DOUBLE_EQ(eval_metric(euclidean(2), Point{0.0, 0.0}, Point{3.0, 4.0}), 5.0);
  EXPECT_EQ(eval_metric(max_metric(2), Point{0.0, 0.0}, Point{3.0, -4.0}), 4.0);
  EXPECT_EQ(eval_metric(discrete(1), Point{1.0}, Point{2.0}), 1.0);
}

TEST(Metric, DimensionMismatchIsInputError) {
  EXPECT_THROW(eval_metric(euclidean(1), Point{1.0}, Point{1.0, 2.0}), InputError);
}

TEST(Metric, UnknownNameRejected) {
  EXPECT_THROW(make_metric("Euclidean", 1), InputError);
  EXPECT_EQ(make_metric("squared", 1).triangle_status(), TriangleStatus::kNone);
}

TEST(Metric, CustomNegativeDistanceIsDomainError) {
  auto bad = custom_metric("neg", 1, TriangleStatus::kUnknown,
                           [](const Point& u, const Point& v) { return u[0] - v[0]; });
  EXPECT_THROW(bad(Point{0.0}, Point{1.0}), DomainError);
}

TEST(SupMetric, Examples) {
  const auto e1 = sup_metric(euclidean(1), 1);
  EXPECT_EQ(e1(FunctionTable({Point{5.0}}), FunctionTable({Point{7.0}})), 2.0);
  const auto e2 = sup_metric(euclidean(1), 2);
  EXPECT_EQ(e2(constant_table(2, Point{0.0}), FunctionTable({Point{1.0}, Point{3.0}})), 3.0);
  const auto e3 = sup_metric(euclidean(1), 3);
  EXPECT_EQ(e3(constant_table(3, Point{0.0}), FunctionTable({Point{1.0}, Point{-2.0}, Point{0.5}})),
            2.0);
  const auto sq = sup_metric(squared(1), 2);
  EXPECT_EQ(sq(constant_table(2, Point{0.0}), FunctionTable({Point{1.0}, Point{2.0}})), 4.0);
  EXPECT_EQ(sq.name(), "sup(squared)");
  EXPECT_EQ(sq.triangle_status(), TriangleStatus::kNone);
}

TEST(SupMetric, WrongDomainSizeRejected) {
  const auto s = sup_metric(euclidean(1), 2);
  EXPECT_THROW(s(constant_table(3, Point{0.0}), constant_table(2, Point{0.0})), InputError);
}

TEST(Axioms, EuclideanPasses) {
  const std::vector<Point> sample{Point{0.0}, Point{1.0}, Point{-2.0}};
  const auto report = check_axioms<Point>(euclidean(1), sample, {});
  EXPECT_TRUE(report.all_pass());
  EXPECT_TRUE(report.violations.empty());
}

TEST(Axioms, AsymmetricDistanceFailsN2WithLargerDirectionFirst) {
  auto asym = custom_metric("asym", 1, TriangleStatus::kUnknown,
                            [](const Point& u, const Point& v) { return std::max(u[0] - v[0], 0.0); });
  const std::vector<Point> sample{Point{0.0}, Point{1.0}};
  const auto report = check_axioms<Point>(asym, sample, {});
  EXPECT_FALSE(report.n2_pass);
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0].witness[0], Point{1.0});
  EXPECT_EQ(report.violations[0].witness[1], Point{0.0});
  EXPECT_EQ(report.violations[0].values[0], 1.0);
  EXPECT_EQ(report.violations[0].values[1], 0.0);
}

TEST(Axioms, SquaredPassesN1N2OnRandomSample) {
  SplitMix64 rng(7);
  std::vector<Point> sample;
  for (int i = 0; i < 40; ++i) sample.push_back(Point{rng.uniform(-5.0, 5.0)});
  const auto report = check_axioms<Point>(squared(1), sample, {});
  EXPECT_TRUE(report.n1_pass);
  EXPECT_TRUE(report.n2_pass);
}

TEST(Axioms, N3WitnessWithTwoLimits) {
  // Zero distance between distinct points lets one sequence converge to two limits.
  auto collapsed = custom_metric("collapsed", 1, TriangleStatus::kUnknown,
                                 [](const Point&, const Point&) { return 0.0; });
  const std::vector<WitnessSequence<Point>> witnesses{
      {{Point{0.0}, Point{0.5}}, {Point{0.0}, Point{1.0}}}};
  const auto report = check_axioms<Point>(collapsed, std::vector<Point>{Point{0.0}}, witnesses);
  EXPECT_FALSE(report.n3_pass);
  EXPECT_EQ(report.violations.back().axiom, Axiom::kN3);
}

TEST(Axioms, EmptySampleRejected) {
  EXPECT_THROW(check_axioms<Point>(euclidean(1), std::vector<Point>{}, {}), InputError);
}

TEST(Triangle, Examples) {
  const std::vector<Point> line{Point{0.0}, Point{1.0}, Point{2.0}};
  EXPECT_TRUE(check_triangle_on_set<Point>(euclidean(1), line).holds);

  const std::vector<Point> halving{Point{1.0}, Point{0.5}, Point{0.25}};
  const auto check = check_triangle_on_set<Point>(squared(1), halving);
  ASSERT_FALSE(check.holds);
  EXPECT_EQ(check.witness->a, Point{1.0});
  EXPECT_EQ(check.witness->b, Point{0.5});
  EXPECT_EQ(check.witness->c, Point{0.25});
  EXPECT_EQ(check.witness->d_ac, 9.0 / 16.0);
  EXPECT_EQ(check.witness->d_ab + check.witness->d_bc, 5.0 / 16.0);

  const std::vector<Point> same{Point{4.0}, Point{4.0}, Point{4.0}};
  EXPECT_TRUE(check_triangle_on_set<Point>(squared(1), same).holds);
}

TEST(Triangle, NeedsThreePoints) {
  const std::vector<Point> two{Point{0.0}, Point{1.0}};
  EXPECT_THROW(check_triangle_on_set<Point>(euclidean(1), two), InputError);
}

TEST(Rng, SplitMixReferenceSequence) {
  // Reference outputs of the splitmix64 generator seeded with 0.
  SplitMix64 rng(0);
  EXPECT_EQ(rng.next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(rng.next(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(rng.next(), 0x06c45d188009454fULL);
}
