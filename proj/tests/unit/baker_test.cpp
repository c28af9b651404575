#include <gtest/gtest.h>

#include <vector>

#include "fixpoint/funceq.hpp"

using namespace fixpoint;

namespace {

FunctionTable scalars(std::initializer_list<double> values) {
  std::vector<Point> points;
  for (double v : values) points.push_back(Point{v});
  return FunctionTable(std::move(points));
}

BakerInstance swap_instance() {
  return {2, {1, 0}, {0.5, 0.5}, scalars({1, 0}), Norm::euclidean()};
}

IterationConfig tight(double tol = 1e-12) {
  IterationConfig cfg;
  cfg.tol = tol;
  return cfg;
}

}  // namespace

TEST(Norm, Catalogue) {
  EXPECT_DOUBLE_EQ(Norm::euclidean()(Point{3.0, -4.0}), 5.0);
  EXPECT_EQ(Norm::max()(Point{3.0, -4.0}), 4.0);
  EXPECT_EQ(Norm::weighted_sum({2.0, 0.5})(Point{3.0, -4.0}), 8.0);
  EXPECT_THROW(Norm::weighted_sum({1.0, 0.0}), InputError);
  EXPECT_THROW(Norm::make("l1"), InputError);
  EXPECT_THROW(Norm::make("max", {1.0}), InputError);
}

TEST(Norm, InducedMetricIsDistanceOfDifference) {
  const auto norm = Norm::weighted_sum({2.0, 0.5});
  const auto metric = norm.induced_metric(2);
  const Point a{1.0, 2.0};
  const Point b{-1.0, 6.0};
  EXPECT_EQ(metric(a, b), norm(a - b));
}

TEST(Series, Examples) {
  const BakerInstance single{1, {0}, {0.5}, scalars({1}), Norm::euclidean()};
  EXPECT_NEAR(baker_series_solution(single, 64, 1e-14)[0][0], 2.0, 1e-13);

  const auto swap = baker_series_solution(swap_instance(), 64, 1e-14);
  EXPECT_NEAR(swap[0][0], 4.0 / 3.0, 1e-13);
  EXPECT_NEAR(swap[1][0], 2.0 / 3.0, 1e-13);

  const BakerInstance zero{3, {1, 2, 0}, {0.7, 0.2, 0.9}, scalars({0, 0, 0}), Norm::max()};
  EXPECT_EQ(baker_series_solution(zero, 8, 1e-12), scalars({0, 0, 0}));
}

TEST(Series, TruncationCap) {
  const BakerInstance slow{1, {0}, {0.9999999}, scalars({1}), Norm::euclidean()};
  EXPECT_THROW(baker_series_solution(slow, 64, 1e-300), TruncationError);
}

TEST(Series, LambdaAtOneRejected) {
  const BakerInstance bad{1, {0}, {1.0}, scalars({1}), Norm::euclidean()};
  EXPECT_THROW(baker_series_solution(bad, 64, 1e-10), DomainError);
}

TEST(SolveBaker, ScalarBoundIsTight) {
  const BakerInstance single{1, {0}, {0.5}, scalars({1}), Norm::euclidean()};
  const auto cert = solve_baker(single, scalars({0}), tight());
  EXPECT_NEAR(cert.exact_solution[0][0], 2.0, 1e-12);
  EXPECT_EQ(cert.delta, 1.0);
  EXPECT_EQ(*cert.theoretical_bound, 2.0);
  EXPECT_NEAR(cert.sup_distance, 2.0, 1e-12);
  EXPECT_TRUE(*cert.bound_satisfied);
  EXPECT_EQ(to_string(cert.theorem), "T5-BAKER");
  EXPECT_EQ(cert.tol, 1e-12);
}

TEST(SolveBaker, SwapMatchesHandSolution) {
  const auto cert = solve_baker(swap_instance(), scalars({0, 0}), tight());
  EXPECT_NEAR(cert.exact_solution[0][0], 4.0 / 3.0, 1e-12);
  EXPECT_NEAR(cert.exact_solution[1][0], 2.0 / 3.0, 1e-12);
  EXPECT_LE(*cert.oracle_gap, 1e-12);
  EXPECT_TRUE(*cert.bound_satisfied);
}

TEST(SolveBaker, StartAtSolution) {
  const auto series = baker_series_solution(swap_instance(), 64, 1e-15);
  const auto cert = solve_baker(swap_instance(), series, tight());
  EXPECT_LT(cert.delta, 1e-15);
  EXPECT_LT(cert.sup_distance, 1e-15);
}

TEST(SolveBaker, PerturbedFourCycle) {
  const BakerInstance cycle{4, {1, 2, 3, 0}, {0.3, 0.3, 0.3, 0.3}, scalars({3, -1, 4, 2}), Norm::euclidean()};
  const auto exact = baker_series_solution(cycle, 64, 1e-15);
  const auto f0 = perturb_solution(exact, 0.1, 11);
  const auto cert = solve_baker(cycle, f0, tight());
  // Each entry moved by at most 0.1, so delta <= 0.1 (1 + 0.3).
  EXPECT_LE(cert.delta, 0.13 + 1e-15);
  EXPECT_TRUE(*cert.bound_satisfied);
  EXPECT_LE(cert.sup_distance, 0.1 + 1e-12);
}

TEST(Perturb, RangeAndIdentity) {
  const auto exact = scalars({2});
  EXPECT_EQ(perturb_solution(exact, 0.0, 5), exact);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const double v = perturb_solution(exact, 0.5, seed)[0][0];
    EXPECT_GE(v, 1.5);
    EXPECT_LE(v, 2.5);
  }
  EXPECT_THROW(perturb_solution(exact, -1.0, 0), InputError);
}
