#include <gtest/gtest.h>

#include <vector>

#include "fixpoint/funceq.hpp"
#include "fixpoint/rng.hpp"

using namespace fixpoint;

namespace {

FuncEqInstance scalar_affine(double a, double c) {
  return affine_instance(euclidean(1), {0}, {a}, {Point{c}});
}

FunctionTable scalar_table(std::initializer_list<double> values) {
  std::vector<Point> points;
  for (double v : values) points.push_back(Point{v});
  return FunctionTable(std::move(points));
}

IterationConfig tight(double tol = 1e-12) {
  IterationConfig cfg;
  cfg.tol = tol;
  return cfg;
}

}  // namespace

TEST(Theorem, RoundTripsIdentifiers) {
  for (const char* id : {"T4.2-BANACH-SUP", "C4.3-BANACH-ORBIT", "T4.4-KANNAN", "T4.5-CHATTERJEA",
                         "T4.6-CIRIC", "T5-BAKER"}) {
    EXPECT_EQ(to_string(parse_stability_theorem(id)), id);
  }
  EXPECT_THROW(parse_stability_theorem("T4.3"), InputError);
}

TEST(Operator, ApplyExamples) {
  const LiftedOperator op(scalar_affine(0.5, 1.0));
  EXPECT_EQ(op(scalar_table({0.0})), scalar_table({1.0}));
  EXPECT_EQ(op(scalar_table({2.0})), scalar_table({2.0}));

  const LiftedOperator swap(affine_instance(euclidean(1), {1, 0}, {1.0, 1.0}, {Point{0.0}, Point{0.0}}));
  EXPECT_EQ(apply_operator(swap, scalar_table({3.0, 7.0})), scalar_table({7.0, 3.0}));
}

TEST(Operator, PowerExamples) {
  const LiftedOperator op(scalar_affine(0.5, 1.0));
  const auto h = scalar_table({0.0});
  EXPECT_EQ(operator_power(op, h, 0), h);
  EXPECT_EQ(operator_power(op, h, 3), scalar_table({1.75}));
}

TEST(Operator, ShapeMismatchRejected) {
  const LiftedOperator op(scalar_affine(0.5, 1.0));
  EXPECT_THROW(op(scalar_table({0.0, 1.0})), InputError);
  EXPECT_THROW(affine_instance(euclidean(1), {0, 2}, {0.5, 0.5}, {Point{0.0}, Point{0.0}}), InputError);
}

TEST(Delta, Examples) {
  EXPECT_EQ(compute_delta(scalar_affine(0.5, 1.0), scalar_table({0.0})), 1.0);
  EXPECT_EQ(compute_delta(scalar_affine(0.5, 1.0), scalar_table({2.0})), 0.0);
  const auto inst = affine_instance(euclidean(1), {0, 1}, {0.5, 0.5}, {Point{0.0}, Point{0.0}});
  EXPECT_EQ(compute_delta(inst, scalar_table({1.0, 4.0})), 2.0);
}

TEST(SupContraction, AffineExamples) {
  const auto inst = affine_instance(euclidean(1), {0, 1, 2}, {0.5, 0.5, 0.5},
                                    {Point{1.0}, Point{-1.0}, Point{3.0}});
  SplitMix64 rng(3);
  std::vector<ElementPair<FunctionTable>> pairs;
  for (int i = 0; i < 50; ++i) {
    pairs.emplace_back(scalar_table({rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)}),
                       scalar_table({rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)}));
  }
  EXPECT_TRUE(check_sup_contraction(inst, ContractionKind::kBanach, pairs, 0.5).holds);

  const std::vector<ElementPair<FunctionTable>> one{{scalar_table({0, 0, 0}), scalar_table({0, 1, 0})}};
  const auto fail = check_sup_contraction(inst, ContractionKind::kBanach, one, 0.4);
  EXPECT_FALSE(fail.holds);
  EXPECT_EQ(*fail.witness, one[0]);

  const std::vector<ElementPair<FunctionTable>> same{{scalar_table({1, 2, 3}), scalar_table({1, 2, 3})}};
  EXPECT_TRUE(check_sup_contraction(inst, ContractionKind::kBanach, same, 0.1).holds);
}

TEST(SupContraction, LiftedChatterjeaCanFailUnderSwap) {
  // G(s, x) = x / 2 is pointwise Chatterjea with lambda = 1/3, but the lifted operator with psi
  // swapping two points is not: at g1 = (1, 0), g2 = (0, 1) the left side is 1/2 and the right
  // side is (1/2 + 1/2) / 3.
  const auto inst = affine_instance(euclidean(1), {1, 0}, {0.5, 0.5}, {Point{0.0}, Point{0.0}});
  const std::vector<ElementPair<FunctionTable>> pair{{scalar_table({1, 0}), scalar_table({0, 1})}};
  const auto check = check_sup_contraction(inst, ContractionKind::kChatterjea, pair, 1.0 / 3.0);
  EXPECT_FALSE(check.holds);
  EXPECT_NEAR(check.excess, 0.5 - 1.0 / 3.0, 1e-15);
}

TEST(Stability, ScalarAffineBoundIsTight) {
  const auto cert = solve_stability(scalar_affine(0.5, 1.0), scalar_table({0.0}),
                                    StabilityTheorem::kBanachOrbit, 0.5, tight(1e-13));
  EXPECT_TRUE(cert.converged);
  EXPECT_NEAR(cert.exact_solution[0][0], 2.0, 1e-12);
  EXPECT_EQ(cert.delta, 1.0);
  EXPECT_EQ(*cert.theoretical_bound, 2.0);
  EXPECT_NEAR(cert.sup_distance, 2.0, 1e-12);
  EXPECT_TRUE(*cert.bound_satisfied);
  EXPECT_TRUE(*cert.contraction_ok);
}

TEST(Stability, ExactStartHasZeroDelta) {
  const auto inst = affine_instance(euclidean(1), {1, 0}, {0.5, 0.5}, {Point{1.0}, Point{0.0}});
  const auto cert = solve_stability(inst, scalar_table({4.0 / 3.0, 2.0 / 3.0}),
                                    StabilityTheorem::kBanachOrbit, 0.5, tight());
  EXPECT_LT(cert.delta, 1e-15);
  EXPECT_LT(cert.sup_distance, 1e-15);
  EXPECT_LT(*cert.theoretical_bound, 1e-14);
}

TEST(Stability, ThreeCycleMatchesSeries) {
  // psi(s) = s + 1 mod 3, G(s, x) = x / 4 + c(s); the series oracle solves the same equation.
  const auto inst = affine_instance(euclidean(1), {1, 2, 0}, {0.25, 0.25, 0.25},
                                    {Point{1.0}, Point{2.0}, Point{3.0}});
  const auto cert = solve_stability(inst, scalar_table({0, 0, 0}), StabilityTheorem::kBanachOrbit,
                                    0.25, tight());
  const BakerInstance same{3, {1, 2, 0}, {0.25, 0.25, 0.25}, scalar_table({1, 2, 3}), Norm::euclidean()};
  const auto series = baker_series_solution(same, 64, 1e-14);
  EXPECT_LE(sup_metric(euclidean(1), 3)(cert.exact_solution, series), 1e-10);
  EXPECT_TRUE(*cert.bound_satisfied);
  // Hand solution: h0 = 1 + h1/4, h1 = 2 + h2/4, h2 = 3 + h0/4 gives h0 = (64 + 32 + 12) / 63.
  EXPECT_NEAR(series[0][0], 108.0 / 63.0, 1e-13);
}

TEST(Stability, BanachSupGivesNoBound) {
  const auto cert = solve_stability(scalar_affine(0.5, 1.0), scalar_table({0.0}),
                                    StabilityTheorem::kBanachSup, 0.5, tight());
  EXPECT_TRUE(cert.converged);
  EXPECT_FALSE(cert.theoretical_bound.has_value());
  EXPECT_FALSE(cert.reason.empty());
}

TEST(Stability, SquaredBaseWithholdsBound) {
  const auto inst = affine_instance(squared(1), {0}, {0.5}, {Point{1.0}});
  const auto cert = solve_stability(inst, scalar_table({0.0}), StabilityTheorem::kBanachOrbit, 0.5, tight());
  EXPECT_EQ(cert.orbit_triangle_ok, false);
  EXPECT_FALSE(cert.theoretical_bound.has_value());
  EXPECT_NE(cert.reason.find("triangle"), std::string::npos);
}

TEST(Stability, NonConvergenceFlagged) {
  IterationConfig cfg = tight();
  cfg.max_iters = 5;
  const auto cert = solve_stability(scalar_affine(0.9, 1.0), scalar_table({0.0}),
                                    StabilityTheorem::kBanachOrbit, 0.9, cfg);
  EXPECT_FALSE(cert.converged);
  EXPECT_EQ(cert.reason.rfind("no convergence", 0), 0u);
}

TEST(Stability, KannanCeilingIsStrict) {
  EXPECT_THROW(solve_stability(scalar_affine(0.2, 1.0), scalar_table({0.0}), StabilityTheorem::kKannan,
                               0.5, tight()),
               DomainError);
}

TEST(Stability, DeclaredDeltaTooSmallRejected) {
  StabilityOptions options;
  options.declared_delta = 0.5;
  EXPECT_THROW(solve_stability(scalar_affine(0.5, 1.0), scalar_table({0.0}),
                               StabilityTheorem::kBanachOrbit, 0.5, tight(), options),
               InputError);
}

TEST(Stability, CiricWithCoefficients) {
  const auto coeffs = CiricCoefficients<FunctionTable>::constant({0.5, 0, 0, 0, 0});
  StabilityOptions options;
  options.ciric = &coeffs;
  const auto cert = solve_stability(scalar_affine(0.5, 1.0), scalar_table({0.0}),
                                    StabilityTheorem::kCiric, 0.5, tight(), options);
  EXPECT_TRUE(*cert.contraction_ok);
  EXPECT_EQ(*cert.theoretical_bound, 2.5);
  EXPECT_TRUE(*cert.bound_satisfied);
}
