#include "fixpoint/repro.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>

#include "fixpoint/contraction.hpp"
#include "fixpoint/funceq.hpp"
#include "fixpoint/maps.hpp"
#include "fixpoint/metric.hpp"
#include "fixpoint/report.hpp"
#include "fixpoint/rng.hpp"

namespace fixpoint {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

/// Row for "observed <= bound".
ReproRow ceiling_row(int criterion, std::string label, double bound, double observed,
                     std::string detail = {}) {
  const double margin = bound - observed;
  return {criterion, std::move(label), bound, observed, margin, margin >= 0.0, std::move(detail)};
}

std::vector<std::size_t> random_psi(std::size_t n, SplitMix64& rng) {
  std::vector<std::size_t> psi(n);
  for (auto& p : psi) p = static_cast<std::size_t>(rng.below(n));
  return psi;
}

// 1. Tightness of delta / (1 - lambda) on G(s, x) = lambda x + 1 from g = 0.
void banach_tightness(const ReproOptions& opt, std::vector<ReproRow>& rows) {
  IterationConfig cfg;
  cfg.tol = 1e-13;
  for (double lambda : {0.1, 0.5, 0.9}) {
    const auto inst = affine_instance(euclidean(1), {0}, {lambda}, {Point{1.0}});
    const auto cert = solve_stability(inst, constant_table(1, Point{0.0}),
                                      StabilityTheorem::kBanachOrbit, lambda, cfg);
    const double bound = opt.banach_bound(cert.delta, lambda);
    const double err = std::abs(cert.sup_distance - bound);
    ReproRow row{1, fmt("Banach bound tight, lambda=%.1f", lambda), bound, cert.sup_distance,
                 1e-10 - err, cert.converged && err <= 1e-10,
                 fmt("delta=%.17g |observed-bound|=%.3g", cert.delta, err)};
    rows.push_back(std::move(row));
  }
}

// 2. Iterative Baker solutions against the series oracle, plus the distance bound.
void baker_oracle(const ReproOptions& opt, std::vector<ReproRow>& rows) {
  constexpr int kInstances = 200;
  SplitMix64 rng(opt.seed ^ 0xba4e5u);
  IterationConfig cfg;
  cfg.tol = 1e-10;
  double worst_gap = 0.0;
  double worst_margin = kInf;
  int violations = 0;
  int failures = 0;
  std::string first_failure;
  for (int i = 0; i < kInstances; ++i) {
    const std::size_t n = 1 + rng.below(8);
    const std::size_t dim = 1 + rng.below(3);
    auto psi = random_psi(n, rng);
    std::vector<double> lam(n);
    for (auto& l : lam) l = rng.uniform(0.0, 0.9);
    Norm norm = Norm::euclidean();
    switch (rng.below(3)) {
      case 0: break;
      case 1: norm = Norm::max(); break;
      default: {
        std::vector<double> w(dim);
        for (auto& x : w) x = rng.uniform(0.5, 1.5);
        norm = Norm::weighted_sum(std::move(w));
      }
    }
    std::vector<Point> b;
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<double> coords(dim);
      for (auto& x : coords) x = rng.uniform(-10.0, 10.0);
      Point p(std::move(coords));
      const double size = norm(p);
      if (size > 10.0) p = (10.0 / size) * p;
      b.push_back(std::move(p));
    }
    const BakerInstance inst{n, std::move(psi), std::move(lam), FunctionTable(std::move(b)),
                             std::move(norm)};
    const double magnitude = rng.uniform(0.0, 1.0);
    const std::uint64_t perturb_seed = rng.next();
    try {
      const auto series = baker_series_solution(inst, 64, 1e-13);
      const auto f0 = perturb_solution(series, magnitude, perturb_seed);
      const auto cert = solve_baker(inst, f0, cfg);
      if (!cert.converged || !cert.oracle_gap) {
        ++failures;
        if (first_failure.empty()) first_failure = "instance " + std::to_string(i) + " did not converge";
        continue;
      }
      worst_gap = std::max(worst_gap, *cert.oracle_gap);
      const double bound = opt.banach_bound(cert.delta, cert.lambda);
      const double margin = bound + cfg.tol - cert.sup_distance;
      worst_margin = std::min(worst_margin, margin);
      if (margin < 0.0) ++violations;
    } catch (const Error& e) {
      ++failures;
      if (first_failure.empty()) first_failure = "instance " + std::to_string(i) + ": " + e.what();
    }
  }
  ReproRow gap_row = ceiling_row(2, "Baker series oracle agreement", 1e-10, worst_gap,
                                 std::to_string(kInstances) + " instances, max gap " +
                                     fmt("%.3g", worst_gap));
  if (failures > 0) {
    gap_row.pass = false;
    gap_row.detail += "; " + std::to_string(failures) + " failed: " + first_failure;
  }
  rows.push_back(std::move(gap_row));
  ReproRow bound_row{2, "Baker distance bound", 0.0, static_cast<double>(violations),
                     worst_margin, violations == 0 && failures == 0,
                     fmt("violations=%.0f, tightest margin %.3g", violations, worst_margin)};
  rows.push_back(std::move(bound_row));
}

// 3. Step decay of the Kannan map x / 4.
void kannan_decay(const ReproOptions&, std::vector<ReproRow>& rows) {
  const auto space = euclidean(1);
  const auto map = scale_map(1, 0.25);
  const Box box(Point{-2.0}, Point{2.0});
  const auto pairs = grid_pairs(box, 41);
  const auto est = estimate_lambda<Point>(space, map, ContractionKind::kKannan, pairs);
  const double lambda = 1.0 / 3.0;
  const double est_err = std::abs(est.lambda_estimate - lambda);
  rows.push_back({3, "Kannan lambda of x/4 on grid", lambda, est.lambda_estimate, 1e-12 - est_err,
                  est_err <= 1e-12,
                  std::to_string(est.pairs_checked) + " grid pairs"});

  const auto orbit = compute_orbit(space, map, Point{2.0}, 50);
  const double d1 = orbit.step_distances.front();
  double worst = kInf;
  std::size_t worst_m = 1;
  double worst_bound = 0.0;
  double worst_obs = 0.0;
  for (std::size_t m = 1; m <= 50; ++m) {
    const double bound = kannan_step_bound(m, lambda, d1);
    const double observed = orbit.step_distances[m - 1];
    const double margin = bound + 1e-12 - observed;
    if (margin < worst) {
      worst = margin;
      worst_m = m;
      worst_bound = bound;
      worst_obs = observed;
    }
  }
  rows.push_back({3, "Kannan step decay m<=50", worst_bound, worst_obs, worst, worst >= 0.0,
                  "tightest at m=" + std::to_string(worst_m)});
}

// 4. Chatterjea bound on random affine equations.
void chatterjea_bound(const ReproOptions& opt, std::vector<ReproRow>& rows) {
  constexpr int kInstances = 100;
  SplitMix64 rng(opt.seed ^ 0xc4a77u);
  IterationConfig cfg;
  cfg.tol = 1e-12;
  double worst = kInf;
  double worst_bound = 0.0;
  double worst_obs = 0.0;
  int violations = 0;
  int triangle_fail = 0;
  int failures = 0;
  for (int i = 0; i < kInstances; ++i) {
    const std::size_t n = 1 + rng.below(8);
    auto psi = random_psi(n, rng);
    std::vector<double> a(n);
    std::vector<Point> c;
    std::vector<Point> g;
    for (auto& x : a) x = rng.uniform(0.0, 0.8);
    for (std::size_t s = 0; s < n; ++s) c.push_back(Point{rng.uniform(-5.0, 5.0)});
    for (std::size_t s = 0; s < n; ++s) g.push_back(Point{rng.uniform(-5.0, 5.0)});
    const double a_max = *std::max_element(a.begin(), a.end());
    const double lambda = a_max / (1.0 + a_max);
    try {
      const auto inst = affine_instance(euclidean(1), std::move(psi), std::move(a), std::move(c));
      const auto cert = solve_stability(inst, FunctionTable(std::move(g)),
                                        StabilityTheorem::kChatterjea, lambda, cfg);
      if (cert.orbit_triangle_ok != true) {
        ++triangle_fail;
        continue;
      }
      if (!cert.converged || !cert.theoretical_bound) {
        ++failures;
        continue;
      }
      const double margin = *cert.theoretical_bound + 1e-9 - cert.sup_distance;
      if (margin < 0.0) ++violations;
      if (margin < worst) {
        worst = margin;
        worst_bound = *cert.theoretical_bound;
        worst_obs = cert.sup_distance;
      }
    } catch (const Error&) {
      ++failures;
    }
  }
  rows.push_back({4, "Chatterjea bound, affine G", worst_bound, worst_obs, worst,
                  violations == 0 && triangle_fail == 0 && failures == 0,
                  std::to_string(kInstances) + " instances, violations=" + std::to_string(violations) +
                      ", triangle failures=" + std::to_string(triangle_fail) +
                      ", errors=" + std::to_string(failures)});
}

// 5. Ciric reduction factor and bound dominance.
void ciric_reduction(const ReproOptions& opt, std::vector<ReproRow>& rows) {
  constexpr int kTuples = 1000;
  SplitMix64 rng(opt.seed ^ 0xc1e1cu);
  int factor_fail = 0;
  int dominance_fail = 0;
  double worst_gap = kInf;
  double worst_dom = kInf;
  for (int i = 0; i < kTuples; ++i) {
    const double lambda = rng.uniform(0.01, 0.99);
    std::array<double, 5> c{};
    double raw = 0.0;
    for (auto& x : c) {
      x = rng.uniform(0.01, 1.0);
      raw += x;
    }
    const double target = lambda * rng.uniform(0.5, 1.0);
    double sum = 0.0;
    for (auto& x : c) {
      x *= target / raw;
      sum += x;
    }
    const double factor = ciric_reduced_factor(c);
    if (!(factor < sum && sum <= lambda)) ++factor_fail;
    worst_gap = std::min(worst_gap, sum - factor);

    const double delta = rng.uniform(0.0, 10.0);
    const double dom = bound_ciric(delta, lambda) - opt.banach_bound(delta, lambda);
    if (dom < 0.0) ++dominance_fail;
    worst_dom = std::min(worst_dom, dom);
  }
  rows.push_back({5, "Ciric factor below coefficient sum", 0.0, static_cast<double>(factor_fail),
                  worst_gap, factor_fail == 0,
                  fmt("%.0f tuples, min(sum - factor)=%.3g", kTuples, worst_gap)});
  rows.push_back({5, "Ciric bound dominates Banach bound", 0.0, static_cast<double>(dominance_fail),
                  worst_dom, dominance_fail == 0,
                  fmt("%.0f tuples, min(ciric - banach)=%.3g", kTuples, worst_dom)});
}

// 6. Squared metric loses the triangle inequality along the halving orbit.
void triangle_counterexample(const ReproOptions&, std::vector<ReproRow>& rows) {
  const auto space = squared(1);
  const auto orbit = compute_orbit(space, scale_map(1, 0.5), Point{1.0}, 2);
  const auto check = check_orbit_triangle(space, orbit);
  bool pass = !check.holds && check.witness.has_value();
  double err = kInf;
  if (pass) {
    const auto& w = *check.witness;
    const bool points = w.a == Point{1.0} && w.b == Point{0.5} && w.c == Point{0.25};
    err = std::max(std::abs(w.d_ac - 9.0 / 16.0), std::abs(w.d_ab + w.d_bc - 5.0 / 16.0));
    pass = points && err <= 1e-15;
  }
  rows.push_back({6, "Squared-metric orbit triangle fails", 9.0 / 16.0,
                  check.witness ? check.witness->d_ac : 0.0, 1e-15 - err, pass,
                  check.witness ? fmt("d(1,1/4)=%.17g vs d(1,1/2)+d(1/2,1/4)=%.17g",
                                      check.witness->d_ac, check.witness->d_ab + check.witness->d_bc)
                                : std::string("no violation found")});
}

template <class T>
double max_pairwise(const MetricSpace<T>& space, const std::vector<T>& points) {
  double worst = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) worst = std::max(worst, space(points[i], points[j]));
  }
  return worst;
}

template <class T>
ReproRow uniqueness_row(std::string label, const MetricSpace<T>& space, const SelfMap<T>& map,
                        const std::vector<T>& starts, double lambda) {
  IterationConfig cfg;
  cfg.tol = 1e-12;
  const auto result = verify_uniqueness<T>(space, map, starts, cfg, ContractionKind::kBanach, lambda);
  const double spread = max_pairwise(space, result.fixed_points);
  return {7, std::move(label), 1e-9, spread, 1e-9 - spread,
          result.all_converged && spread <= 1e-9, std::to_string(starts.size()) + " starts"};
}

// 7. Every catalogue contraction has one fixed point.
void uniqueness(const ReproOptions&, std::vector<ReproRow>& rows) {
  const auto e1 = euclidean(1);
  const std::vector<Point> starts1{Point{-1.5}, Point{0.3}, Point{2.0}};
  rows.push_back(uniqueness_row<Point>("unique: x/2", e1, scale_map(1, 0.5), starts1, 0.5));
  rows.push_back(uniqueness_row<Point>("unique: x/4", e1, scale_map(1, 0.25), starts1, 0.25));
  rows.push_back(uniqueness_row<Point>("unique: 0.5x+1", e1, affine_map(0.5, Point{1.0}), starts1, 0.5));
  rows.push_back(uniqueness_row<Point>("unique: cos on [0.54,1]", e1, cosine_map(1, 0.54, 1.0),
                                       {Point{0.54}, Point{0.8}, Point{1.0}}, 0.85));
  const auto m2 = max_metric(2);
  rows.push_back(uniqueness_row<Point>("unique: x/2 in R^2 (max)", m2, scale_map(2, 0.5),
                                       {Point{-1.0, 2.0}, Point{0.5, 0.5}, Point{3.0, -4.0}}, 0.5));

  const LiftedOperator affine(affine_instance(euclidean(1), {1, 0, 2}, {0.5, 0.3, 0.7},
                                              {Point{1.0}, Point{-2.0}, Point{0.5}}));
  const std::vector<FunctionTable> tables{constant_table(3, Point{0.0}),
                                          FunctionTable({Point{5.0}, Point{-3.0}, Point{1.0}}),
                                          constant_table(3, Point{-10.0})};
  rows.push_back(uniqueness_row<FunctionTable>("unique: affine equation, psi=(1,0,2)",
                                               affine.space(), affine.as_map(), tables, 0.7));

  const BakerInstance baker{2, {1, 0}, {0.5, 0.5}, FunctionTable({Point{1.0}, Point{0.0}}),
                            Norm::euclidean()};
  const LiftedOperator linear(to_funceq(baker));
  const std::vector<FunctionTable> baker_starts{constant_table(2, Point{0.0}),
                                                FunctionTable({Point{4.0}, Point{-4.0}}),
                                                constant_table(2, Point{100.0})};
  rows.push_back(uniqueness_row<FunctionTable>("unique: Baker swap", linear.space(),
                                               linear.as_map(), baker_starts, 0.5));
}

// 8. Iteration agrees with a brute-force grid search in one dimension.
void brute_force(const ReproOptions&, std::vector<ReproRow>& rows) {
  struct Case {
    std::string label;
    MapUnderTest map;
    double lo, hi, lambda, start;
  };
  const std::vector<Case> cases{
      {"brute force: x/2 on [-2,2]", scale_map(1, 0.5), -2.0, 2.0, 0.5, 1.0},
      {"brute force: cos on [0.54,1]", cosine_map(1, 0.54, 1.0), 0.54, 1.0, 0.85, 1.0},
      {"brute force: x/4 on [-2,2]", scale_map(1, 0.25), -2.0, 2.0, 0.25, 2.0},
      {"brute force: 0.5x+1 on [0,4]", affine_map(0.5, Point{1.0}), 0.0, 4.0, 0.5, 0.0},
  };
  const auto space = euclidean(1);
  constexpr std::size_t kGrid = 10'000;
  IterationConfig cfg;
  cfg.tol = 1e-12;
  for (const auto& c : cases) {
    const auto grid = grid_points(Box(Point{c.lo}, Point{c.hi}), kGrid);
    const auto bf = brute_force_fixed_point<Point>(space, c.map, grid);
    const auto cert = solve_fixed_point(space, c.map, Point{c.start}, cfg, ContractionKind::kBanach, c.lambda);
    const double spacing = (c.hi - c.lo) / static_cast<double>(kGrid - 1);
    const double gap = space(cert.fixed_point, bf.point);
    const double allowed = spacing + 1e-9;
    rows.push_back({8, c.label, allowed, gap, allowed - gap, cert.converged && gap <= allowed,
                    "iterative " + to_string(cert.fixed_point) + ", grid " + to_string(bf.point)});
  }
}

}  // namespace

std::vector<ReproRow> run_bound_checks(const ReproOptions& options) {
  std::vector<ReproRow> rows;
  banach_tightness(options, rows);
  baker_oracle(options, rows);
  kannan_decay(options, rows);
  chatterjea_bound(options, rows);
  ciric_reduction(options, rows);
  triangle_counterexample(options, rows);
  uniqueness(options, rows);
  brute_force(options, rows);
  return rows;
}

std::vector<ReproRow> run_repro(const ReproOptions& options) {
  auto rows = run_bound_checks(options);
  const std::string first = dump(to_json(rows));
  const std::string second = dump(to_json(run_bound_checks(options)));
  const bool same = first == second;
  rows.push_back({9, "Deterministic rerun of rows 1-8", 0.0, same ? 0.0 : 1.0, same ? 0.0 : -1.0,
                  same, std::to_string(first.size()) + " bytes compared"});
  return rows;
}

json to_json(const ReproRow& row) {
  return json{{"criterion", row.criterion}, {"label", row.label},   {"bound", real(row.bound)},
              {"observed", real(row.observed)}, {"margin", real(row.margin)}, {"pass", row.pass},
              {"detail", row.detail}};
}

json to_json(const std::vector<ReproRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) out.push_back(to_json(r));
  return out;
}

bool all_pass(const std::vector<ReproRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const ReproRow& r) { return r.pass; });
}

}  // namespace fixpoint
