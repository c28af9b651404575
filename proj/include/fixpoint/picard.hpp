#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fixpoint/contraction.hpp"
#include "fixpoint/errors.hpp"
#include "fixpoint/metric.hpp"

namespace fixpoint {

struct IterationConfig {
  std::size_t max_iters = 10'000;
  /// Cauchy threshold for the tail window and ceiling for the fixed-point residual.
  double tol = 1e-10;
  std::size_t window = 8;

  void validate() const;
};

/// Number of leading orbit iterates (after the start) examined for the triangle inequality.
inline constexpr std::size_t kTriangleEvidenceIterates = 50;
/// Absolute slack for orbit triangle checks; absorbs rounding of distances along the orbit.
inline constexpr double kTriangleSlack = 1e-12;

// Bounds on d(u0, u0*). All throw DomainError for lambda outside the theorem's range or
// negative delta.

/// delta / (1 - lambda), 0 <= lambda < 1.
double bound_banach(double delta, double lambda);
/// (1 + lambda) delta / (1 - 2 lambda), 0 <= lambda < 1/2.
double bound_kannan_chatterjea(double delta, double lambda);
/// (2 + lambda) delta / (2 (1 - lambda)), 0 <= lambda < 1.
double bound_ciric(double delta, double lambda);
/// Bound for the theorem matching `kind`.
double theoretical_bound(ContractionKind kind, double delta, double lambda);

/// Ceiling on the m-th orbit step of a Kannan map: (lambda / (1 - lambda))^(m-1) * d1,
/// where d1 = d(u0, R(u0)).
double kannan_step_bound(std::size_t m, double lambda, double d1);

template <class T>
struct Orbit {
  /// [u0, R(u0), ..., R^m(u0)]
  std::vector<T> iterates;
  /// step_distances[k] = d(R^k u0, R^{k+1} u0)
  std::vector<double> step_distances;
  /// start_distances[k] = d(u0, R^k u0)
  std::vector<double> start_distances;

  const T& start() const { return iterates.front(); }
};

namespace detail {

template <class T>
T checked_step(const SelfMap<T>& map, const T& current, std::size_t step) {
  try {
    return map(current);
  } catch (const NonFiniteError& e) {
    throw DivergenceError(step, e.what());
  }
}

template <class T>
double checked_distance(const MetricSpace<T>& space, const T& u, const T& v, std::size_t step) {
  try {
    return space(u, v);
  } catch (const DomainError& e) {
    throw DivergenceError(step, e.what());
  }
}

/// Max pairwise distance among the last window + 1 iterates is below tol.
template <class T>
bool tail_is_cauchy(const MetricSpace<T>& space, std::span<const T> iterates,
                    const IterationConfig& cfg) {
  if (iterates.size() < cfg.window + 1) return false;
  const auto tail = iterates.last(cfg.window + 1);
  double worst = 0.0;
  for (std::size_t i = 0; i < tail.size(); ++i) {
    for (std::size_t j = i + 1; j < tail.size(); ++j) worst = std::max(worst, space(tail[i], tail[j]));
  }
  return worst < cfg.tol;
}

}  // namespace detail

/// Iterates `map` m times from u0 and caches step and start distances.
/// Throws DivergenceError naming the step at which a non-finite value appears.
template <class T>
Orbit<T> compute_orbit(const MetricSpace<T>& space, const SelfMap<T>& map, const T& u0,
                       std::size_t m) {
  if (m < 1) throw InputError("orbit length must be at least 1");
  space.check_shape(u0);
  Orbit<T> orbit;
  orbit.iterates.reserve(m + 1);
  orbit.iterates.push_back(u0);
  orbit.start_distances.push_back(0.0);
  for (std::size_t k = 1; k <= m; ++k) {
    T next = detail::checked_step(map, orbit.iterates.back(), k);
    orbit.step_distances.push_back(detail::checked_distance(space, orbit.iterates.back(), next, k));
    orbit.start_distances.push_back(detail::checked_distance(space, u0, next, k));
    orbit.iterates.push_back(std::move(next));
  }
  return orbit;
}

/// True when the last cfg.window + 1 iterates are pairwise closer than cfg.tol.
/// An orbit shorter than that is not yet Cauchy.
template <class T>
bool detect_cauchy(const MetricSpace<T>& space, const Orbit<T>& orbit, const IterationConfig& cfg) {
  return detail::tail_is_cauchy<T>(space, orbit.iterates, cfg);
}

/// Checks the triangle inequality on the orbit's iterates.
template <class T>
TriangleCheck<T> check_orbit_triangle(const MetricSpace<T>& space, const Orbit<T>& orbit,
                                      double slack = 0.0) {
  return check_triangle_on_set<T>(space, orbit.iterates, slack);
}

template <class T>
struct FixedPointCertificate {
  T fixed_point;
  std::size_t iterations_used = 0;
  /// d(x*, R(x*))
  double residual = 0.0;
  ContractionKind theorem = ContractionKind::kBanach;
  /// d(u0, R(u0))
  double delta = 0.0;
  double lambda = 0.0;
  double theoretical_bound = 0.0;
  /// d(u0, x*)
  double observed_start_distance = 0.0;
  /// observed_start_distance <= theoretical_bound + tol
  bool bound_satisfied = false;
  /// Triangle inequality on the leading iterates; empty when fewer than 3 were available.
  std::optional<bool> orbit_triangle_ok{};
  std::size_t triangle_iterates_checked = 0;
  bool converged = false;
  double tol = 0.0;
  /// Orbital continuity is a hypothesis of the theorems that cannot be checked numerically.
  bool orbital_continuity_assumed = true;
};

template <class T>
struct PicardRun {
  FixedPointCertificate<T> certificate;
  std::vector<T> iterates;
};

/// Picard iteration with the full orbit retained. Stops once the tail window is Cauchy and
/// the residual is within tol, or after cfg.max_iters map applications (converged = false).
template <class T>
PicardRun<T> run_picard(const MetricSpace<T>& space, const SelfMap<T>& map, const T& u0,
                        const IterationConfig& cfg, ContractionKind theorem, double lambda) {
  cfg.validate();
  require_admissible_lambda(theorem, lambda);
  space.check_shape(u0);

  std::vector<T> iterates{u0};
  double delta = 0.0;
  double residual = 0.0;
  bool converged = false;
  for (std::size_t step = 1;; ++step) {
    T next = detail::checked_step(map, iterates.back(), step);
    residual = detail::checked_distance(space, iterates.back(), next, step);
    if (step == 1) delta = residual;
    if (residual <= cfg.tol && detail::tail_is_cauchy<T>(space, iterates, cfg)) {
      converged = true;
      break;
    }
    if (iterates.size() > cfg.max_iters) break;
    iterates.push_back(std::move(next));
  }

  FixedPointCertificate<T> cert{.fixed_point = iterates.back()};
  cert.iterations_used = iterates.size() - 1;
  cert.residual = residual;
  cert.theorem = theorem;
  cert.delta = delta;
  cert.lambda = lambda;
  cert.theoretical_bound = theoretical_bound(theorem, delta, lambda);
  cert.observed_start_distance = space(u0, cert.fixed_point);
  cert.bound_satisfied = cert.observed_start_distance <= cert.theoretical_bound + cfg.tol;
  cert.converged = converged;
  cert.tol = cfg.tol;

  const std::size_t head = std::min(cert.iterations_used, kTriangleEvidenceIterates) + 1;
  if (head >= 3) {
    const auto check = check_triangle_on_set<T>(space, std::span<const T>(iterates).first(head),
                                                kTriangleSlack);
    cert.orbit_triangle_ok = check.holds;
    cert.triangle_iterates_checked = head;
  }
  return {std::move(cert), std::move(iterates)};
}

/// Finds the fixed point of `map` by iteration from u0 and certifies d(u0, x*) against the
/// bound of `theorem`. Non-convergence is reported in the certificate, never thrown.
template <class T>
FixedPointCertificate<T> solve_fixed_point(const MetricSpace<T>& space, const SelfMap<T>& map,
                                           const T& u0, const IterationConfig& cfg,
                                           ContractionKind theorem, double lambda) {
  return run_picard(space, map, u0, cfg, theorem, lambda).certificate;
}

template <class T>
struct UniquenessResult {
  bool unique = false;
  bool all_converged = false;
  std::vector<T> fixed_points;
};

/// Solves from every start and reports whether all fixed points coincide within cfg.tol.
template <class T>
UniquenessResult<T> verify_uniqueness(const MetricSpace<T>& space, const SelfMap<T>& map,
                                      std::span<const T> starts, const IterationConfig& cfg,
                                      ContractionKind theorem, double lambda) {
  if (starts.empty()) throw InputError("uniqueness check needs at least one start");
  UniquenessResult<T> result;
  result.all_converged = true;
  for (const auto& start : starts) {
    auto cert = solve_fixed_point(space, map, start, cfg, theorem, lambda);
    result.all_converged = result.all_converged && cert.converged;
    result.fixed_points.push_back(std::move(cert.fixed_point));
  }
  result.unique = result.all_converged;
  for (std::size_t i = 0; i < result.fixed_points.size() && result.unique; ++i) {
    for (std::size_t j = i + 1; j < result.fixed_points.size(); ++j) {
      if (space(result.fixed_points[i], result.fixed_points[j]) > cfg.tol) {
        result.unique = false;
        break;
      }
    }
  }
  return result;
}

template <class T>
struct BruteForceResult {
  T point;
  double residual = 0.0;
  std::size_t index = 0;
};

/// Grid point minimizing d(x, R(x)); the earliest point wins ties.
template <class T>
BruteForceResult<T> brute_force_fixed_point(const MetricSpace<T>& space, const SelfMap<T>& map,
                                            std::span<const T> grid) {
  if (grid.empty()) throw InputError("brute-force search needs a non-empty grid");
  std::size_t best = 0;
  double best_residual = space(grid[0], map(grid[0]));
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double r = space(grid[i], map(grid[i]));
    if (r < best_residual) {
      best_residual = r;
      best = i;
    }
  }
  return {grid[best], best_residual, best};
}

}  // namespace fixpoint
