#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fixpoint/errors.hpp"
#include "fixpoint/metric.hpp"
#include "fixpoint/point.hpp"
#include "fixpoint/rng.hpp"

namespace fixpoint {

enum class ContractionKind { kBanach, kKannan, kChatterjea, kCiric };

std::string_view to_string(ContractionKind kind);
/// Parses "BANACH", "KANNAN", "CHATTERJEA" or "CIRIC".
ContractionKind parse_contraction_kind(std::string_view name);

/// Strict upper limit on lambda: 1 for Banach and Ciric, 1/2 for Kannan and Chatterjea.
double lambda_ceiling(ContractionKind kind) noexcept;

/// Throws DomainError unless 0 <= lambda < lambda_ceiling(kind).
void require_admissible_lambda(ContractionKind kind, double lambda);

/// A deterministic self-map of the carrier.
template <class T>
struct SelfMap {
  std::string name;
  std::size_t dimension = 1;
  std::function<T(const T&)> apply;

  T operator()(const T& u) const { return apply(u); }
};

using MapUnderTest = SelfMap<Point>;

/// Result of dividing an image distance by a contraction denominator.
struct Ratio {
  enum class State { kFinite, kUndefined, kUnbounded };
  State state = State::kUndefined;
  double value = 0.0;

  bool finite() const noexcept { return state == State::kFinite; }
};

/// Absolute slack added to the right-hand side of contraction inequalities. Covers rounding in
/// maps such as x -> a*x + c whose exact ratio sits on the tested lambda.
inline constexpr double kDefaultConditionSlack = 1e-12;

template <class T>
using ElementPair = std::pair<T, T>;

/// d(Ru, Rv) over the kind's denominator: d(u,v) for Banach, d(Ru,u) + d(Rv,v) for Kannan,
/// d(Ru,v) + d(Rv,u) for Chatterjea. 0/0 is undefined; a positive value over 0 is unbounded.
template <class T>
Ratio condition_ratio(const MetricSpace<T>& space, const SelfMap<T>& map, ContractionKind kind,
                      const T& u, const T& v) {
  if (kind == ContractionKind::kCiric) {
    throw UnsupportedKindError("CIRIC has no single ratio; use verify_condition");
  }
  const T ru = map(u);
  const T rv = map(v);
  const double numerator = space(ru, rv);
  double denominator = 0.0;
  switch (kind) {
    case ContractionKind::kBanach: denominator = space(u, v); break;
    case ContractionKind::kKannan: denominator = space(ru, u) + space(rv, v); break;
    case ContractionKind::kChatterjea: denominator = space(ru, v) + space(rv, u); break;
    case ContractionKind::kCiric: break;
  }
  if (denominator == 0.0) {
    return numerator == 0.0 ? Ratio{Ratio::State::kUndefined, 0.0}
                            : Ratio{Ratio::State::kUnbounded, 0.0};
  }
  return {Ratio::State::kFinite, numerator / denominator};
}

template <class T>
struct ContractionReport {
  ContractionKind kind = ContractionKind::kBanach;
  /// Largest ratio seen; +infinity when some pair was unbounded.
  double lambda_estimate = 0.0;
  bool unbounded = false;
  bool admissible = false;
  /// False when every pair was 0/0 and the estimate carries no information.
  bool informative = false;
  std::optional<ElementPair<T>> worst_pair;
  std::size_t pairs_checked = 0;
  std::size_t pairs_skipped = 0;
};

/// Least lambda consistent with the sampled pairs: the maximum defined ratio. Undefined pairs
/// are skipped and an unbounded pair dominates. Ties keep the earliest pair.
template <class T>
ContractionReport<T> estimate_lambda(const MetricSpace<T>& space, const SelfMap<T>& map,
                                     ContractionKind kind, std::span<const ElementPair<T>> pairs) {
  if (pairs.empty()) throw InputError("lambda estimation needs at least one pair");
  if (kind == ContractionKind::kCiric) {
    throw UnsupportedKindError("CIRIC lambda cannot be estimated from a single ratio");
  }
  ContractionReport<T> report;
  report.kind = kind;
  for (const auto& pair : pairs) {
    ++report.pairs_checked;
    const Ratio r = condition_ratio(space, map, kind, pair.first, pair.second);
    if (r.state == Ratio::State::kUndefined) {
      ++report.pairs_skipped;
      continue;
    }
    if (r.state == Ratio::State::kUnbounded) {
      if (!report.unbounded) {
        report.unbounded = true;
        report.worst_pair = pair;
      }
      report.informative = true;
      continue;
    }
    if (!report.unbounded && (!report.informative || r.value > report.lambda_estimate)) {
      report.lambda_estimate = r.value;
      report.worst_pair = pair;
    }
    report.informative = true;
  }
  if (report.unbounded) report.lambda_estimate = std::numeric_limits<double>::infinity();
  report.admissible = report.lambda_estimate < lambda_ceiling(kind);
  return report;
}

/// The five Ciric coefficients, evaluated at the pair under test.
template <class T>
struct CiricCoefficients {
  std::function<std::array<double, 5>(const T&, const T&)> at;

  static CiricCoefficients constant(std::array<double, 5> values) {
    return {[values](const T&, const T&) { return values; }};
  }
};

template <class T>
struct ConditionCheck {
  bool holds = true;
  std::optional<ElementPair<T>> witness;
  /// lhs - rhs at the witness, 0 when the condition holds.
  double excess = 0.0;
  std::size_t pairs_checked = 0;
};

/// Checks the kind's inequality at every pair with the given lambda and returns the first
/// violation. CIRIC uses the five-term inequality and requires `coeffs`, which must be
/// non-negative and sum to at most lambda at each tested pair.
template <class T>
ConditionCheck<T> verify_condition(const MetricSpace<T>& space, const SelfMap<T>& map,
                                   ContractionKind kind, double lambda,
                                   std::span<const ElementPair<T>> pairs,
                                   const CiricCoefficients<T>* coeffs = nullptr,
                                   double slack = kDefaultConditionSlack) {
  require_admissible_lambda(kind, lambda);
  if (kind == ContractionKind::kCiric && (coeffs == nullptr || !coeffs->at)) {
    throw InputError("CIRIC condition requires coefficients");
  }
  ConditionCheck<T> check;
  for (const auto& pair : pairs) {
    const T& u = pair.first;
    const T& v = pair.second;
    const T ru = map(u);
    const T rv = map(v);
    const double lhs = space(ru, rv);
    double rhs = 0.0;
    switch (kind) {
      case ContractionKind::kBanach: rhs = lambda * space(u, v); break;
      case ContractionKind::kKannan: rhs = lambda * (space(ru, u) + space(rv, v)); break;
      case ContractionKind::kChatterjea: rhs = lambda * (space(ru, v) + space(rv, u)); break;
      case ContractionKind::kCiric: {
        const auto c = coeffs->at(u, v);
        double sum = 0.0;
        for (double ci : c) {
          if (!(ci >= 0.0)) {
            throw CoefficientError("negative Ciric coefficient at pair " + to_string(u) + ", " +
                                   to_string(v));
          }
          sum += ci;
        }
        if (sum > lambda * (1.0 + 1e-12)) {
          throw CoefficientError("Ciric coefficients sum to " + format_real(sum) +
                                 " > lambda at pair " + to_string(u) + ", " + to_string(v));
        }
        rhs = c[0] * space(u, v) + c[1] * space(ru, u) + c[2] * space(rv, v) +
              c[3] * space(ru, v) + c[4] * space(rv, u);
        break;
      }
    }
    ++check.pairs_checked;
    if (lhs > rhs + slack) {
      check.holds = false;
      check.witness = pair;
      check.excess = lhs - rhs;
      return check;
    }
  }
  return check;
}

/// Per-step factor obtained by symmetrizing the Ciric inequality along an orbit:
/// (l1 + (l2+l3)/2 + (l4+l5)/2) / (1 - (l2+l3)/2 - (l4+l5)/2).
double ciric_reduced_factor(const std::array<double, 5>& coeffs);

// ---------------------------------------------------------------------------------------------
// Pair sampling

/// Axis-aligned box [lo, hi] in R^d.
struct Box {
  Point lo;
  Point hi;

  Box(Point lo_corner, Point hi_corner);
  std::size_t dim() const noexcept { return lo.dim(); }
};

/// Tensor grid with `per_axis` evenly spaced values on each axis, endpoints included.
std::vector<Point> grid_points(const Box& box, std::size_t per_axis);
std::vector<Point> uniform_points(const Box& box, std::size_t count, SplitMix64& rng);

/// All unordered pairs (i < j).
std::vector<ElementPair<Point>> all_pairs(std::span<const Point> points);
std::vector<ElementPair<Point>> grid_pairs(const Box& box, std::size_t per_axis);
std::vector<ElementPair<Point>> uniform_pairs(const Box& box, std::size_t count,
                                              std::uint64_t seed);

}  // namespace fixpoint
