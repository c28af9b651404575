#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fixpoint/errors.hpp"
#include "fixpoint/point.hpp"

namespace fixpoint {

/// What is known about the triangle inequality of a distance.
enum class TriangleStatus { kGlobal, kOrbitOnly, kNone, kUnknown };

std::string_view to_string(TriangleStatus status);

/// A non-triangular metric: symmetric, zero on the diagonal, non-negative, with unique limits.
/// No triangle inequality is assumed; `triangle_status` records what the catalogue knows.
///
/// `T` is the carrier element (Point for the base spaces, FunctionTable for lifted spaces).
/// Instances are immutable and safe to share across threads.
template <class T>
class MetricSpace {
 public:
  using Distance = std::function<double(const T&, const T&)>;
  /// Throws InputError when an element has the wrong shape for this space.
  using ShapeCheck = std::function<void(const T&)>;

  MetricSpace(std::string name, std::size_t dimension, TriangleStatus status, Distance distance,
              ShapeCheck shape_check, bool exact_formula)
      : name_(std::move(name)),
        dimension_(dimension),
        status_(status),
        distance_(std::move(distance)),
        shape_check_(std::move(shape_check)),
        exact_formula_(exact_formula) {
    if (dimension_ == 0) throw InputError("metric space dimension must be positive");
  }

  /// Distance between u and v. Rejects shape mismatches and negative or non-finite values.
  double operator()(const T& u, const T& v) const {
    shape_check_(u);
    shape_check_(v);
    const double d = distance_(u, v);
    if (!std::isfinite(d) || d < 0.0) {
      throw DomainError("metric '" + name_ + "' produced an invalid distance " +
                        format_real(d));
    }
    return d;
  }

  const std::string& name() const noexcept { return name_; }
  /// Coordinate count for point spaces, domain size for function-table spaces.
  std::size_t dimension() const noexcept { return dimension_; }
  TriangleStatus triangle_status() const noexcept { return status_; }
  /// True when symmetry and the zero diagonal hold exactly in floating point.
  bool exact_formula() const noexcept { return exact_formula_; }
  void check_shape(const T& u) const { shape_check_(u); }

 private:
  std::string name_;
  std::size_t dimension_;
  TriangleStatus status_;
  Distance distance_;
  ShapeCheck shape_check_;
  bool exact_formula_;
};

using PointSpace = MetricSpace<Point>;
using TableSpace = MetricSpace<FunctionTable>;

inline double eval_metric(const PointSpace& space, const Point& u, const Point& v) {
  return space(u, v);
}

// Catalogue of built-in spaces on R^dim.
PointSpace euclidean(std::size_t dim);
PointSpace max_metric(std::size_t dim);
/// Squared euclidean distance: a b-metric that violates the triangle inequality.
PointSpace squared(std::size_t dim);
/// 0 when equal, 1 otherwise.
PointSpace discrete(std::size_t dim);

/// Looks up "euclidean", "max", "squared" or "discrete"; throws InputError otherwise.
PointSpace make_metric(std::string_view name, std::size_t dim);
std::span<const std::string_view> metric_names();

/// Wraps an arbitrary distance function. Axiom checks on it use tolerances, not exact equality.
PointSpace custom_metric(std::string name, std::size_t dim, TriangleStatus status,
                         PointSpace::Distance distance);

/// Lifts `base` to tables over a domain of `domain_size` entries by taking the maximum of the
/// pointwise distances. The result inherits the base's triangle status.
TableSpace sup_metric(const PointSpace& base, std::size_t domain_size);

// ---------------------------------------------------------------------------------------------
// Axiom checks

enum class Axiom { kN1, kN2, kN3 };

std::string_view to_string(Axiom axiom);

inline constexpr double kDefaultAxiomTol = 1e-9;

/// Evidence for the unique-limit axiom: a sequence that should converge to both candidates.
template <class T>
struct WitnessSequence {
  std::vector<T> terms;
  std::pair<T, T> candidate_limits;
};

template <class T>
struct AxiomViolation {
  Axiom axiom;
  std::vector<T> witness;
  std::vector<double> values;
};

template <class T>
struct AxiomReport {
  bool n1_pass = true;
  bool n2_pass = true;
  bool n3_pass = true;
  std::vector<AxiomViolation<T>> violations;

  bool all_pass() const noexcept { return n1_pass && n2_pass && n3_pass; }
};

/// Checks N1 and N2 on every element and pair of `sample`, and N3 on the supplied witnesses.
///
/// Catalogue spaces are compared exactly; custom spaces within `tol`. A witness violates N3
/// when its last term lies within `tol` of both candidate limits while the limits themselves
/// differ by more than `tol` in some coordinate. An asymmetric pair is reported with the larger
/// direction first.
template <class T>
AxiomReport<T> check_axioms(const MetricSpace<T>& space, std::span<const T> sample,
                            std::span<const WitnessSequence<T>> witnesses,
                            double tol = kDefaultAxiomTol) {
  if (sample.empty()) throw InputError("axiom check needs a non-empty sample");
  if (!(tol > 0.0)) throw InputError("axiom tolerance must be positive");
  const bool exact = space.exact_formula();

  AxiomReport<T> report;
  for (const auto& u : sample) {
    const double self = space(u, u);
    if (exact ? self != 0.0 : self > tol) {
      report.n1_pass = false;
      report.violations.push_back({Axiom::kN1, {u}, {self}});
    }
  }
  for (std::size_t i = 0; i < sample.size(); ++i) {
    for (std::size_t j = i + 1; j < sample.size(); ++j) {
      const double forward = space(sample[i], sample[j]);
      const double backward = space(sample[j], sample[i]);
      const bool ok = exact ? forward == backward : std::abs(forward - backward) <= tol;
      if (ok) continue;
      report.n2_pass = false;
      if (forward >= backward) {
        report.violations.push_back({Axiom::kN2, {sample[i], sample[j]}, {forward, backward}});
      } else {
        report.violations.push_back({Axiom::kN2, {sample[j], sample[i]}, {backward, forward}});
      }
    }
  }
  for (const auto& w : witnesses) {
    if (w.terms.empty()) throw InputError("witness sequence has no terms");
    const auto& tail = w.terms.back();
    const auto& [first, second] = w.candidate_limits;
    const double d_first = space(tail, first);
    const double d_second = space(tail, second);
    const double gap = coordinate_gap(first, second);
    if (d_first < tol && d_second < tol && gap > tol) {
      report.n3_pass = false;
      report.violations.push_back({Axiom::kN3, {tail, first, second}, {d_first, d_second, gap}});
    }
  }
  return report;
}

template <class T>
struct TriangleWitness {
  T a, b, c;
  double d_ac, d_ab, d_bc;
};

template <class T>
struct TriangleCheck {
  bool holds = true;
  std::optional<TriangleWitness<T>> witness;
};

/// Tests d(a,c) <= d(a,b) + d(b,c) + slack over every ordered triple of `points`, scanning
/// (i, j, k) lexicographically and stopping at the first violation.
template <class T>
TriangleCheck<T> check_triangle_on_set(const MetricSpace<T>& space, std::span<const T> points,
                                       double slack = 0.0) {
  const std::size_t n = points.size();
  if (n < 3) throw InputError("triangle check needs at least 3 points");
  std::vector<double> dist(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) dist[i * n + j] = space(points[i], points[j]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const double ac = dist[i * n + k];
        const double ab = dist[i * n + j];
        const double bc = dist[j * n + k];
        if (ac > ab + bc + slack) {
          return {false, TriangleWitness<T>{points[i], points[j], points[k], ac, ab, bc}};
        }
      }
    }
  }
  return {};
}

}  // namespace fixpoint
