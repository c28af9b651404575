#include "fixpoint/metric.hpp"

#include <algorithm>
#include <array>

namespace fixpoint {

namespace {

PointSpace::ShapeCheck point_shape(std::size_t dim) {
  return [dim](const Point& p) {
    if (p.dim() != dim) {
      throw InputError("expected a point of dimension " + std::to_string(dim) + ", got " +
                       std::to_string(p.dim()));
    }
  };
}

constexpr std::array<std::string_view, 4> kMetricNames = {"euclidean", "max", "squared",
                                                          "discrete"};

}  // namespace

std::string_view to_string(TriangleStatus status) {
  switch (status) {
    case TriangleStatus::kGlobal: return "GLOBAL";
    case TriangleStatus::kOrbitOnly: return "ORBIT_ONLY";
    case TriangleStatus::kNone: return "NONE";
    case TriangleStatus::kUnknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

std::string_view to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::kN1: return "N1";
    case Axiom::kN2: return "N2";
    case Axiom::kN3: return "N3";
  }
  return "?";
}

PointSpace euclidean(std::size_t dim) {
  return PointSpace(
      "euclidean", dim, TriangleStatus::kGlobal,
      [](const Point& u, const Point& v) {
        // Single coordinate handled separately so that d(x, y) is exactly |x - y|.
        if (u.dim() == 1) return std::abs(u[0] - v[0]);
        double sum = 0.0;
        for (std::size_t i = 0; i < u.dim(); ++i) sum += (u[i] - v[i]) * (u[i] - v[i]);
        return std::sqrt(sum);
      },
      point_shape(dim), true);
}

PointSpace max_metric(std::size_t dim) {
  return PointSpace(
      "max", dim, TriangleStatus::kGlobal,
      [](const Point& u, const Point& v) { return coordinate_gap(u, v); }, point_shape(dim),
      true);
}

PointSpace squared(std::size_t dim) {
  return PointSpace(
      "squared", dim, TriangleStatus::kNone,
      [](const Point& u, const Point& v) {
        double sum = 0.0;
        for (std::size_t i = 0; i < u.dim(); ++i) sum += (u[i] - v[i]) * (u[i] - v[i]);
        return sum;
      },
      point_shape(dim), true);
}

PointSpace discrete(std::size_t dim) {
  return PointSpace(
      "discrete", dim, TriangleStatus::kGlobal,
      [](const Point& u, const Point& v) { return u == v ? 0.0 : 1.0; }, point_shape(dim), true);
}

PointSpace make_metric(std::string_view name, std::size_t dim) {
  if (name == "euclidean") return euclidean(dim);
  if (name == "max") return max_metric(dim);
  if (name == "squared") return squared(dim);
  if (name == "discrete") return discrete(dim);
  throw InputError("unknown metric '" + std::string(name) + "'");
}

std::span<const std::string_view> metric_names() { return kMetricNames; }

PointSpace custom_metric(std::string name, std::size_t dim, TriangleStatus status,
                         PointSpace::Distance distance) {
  return PointSpace(std::move(name), dim, status, std::move(distance), point_shape(dim), false);
}

TableSpace sup_metric(const PointSpace& base, std::size_t domain_size) {
  if (domain_size == 0) throw InputError("sup metric needs a non-empty domain");
  const std::size_t dim = base.dimension();
  auto shape = [domain_size, dim](const FunctionTable& t) {
    if (t.size() != domain_size) {
      throw InputError("expected a table over " + std::to_string(domain_size) +
                       " domain points, got " + std::to_string(t.size()));
    }
    if (t.dim() != dim) {
      throw InputError("expected table entries of dimension " + std::to_string(dim) + ", got " +
                       std::to_string(t.dim()));
    }
  };
  auto distance = [base](const FunctionTable& g, const FunctionTable& h) {
    double worst = 0.0;
    for (std::size_t s = 0; s < g.size(); ++s) worst = std::max(worst, base(g[s], h[s]));
    return worst;
  };
  return TableSpace("sup(" + base.name() + ")", domain_size, base.triangle_status(),
                    std::move(distance), std::move(shape), base.exact_formula());
}

}  // namespace fixpoint
