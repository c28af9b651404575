#include "fixpoint/contraction.hpp"

#include <string>

namespace fixpoint {

std::string_view to_string(ContractionKind kind) {
  switch (kind) {
    case ContractionKind::kBanach: return "BANACH";
    case ContractionKind::kKannan: return "KANNAN";
    case ContractionKind::kChatterjea: return "CHATTERJEA";
    case ContractionKind::kCiric: return "CIRIC";
  }
  return "?";
}

ContractionKind parse_contraction_kind(std::string_view name) {
  if (name == "BANACH") return ContractionKind::kBanach;
  if (name == "KANNAN") return ContractionKind::kKannan;
  if (name == "CHATTERJEA") return ContractionKind::kChatterjea;
  if (name == "CIRIC") return ContractionKind::kCiric;
  throw InputError("unknown contraction kind '" + std::string(name) + "'");
}

double lambda_ceiling(ContractionKind kind) noexcept {
  switch (kind) {
    case ContractionKind::kKannan:
    case ContractionKind::kChatterjea: return 0.5;
    case ContractionKind::kBanach:
    case ContractionKind::kCiric: return 1.0;
  }
  return 1.0;
}

void require_admissible_lambda(ContractionKind kind, double lambda) {
  const double ceiling = lambda_ceiling(kind);
  if (!(lambda >= 0.0 && lambda < ceiling)) {
    throw DomainError("lambda " + format_real(lambda) + " outside [0, " +
                      format_real(ceiling) + ") for " + std::string(to_string(kind)));
  }
}

double ciric_reduced_factor(const std::array<double, 5>& c) {
  for (double ci : c) {
    if (!(ci >= 0.0)) throw CoefficientError("Ciric coefficients must be non-negative");
  }
  const double half_kannan = (c[1] + c[2]) / 2.0;
  const double half_chatterjea = (c[3] + c[4]) / 2.0;
  const double denominator = 1.0 - half_kannan - half_chatterjea;
  if (!(denominator > 0.0)) {
    throw CoefficientError("Ciric reduced factor has a non-positive denominator");
  }
  return (c[0] + half_kannan + half_chatterjea) / denominator;
}

Box::Box(Point lo_corner, Point hi_corner) : lo(std::move(lo_corner)), hi(std::move(hi_corner)) {
  if (lo.dim() != hi.dim()) throw InputError("box corners differ in dimension");
  for (std::size_t i = 0; i < lo.dim(); ++i) {
    if (lo[i] > hi[i]) throw InputError("box lower corner exceeds upper corner");
  }
}

std::vector<Point> grid_points(const Box& box, std::size_t per_axis) {
  if (per_axis == 0) throw InputError("grid needs at least one value per axis");
  const std::size_t d = box.dim();
  std::vector<double> axis(per_axis);
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= per_axis;

  std::vector<Point> out;
  out.reserve(total);
  std::vector<std::size_t> index(d, 0);
  for (std::size_t n = 0; n < total; ++n) {
    std::vector<double> coords(d);
    for (std::size_t i = 0; i < d; ++i) {
      const std::size_t k = index[i];
      if (per_axis == 1) {
        coords[i] = box.lo[i];
      } else if (k + 1 == per_axis) {
        coords[i] = box.hi[i];
      } else {
        coords[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * static_cast<double>(k) /
                                    static_cast<double>(per_axis - 1);
      }
    }
    out.emplace_back(std::move(coords));
    for (std::size_t i = d; i-- > 0;) {
      if (++index[i] < per_axis) break;
      index[i] = 0;
    }
  }
  return out;
}

std::vector<Point> uniform_points(const Box& box, std::size_t count, SplitMix64& rng) {
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    std::vector<double> coords(box.dim());
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = rng.uniform(box.lo[i], box.hi[i]);
    out.emplace_back(std::move(coords));
  }
  return out;
}

std::vector<ElementPair<Point>> all_pairs(std::span<const Point> points) {
  std::vector<ElementPair<Point>> out;
  out.reserve(points.size() * (points.size() - (points.empty() ? 0 : 1)) / 2);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) out.emplace_back(points[i], points[j]);
  }
  return out;
}

std::vector<ElementPair<Point>> grid_pairs(const Box& box, std::size_t per_axis) {
  const auto points = grid_points(box, per_axis);
  return all_pairs(points);
}

std::vector<ElementPair<Point>> uniform_pairs(const Box& box, std::size_t count,
                                              std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<ElementPair<Point>> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    auto p = uniform_points(box, 2, rng);
    out.emplace_back(std::move(p[0]), std::move(p[1]));
  }
  return out;
}

}  // namespace fixpoint
