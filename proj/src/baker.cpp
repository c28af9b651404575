#include <algorithm>
#include <cmath>
#include <string>

#include "fixpoint/funceq.hpp"
#include "fixpoint/rng.hpp"

namespace fixpoint {

namespace {

constexpr std::size_t kSeriesTermCap = std::size_t{1} << 22;

}  // namespace

Norm::Norm(Kind kind, std::string name, std::vector<double> weights)
    : kind_(kind), name_(std::move(name)), weights_(std::move(weights)) {}

Norm Norm::euclidean() { return Norm(Kind::kEuclidean, "euclidean", {}); }

Norm Norm::max() { return Norm(Kind::kMax, "max", {}); }

Norm Norm::weighted_sum(std::vector<double> weights) {
  if (weights.empty()) throw InputError("weighted-sum norm needs weights");
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw InputError("norm weights must be positive");
  }
  return Norm(Kind::kWeightedSum, "weighted-sum", std::move(weights));
}

Norm Norm::make(std::string_view name, std::vector<double> weights) {
  if (name == "weighted-sum") return weighted_sum(std::move(weights));
  if (!weights.empty()) throw InputError("only the weighted-sum norm takes weights");
  if (name == "euclidean") return euclidean();
  if (name == "max") return max();
  throw InputError("unknown norm '" + std::string(name) + "'");
}

double Norm::operator()(const Point& v) const {
  switch (kind_) {
    case Kind::kEuclidean: {
      if (v.dim() == 1) return std::abs(v[0]);
      double sum = 0.0;
      for (double x : v.coords()) sum += x * x;
      return std::sqrt(sum);
    }
    case Kind::kMax: {
      double m = 0.0;
      for (double x : v.coords()) m = std::max(m, std::abs(x));
      return m;
    }
    case Kind::kWeightedSum: {
      if (v.dim() != weights_.size()) throw InputError("norm weights differ in dimension");
      double sum = 0.0;
      for (std::size_t i = 0; i < v.dim(); ++i) sum += weights_[i] * std::abs(v[i]);
      return sum;
    }
  }
  return 0.0;
}

PointSpace Norm::induced_metric(std::size_t dim) const {
  switch (kind_) {
    case Kind::kEuclidean: return fixpoint::euclidean(dim);
    case Kind::kMax: return max_metric(dim);
    case Kind::kWeightedSum: break;
  }
  if (weights_.size() != dim) throw InputError("norm weights differ in dimension");
  auto shape = [dim](const Point& p) {
    if (p.dim() != dim) throw InputError("expected a point of dimension " + std::to_string(dim));
  };
  auto distance = [w = weights_](const Point& u, const Point& v) {
    double sum = 0.0;
    for (std::size_t i = 0; i < u.dim(); ++i) sum += w[i] * std::abs(u[i] - v[i]);
    return sum;
  };
  return PointSpace("weighted-sum", dim, TriangleStatus::kGlobal, std::move(distance),
                    std::move(shape), true);
}

void BakerInstance::validate() const {
  if (domain_size == 0) throw InputError("Baker instance needs a non-empty domain");
  if (psi.size() != domain_size || lambda_fn.size() != domain_size || B.size() != domain_size) {
    throw InputError("psi, lambda and B must each have " + std::to_string(domain_size) +
                     " entries");
  }
  for (std::size_t s = 0; s < domain_size; ++s) {
    if (psi[s] >= domain_size) throw InputError("psi maps outside the domain");
    if (!(lambda_fn[s] >= 0.0) || !std::isfinite(lambda_fn[s])) {
      throw InputError("lambda(s) must be finite and non-negative");
    }
  }
  if (!(lambda_max() < 1.0)) {
    throw DomainError("max lambda(s) = " + format_real(lambda_max()) + " must be below 1");
  }
  // Weighted norms must match the table dimension.
  (void)norm(B[0]);
}

double BakerInstance::lambda_max() const {
  return *std::max_element(lambda_fn.begin(), lambda_fn.end());
}

FuncEqInstance to_funceq(const BakerInstance& instance) {
  instance.validate();
  auto G = [lam = instance.lambda_fn, B = instance.B](std::size_t s, const Point& x) {
    return lam[s] * x + B[s];
  };
  FuncEqInstance out{instance.domain_size, instance.psi, std::move(G),
                     instance.norm.induced_metric(instance.B.dim()), "baker"};
  out.validate();
  return out;
}

FunctionTable baker_series_solution(const BakerInstance& instance, std::size_t k_max,
                                    double tail_tol) {
  instance.validate();
  if (k_max < 1) throw InputError("k_max must be at least 1");
  if (!(tail_tol > 0.0)) throw InputError("tail tolerance must be positive");

  const double lam = instance.lambda_max();
  double b_max = 0.0;
  for (const auto& b : instance.B) b_max = std::max(b_max, instance.norm(b));
  auto tail = [&](std::size_t terms) {
    return std::pow(lam, static_cast<double>(terms)) * b_max / (1.0 - lam);
  };

  std::size_t terms = k_max;
  while (tail(terms) > tail_tol) {
    if (terms >= kSeriesTermCap) {
      throw TruncationError("series tail " + std::to_string(tail(terms)) +
                            " still above tolerance after " + std::to_string(terms) + " terms");
    }
    terms *= 2;
  }

  const std::size_t dim = instance.B.dim();
  std::vector<Point> out;
  out.reserve(instance.domain_size);
  for (std::size_t s = 0; s < instance.domain_size; ++s) {
    std::vector<double> sum(dim, 0.0);
    double weight = 1.0;
    std::size_t at = s;
    for (std::size_t k = 0; k < terms && weight != 0.0; ++k) {
      const Point& b = instance.B[at];
      for (std::size_t i = 0; i < dim; ++i) sum[i] += weight * b[i];
      weight *= instance.lambda_fn[at];
      at = instance.psi[at];
    }
    out.emplace_back(std::move(sum));
  }
  return FunctionTable(std::move(out));
}

StabilityCertificate solve_baker(const BakerInstance& instance, const FunctionTable& f0,
                                 const IterationConfig& cfg) {
  cfg.validate();
  const FuncEqInstance funceq = to_funceq(instance);
  const double lambda = instance.lambda_max();

  // A residual r bounds the distance to the true solution by r / (1 - lambda); tighten the
  // stopping tolerance so the iterate lands within cfg.tol of it.
  IterationConfig inner = cfg;
  inner.tol = cfg.tol * (1.0 - lambda) / 2.0;
  auto cert = solve_stability(funceq, f0, StabilityTheorem::kBaker, lambda, inner);
  cert.tol = cfg.tol;
  if (!cert.converged) return cert;

  const auto series = baker_series_solution(instance, 64, cfg.tol * 1e-3);
  const double gap = sup_metric(funceq.base, instance.domain_size)(series, cert.exact_solution);
  cert.oracle_gap = gap;
  if (gap > cfg.tol) {
    throw ConsistencyError("iterative Baker solution differs from the series oracle by " +
                           format_real(gap));
  }
  return cert;
}

FunctionTable perturb_solution(const FunctionTable& exact, double magnitude, std::uint64_t seed) {
  if (!(magnitude >= 0.0) || !std::isfinite(magnitude)) {
    throw InputError("perturbation magnitude must be finite and non-negative");
  }
  SplitMix64 rng(seed);
  std::vector<Point> out;
  out.reserve(exact.size());
  for (const auto& p : exact) {
    std::vector<double> coords(p.coords().begin(), p.coords().end());
    for (double& x : coords) x += rng.uniform(-magnitude, magnitude);
    out.emplace_back(std::move(coords));
  }
  return FunctionTable(std::move(out));
}

}  // namespace fixpoint
