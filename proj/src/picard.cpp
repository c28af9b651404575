#include "fixpoint/picard.hpp"

#include <cmath>
#include <string>

namespace fixpoint {

namespace {

void require_delta(double delta) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw DomainError("delta must be finite and non-negative, got " + format_real(delta));
  }
}

}  // namespace

void IterationConfig::validate() const {
  if (max_iters == 0) throw InputError("max_iters must be positive");
  if (!(tol > 0.0) || !std::isfinite(tol)) throw InputError("tol must be positive and finite");
  if (window == 0) throw InputError("window must be at least 1");
}

double bound_banach(double delta, double lambda) {
  require_delta(delta);
  require_admissible_lambda(ContractionKind::kBanach, lambda);
  return delta / (1.0 - lambda);
}

double bound_kannan_chatterjea(double delta, double lambda) {
  require_delta(delta);
  require_admissible_lambda(ContractionKind::kKannan, lambda);
  return (1.0 + lambda) * delta / (1.0 - 2.0 * lambda);
}

double bound_ciric(double delta, double lambda) {
  require_delta(delta);
  require_admissible_lambda(ContractionKind::kCiric, lambda);
  return (2.0 + lambda) * delta / (2.0 * (1.0 - lambda));
}

double theoretical_bound(ContractionKind kind, double delta, double lambda) {
  switch (kind) {
    case ContractionKind::kBanach: return bound_banach(delta, lambda);
    case ContractionKind::kKannan:
    case ContractionKind::kChatterjea: return bound_kannan_chatterjea(delta, lambda);
    case ContractionKind::kCiric: return bound_ciric(delta, lambda);
  }
  return bound_banach(delta, lambda);
}

double kannan_step_bound(std::size_t m, double lambda, double d1) {
  if (m < 1) throw InputError("step index m must be at least 1");
  require_delta(d1);
  require_admissible_lambda(ContractionKind::kKannan, lambda);
  return std::pow(lambda / (1.0 - lambda), static_cast<double>(m - 1)) * d1;
}

}  // namespace fixpoint
