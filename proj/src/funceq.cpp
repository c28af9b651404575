#include "fixpoint/funceq.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fixpoint {

std::string_view to_string(StabilityTheorem theorem) {
  switch (theorem) {
    case StabilityTheorem::kBanachSup: return "T4.2-BANACH-SUP";
    case StabilityTheorem::kBanachOrbit: return "C4.3-BANACH-ORBIT";
    case StabilityTheorem::kKannan: return "T4.4-KANNAN";
    case StabilityTheorem::kChatterjea: return "T4.5-CHATTERJEA";
    case StabilityTheorem::kCiric: return "T4.6-CIRIC";
    case StabilityTheorem::kBaker: return "T5-BAKER";
  }
  return "?";
}

StabilityTheorem parse_stability_theorem(std::string_view name) {
  for (auto t : {StabilityTheorem::kBanachSup, StabilityTheorem::kBanachOrbit,
                 StabilityTheorem::kKannan, StabilityTheorem::kChatterjea, StabilityTheorem::kCiric,
                 StabilityTheorem::kBaker}) {
    if (name == to_string(t)) return t;
  }
  throw InputError("unknown stability theorem '" + std::string(name) + "'");
}

ContractionKind contraction_kind(StabilityTheorem theorem) {
  switch (theorem) {
    case StabilityTheorem::kKannan: return ContractionKind::kKannan;
    case StabilityTheorem::kChatterjea: return ContractionKind::kChatterjea;
    case StabilityTheorem::kCiric: return ContractionKind::kCiric;
    case StabilityTheorem::kBanachSup:
    case StabilityTheorem::kBanachOrbit:
    case StabilityTheorem::kBaker: return ContractionKind::kBanach;
  }
  return ContractionKind::kBanach;
}

void FuncEqInstance::validate() const {
  if (domain_size == 0) throw InputError("functional equation needs a non-empty domain");
  if (psi.size() != domain_size) {
    throw InputError("psi has " + std::to_string(psi.size()) + " entries, expected " +
                     std::to_string(domain_size));
  }
  for (std::size_t s = 0; s < psi.size(); ++s) {
    if (psi[s] >= domain_size) {
      throw InputError("psi[" + std::to_string(s) + "] = " + std::to_string(psi[s]) +
                       " is outside the domain");
    }
  }
  if (!G) throw InputError("functional equation has no G");
}

namespace {

void require_entries(std::size_t n, std::size_t got, const char* what) {
  if (got != n) {
    throw InputError(std::string(what) + " has " + std::to_string(got) + " entries, expected " +
                     std::to_string(n));
  }
}

}  // namespace

FuncEqInstance affine_instance(PointSpace base, std::vector<std::size_t> psi,
                               std::vector<double> a, std::vector<Point> c) {
  const std::size_t n = psi.size();
  require_entries(n, a.size(), "a");
  require_entries(n, c.size(), "c");
  const std::size_t dim = base.dimension();
  for (const auto& ci : c) {
    if (ci.dim() != dim) throw InputError("affine offset dimension differs from the metric's");
  }
  auto G = [a = std::move(a), c = std::move(c)](std::size_t s, const Point& x) {
    std::vector<double> out(x.dim());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[s] * x[i] + c[s][i];
    return Point(std::move(out));
  };
  FuncEqInstance instance{n, std::move(psi), std::move(G), std::move(base), "affine"};
  instance.validate();
  return instance;
}

FuncEqInstance cosine_instance(PointSpace base, std::vector<std::size_t> psi,
                               std::vector<double> scale, std::vector<Point> c) {
  const std::size_t n = psi.size();
  require_entries(n, scale.size(), "scale");
  require_entries(n, c.size(), "c");
  const std::size_t dim = base.dimension();
  for (const auto& ci : c) {
    if (ci.dim() != dim) throw InputError("cosine offset dimension differs from the metric's");
  }
  auto G = [scale = std::move(scale), c = std::move(c)](std::size_t s, const Point& x) {
    std::vector<double> out(x.dim());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = scale[s] * std::cos(x[i]) + c[s][i];
    return Point(std::move(out));
  };
  FuncEqInstance instance{n, std::move(psi), std::move(G), std::move(base), "cosine"};
  instance.validate();
  return instance;
}

LiftedOperator::LiftedOperator(FuncEqInstance instance)
    : instance_(std::make_shared<const FuncEqInstance>(std::move(instance))),
      space_(sup_metric(instance_->base, instance_->domain_size)) {
  instance_->validate();
}

FunctionTable LiftedOperator::operator()(const FunctionTable& h) const {
  space_.check_shape(h);
  const auto& inst = *instance_;
  std::vector<Point> out;
  out.reserve(inst.domain_size);
  for (std::size_t s = 0; s < inst.domain_size; ++s) {
    Point value = inst.G(s, h[inst.psi[s]]);
    if (value.dim() != h.dim()) throw InputError("G changed the dimension of its argument");
    out.push_back(std::move(value));
  }
  return FunctionTable(std::move(out));
}

SelfMap<FunctionTable> LiftedOperator::as_map() const {
  return {"O[" + instance_->description + "]", instance_->domain_size,
          [op = *this](const FunctionTable& h) { return op(h); }};
}

FunctionTable apply_operator(const LiftedOperator& op, const FunctionTable& h) { return op(h); }

FunctionTable operator_power(const LiftedOperator& op, const FunctionTable& h, std::size_t k) {
  op.space().check_shape(h);
  FunctionTable out = h;
  for (std::size_t i = 0; i < k; ++i) out = op(out);
  return out;
}

double compute_delta(const FuncEqInstance& instance, const FunctionTable& g) {
  const LiftedOperator op(instance);
  return op.space()(g, op(g));
}

ConditionCheck<FunctionTable> check_sup_contraction(
    const FuncEqInstance& instance, ContractionKind kind,
    std::span<const ElementPair<FunctionTable>> tables, double lambda,
    const CiricCoefficients<FunctionTable>* coeffs) {
  if (tables.empty()) throw InputError("sup contraction check needs at least one table pair");
  const LiftedOperator op(instance);
  return verify_condition(op.space(), op.as_map(), kind, lambda, tables, coeffs);
}

namespace {

double stability_bound(StabilityTheorem theorem, double delta, double lambda) {
  switch (theorem) {
    case StabilityTheorem::kBanachOrbit:
    case StabilityTheorem::kBaker:
    case StabilityTheorem::kBanachSup: return bound_banach(delta, lambda);
    case StabilityTheorem::kKannan:
    case StabilityTheorem::kChatterjea: return bound_kannan_chatterjea(delta, lambda);
    case StabilityTheorem::kCiric: return bound_ciric(delta, lambda);
  }
  return bound_banach(delta, lambda);
}

}  // namespace

StabilityCertificate solve_stability(const FuncEqInstance& instance, const FunctionTable& g,
                                     StabilityTheorem theorem, double lambda,
                                     const IterationConfig& cfg,
                                     const StabilityOptions& options) {
  instance.validate();
  cfg.validate();
  const ContractionKind kind = contraction_kind(theorem);
  require_admissible_lambda(kind, lambda);

  const LiftedOperator op(instance);
  const TableSpace& space = op.space();
  const auto map = op.as_map();

  const double delta = space(g, op(g));
  if (options.declared_delta && *options.declared_delta < delta) {
    throw InputError("declared delta " + format_real(*options.declared_delta) +
                     " is smaller than the computed delta " + format_real(delta));
  }

  auto run = run_picard(space, map, g, cfg, kind, lambda);
  const auto& fp = run.certificate;

  StabilityCertificate cert{.theorem = theorem, .delta = delta, .lambda = lambda, .exact_solution = fp.fixed_point};
  cert.sup_distance = fp.observed_start_distance;
  cert.residual = fp.residual;
  cert.orbit_triangle_ok = fp.orbit_triangle_ok;
  cert.triangle_iterates_checked = fp.triangle_iterates_checked;
  cert.converged = fp.converged;
  cert.iterations_used = fp.iterations_used;
  cert.tol = cfg.tol;

  // Contraction evidence: every pair among the iterates that were checked for the triangle.
  if (kind != ContractionKind::kCiric || options.ciric != nullptr) {
    const std::size_t head = std::min(fp.iterations_used, kTriangleEvidenceIterates) + 1;
    std::vector<ElementPair<FunctionTable>> pairs;
    for (std::size_t i = 0; i < head; ++i) {
      for (std::size_t j = i + 1; j < head; ++j) pairs.emplace_back(run.iterates[i], run.iterates[j]);
    }
    if (!pairs.empty()) {
      const auto check =
          verify_condition<FunctionTable>(space, map, kind, lambda, pairs, options.ciric);
      cert.contraction_ok = check.holds;
      cert.contraction_pairs_checked = check.pairs_checked;
    }
  }

  if (theorem == StabilityTheorem::kBanachSup) {
    cert.reason = "T4.2 gives no explicit distance bound; certify under C4.3-BANACH-ORBIT";
  } else if (cert.orbit_triangle_ok != true) {
    cert.reason = "triangle inequality not verified on the orbit of g";
  } else {
    cert.theoretical_bound = stability_bound(theorem, delta, lambda);
    cert.bound_satisfied = cert.sup_distance <= *cert.theoretical_bound + cfg.tol;
  }
  if (!fp.converged) {
    const std::string stall = "no convergence within " + std::to_string(cfg.max_iters) + " iterations";
    cert.reason = cert.reason.empty() ? stall : stall + "; " + cert.reason;
  }
  return cert;
}

}  // namespace fixpoint
