#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fixpoint/contraction.hpp"
#include "fixpoint/metric.hpp"
#include "fixpoint/picard.hpp"
#include "fixpoint/point.hpp"

namespace fixpoint {

/// Stability results that a certificate can be issued under.
enum class StabilityTheorem {
  kBanachSup,    ///< "T4.2-BANACH-SUP": existence only, no distance bound
  kBanachOrbit,  ///< "C4.3-BANACH-ORBIT": delta / (1 - lambda)
  kKannan,       ///< "T4.4-KANNAN": (1 + lambda) delta / (1 - 2 lambda) with orbit triangle
  kChatterjea,   ///< "T4.5-CHATTERJEA": (1 + lambda) delta / (1 - 2 lambda)
  kCiric,        ///< "T4.6-CIRIC": (2 + lambda) delta / (2 (1 - lambda))
  kBaker,        ///< "T5-BAKER": delta / (1 - lambda) for the linear equation
};

std::string_view to_string(StabilityTheorem theorem);
StabilityTheorem parse_stability_theorem(std::string_view name);
/// The contraction condition the theorem places on the lifted operator.
ContractionKind contraction_kind(StabilityTheorem theorem);

/// g(s) = G(s, g(psi(s))) on S = {0, ..., n-1}.
struct FuncEqInstance {
  std::size_t domain_size = 0;
  std::vector<std::size_t> psi;
  std::function<Point(std::size_t, const Point&)> G;
  PointSpace base;
  std::string description;

  void validate() const;
};

/// G(s, x) = a[s] * x + c[s]
FuncEqInstance affine_instance(PointSpace base, std::vector<std::size_t> psi,
                               std::vector<double> a, std::vector<Point> c);
/// G(s, x) = scale[s] * cos(x) + c[s], coordinatewise. Lipschitz constant max |scale[s]|.
FuncEqInstance cosine_instance(PointSpace base, std::vector<std::size_t> psi,
                               std::vector<double> scale, std::vector<Point> c);

/// The operator O(h)(s) = G(s, h(psi(s))) on tables over S.
class LiftedOperator {
 public:
  explicit LiftedOperator(FuncEqInstance instance);

  FunctionTable operator()(const FunctionTable& h) const;
  const FuncEqInstance& instance() const noexcept { return *instance_; }
  /// The sup metric over S built on the instance's base space.
  const TableSpace& space() const noexcept { return space_; }
  SelfMap<FunctionTable> as_map() const;

 private:
  std::shared_ptr<const FuncEqInstance> instance_;
  TableSpace space_;
};

FunctionTable apply_operator(const LiftedOperator& op, const FunctionTable& h);
/// O^k(h); k = 0 returns h.
FunctionTable operator_power(const LiftedOperator& op, const FunctionTable& h, std::size_t k);

/// max_s d(g(s), G(s, g(psi(s)))): the least delta for which g is a delta-approximate solution.
double compute_delta(const FuncEqInstance& instance, const FunctionTable& g);

/// Checks the lifted contraction inequality for O in the sup-metric space on each pair.
ConditionCheck<FunctionTable> check_sup_contraction(
    const FuncEqInstance& instance, ContractionKind kind,
    std::span<const ElementPair<FunctionTable>> tables, double lambda,
    const CiricCoefficients<FunctionTable>* coeffs = nullptr);

struct StabilityCertificate {
  StabilityTheorem theorem = StabilityTheorem::kBanachOrbit;
  double delta = 0.0;
  double lambda = 0.0;
  FunctionTable exact_solution;
  /// rho'(g, h)
  double sup_distance = 0.0;
  /// Empty when the theorem gives no bound or a side condition failed (see `reason`).
  std::optional<double> theoretical_bound{};
  std::optional<bool> bound_satisfied{};
  /// rho'(h, O(h))
  double residual = 0.0;
  std::optional<bool> orbit_triangle_ok{};
  std::size_t triangle_iterates_checked = 0;
  /// Lifted contraction condition on pairs of orbit iterates; empty when not checkable.
  std::optional<bool> contraction_ok{};
  std::size_t contraction_pairs_checked = 0;
  bool converged = false;
  std::size_t iterations_used = 0;
  double tol = 0.0;
  std::string reason{};
  /// Baker only: rho' distance between the iterative solution and the series oracle.
  std::optional<double> oracle_gap{};
};

struct StabilityOptions {
  /// Required to check the T4.6 condition; without it contraction_ok stays empty.
  const CiricCoefficients<FunctionTable>* ciric = nullptr;
  /// A caller-stated delta. Rejected when smaller than the computed one.
  std::optional<double> declared_delta{};
};

/// Solves g's equation from the approximate solution g and certifies rho'(g, h) against the
/// theorem's bound. Bounds that need the orbit triangle inequality are withheld when it fails.
StabilityCertificate solve_stability(const FuncEqInstance& instance, const FunctionTable& g,
                                     StabilityTheorem theorem, double lambda,
                                     const IterationConfig& cfg,
                                     const StabilityOptions& options = {});

// ---------------------------------------------------------------------------------------------
// Linear equation f(s) = lambda(s) f(psi(s)) + B(s)

/// A norm p on R^d inducing the metric d(v1, v2) = p(v1 - v2).
class Norm {
 public:
  static Norm euclidean();
  static Norm max();
  static Norm weighted_sum(std::vector<double> weights);
  /// "euclidean", "max" or "weighted-sum" (weights required for the last).
  static Norm make(std::string_view name, std::vector<double> weights = {});

  double operator()(const Point& v) const;
  const std::string& name() const noexcept { return name_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  PointSpace induced_metric(std::size_t dim) const;

 private:
  enum class Kind { kEuclidean, kMax, kWeightedSum };
  Norm(Kind kind, std::string name, std::vector<double> weights);

  Kind kind_;
  std::string name_;
  std::vector<double> weights_;
};

struct BakerInstance {
  std::size_t domain_size = 0;
  std::vector<std::size_t> psi;
  /// lambda(s) >= 0 with max_s lambda(s) < 1.
  std::vector<double> lambda_fn;
  FunctionTable B;
  Norm norm;

  void validate() const;
  double lambda_max() const;
};

/// G(s, x) = lambda(s) x + B(s) over the norm's induced metric.
FuncEqInstance to_funceq(const BakerInstance& instance);

/// Unrolled solution sum_k (prod_{i<k} lambda(psi^i s)) B(psi^k s), truncated once the tail
/// estimate lambda_max^K max_s p(B(s)) / (1 - lambda_max) is within tail_tol. K starts at
/// k_max and doubles as needed; throws TruncationError past the hard cap.
FunctionTable baker_series_solution(const BakerInstance& instance, std::size_t k_max,
                                    double tail_tol);

/// Iterative solution certified under T5-BAKER and cross-checked against the series oracle.
/// Throws ConsistencyError when the two disagree by more than cfg.tol.
StabilityCertificate solve_baker(const BakerInstance& instance, const FunctionTable& f0,
                                 const IterationConfig& cfg);

/// Displaces every coordinate by a seeded uniform amount in [-magnitude, magnitude].
FunctionTable perturb_solution(const FunctionTable& exact, double magnitude, std::uint64_t seed);

}  // namespace fixpoint
