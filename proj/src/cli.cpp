#include "fixpoint/cli.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <CLI11.hpp>

#include "fixpoint/errors.hpp"
#include "fixpoint/repro.hpp"
#include "fixpoint/rng.hpp"

namespace fixpoint {

using nlohmann::json;

namespace {

void require_kind(const InstanceFile& file, std::initializer_list<InstanceKind> kinds,
                  const char* command) {
  if (std::find(kinds.begin(), kinds.end(), file.kind) != kinds.end()) return;
  throw InputError(std::string(command) + " does not accept " + std::string(to_string(file.kind)) +
                   " files");
}

double require_lambda(const InstanceFile& file) {
  if (!file.lambda) throw InputError("field /lambda: missing required field");
  return *file.lambda;
}

const std::string& require_theorem(const InstanceFile& file) {
  if (!file.theorem) throw InputError("field /theorem: missing required field");
  return *file.theorem;
}

Report base_report(const char* command, const InstanceFile& file) {
  Report r;
  r.command = command;
  r.input = file.source;
  return r;
}

json optional_bool(const std::optional<bool>& v) { return v ? json(*v) : json(nullptr); }

json optional_json_real(const std::optional<double>& v) { return v ? real(*v) : json(nullptr); }

std::size_t grid_per_axis(std::size_t dim) {
  const double per = std::floor(std::pow(41.0, 1.0 / static_cast<double>(dim)) + 1e-9);
  return std::max<std::size_t>(2, static_cast<std::size_t>(per));
}

}  // namespace

void apply_options(InstanceFile& file, const CommandOptions& options) {
  if (options.seed) file.seed = *options.seed;
  if (options.tol) {
    file.iteration.tol = *options.tol;
    file.iteration.validate();
  }
}

std::vector<ElementPair<Point>> sample_pairs(const InstanceFile& file) {
  const Box box = file.domain();
  auto pairs = grid_pairs(box, grid_per_axis(file.dimension));
  auto random = uniform_pairs(box, kUniformPairCount, file.seed);
  pairs.insert(pairs.end(), std::make_move_iterator(random.begin()),
               std::make_move_iterator(random.end()));
  return pairs;
}

Report cmd_check_metric(const InstanceFile& file) {
  require_kind(file, {InstanceKind::kMetric, InstanceKind::kMap}, "check-metric");
  const auto space = make_metric(file.metric, file.dimension);
  SplitMix64 rng(file.seed);
  const auto sample = uniform_points(file.domain(), kMetricSampleSize, rng);
  const auto axioms = check_axioms<Point>(space, sample, file.witnesses);
  const auto triangle = check_triangle_on_set<Point>(space, sample);

  Report r = base_report("check-metric", file);
  r.certificate = json{{"metric", space.name()},
                       {"dimension", space.dimension()},
                       {"triangle_status", std::string(to_string(space.triangle_status()))},
                       {"sample_size", sample.size()},
                       {"witnesses", file.witnesses.size()},
                       {"axioms", to_json(axioms)}};
  r.hypotheses = json{{"triangle_on_sample", to_json(triangle)}};
  r.verdict = axioms.all_pass() ? Verdict::kPass : Verdict::kFail;
  return r;
}

Report cmd_classify(const InstanceFile& file) {
  require_kind(file, {InstanceKind::kMap}, "classify");
  const auto space = make_metric(file.metric, file.dimension);
  const auto pairs = sample_pairs(file);
  json estimates = json::array();
  bool any = false;
  for (auto kind : {ContractionKind::kBanach, ContractionKind::kKannan, ContractionKind::kChatterjea}) {
    const auto est = estimate_lambda<Point>(space, *file.map, kind, pairs);
    any = any || est.admissible;
    estimates.push_back(to_json(est));
  }
  Report r = base_report("classify", file);
  r.certificate = json{{"map", file.map->name}, {"metric", space.name()}, {"estimates", estimates}};
  r.hypotheses = json{{"pairs", pairs.size()}, {"seed", file.seed}};
  r.verdict = any ? Verdict::kPass : Verdict::kNotApplicable;
  return r;
}

Report cmd_solve(const InstanceFile& file) {
  require_kind(file, {InstanceKind::kMap}, "solve");
  const ContractionKind kind = parse_contraction_kind(require_theorem(file));
  const double lambda = require_lambda(file);
  require_admissible_lambda(kind, lambda);
  const auto space = make_metric(file.metric, file.dimension);
  const auto& map = *file.map;

  std::optional<CiricCoefficients<Point>> ciric;
  if (kind == ContractionKind::kCiric) {
    if (!file.coefficients) throw InputError("field /coefficients: required for CIRIC");
    ciric = CiricCoefficients<Point>::constant(*file.coefficients);
  }
  const auto pairs = sample_pairs(file);
  const auto condition =
      verify_condition<Point>(space, map, kind, lambda, pairs, ciric ? &*ciric : nullptr);

  Report r = base_report("solve", file);
  json contraction = to_json(condition);
  contraction["kind"] = std::string(to_string(kind));
  contraction["lambda"] = lambda;
  r.hypotheses["contraction"] = contraction;
  if (!condition.holds) {
    r.certificate = nullptr;
    r.verdict = Verdict::kNotApplicable;
    return r;
  }

  const Point start = file.start_point.value_or(zeros(file.dimension));
  const auto cert = solve_fixed_point(space, map, start, file.iteration, kind, lambda);
  r.certificate = to_json(cert);
  r.hypotheses["orbit_triangle"] = optional_bool(cert.orbit_triangle_ok);

  bool brute_ok = true;
  if (file.dimension == 1) {
    const Box box = file.domain();
    const auto grid = grid_points(box, kBruteForceGrid);
    const auto bf = brute_force_fixed_point<Point>(space, map, grid);
    const double spacing = (box.hi[0] - box.lo[0]) / static_cast<double>(kBruteForceGrid - 1);
    const double gap = std::abs(cert.fixed_point[0] - bf.point[0]);
    const double allowed = spacing + file.iteration.tol;
    brute_ok = gap <= allowed;
    r.hypotheses["brute_force"] = json{{"point", to_json(bf.point)},   {"residual", real(bf.residual)},
                                       {"gap", real(gap)},            {"allowed", real(allowed)},
                                       {"grid_points", kBruteForceGrid}, {"agrees", brute_ok}};
  }

  if (!cert.converged) {
    r.verdict = Verdict::kNonConverged;
  } else if (cert.orbit_triangle_ok == false) {
    r.verdict = Verdict::kNotApplicable;
  } else {
    r.verdict = cert.bound_satisfied && brute_ok ? Verdict::kPass : Verdict::kFail;
  }
  return r;
}

namespace {

FunctionTable random_table(const Box& box, std::size_t n, SplitMix64& rng) {
  return FunctionTable(uniform_points(box, n, rng));
}

Report certify_funceq(const InstanceFile& file) {
  const auto theorem = parse_stability_theorem(require_theorem(file));
  const double lambda = require_lambda(file);
  const ContractionKind kind = contraction_kind(theorem);
  require_admissible_lambda(kind, lambda);
  const auto& inst = *file.funceq;

  std::optional<CiricCoefficients<FunctionTable>> ciric;
  if (kind == ContractionKind::kCiric) {
    if (!file.coefficients) throw InputError("field /coefficients: required for T4.6-CIRIC");
    ciric = CiricCoefficients<FunctionTable>::constant(*file.coefficients);
  }
  const CiricCoefficients<FunctionTable>* coeffs = ciric ? &*ciric : nullptr;

  SplitMix64 rng(file.seed);
  const Box box = file.domain();
  std::vector<ElementPair<FunctionTable>> pairs;
  for (std::size_t i = 0; i < kTablePairCount; ++i) {
    auto u = random_table(box, inst.domain_size, rng);
    auto v = random_table(box, inst.domain_size, rng);
    pairs.emplace_back(std::move(u), std::move(v));
  }
  const auto condition = check_sup_contraction(inst, kind, pairs, lambda, coeffs);

  Report r = base_report("certify", file);
  r.hypotheses["contraction"] = json{{"kind", std::string(to_string(kind))},
                                     {"lambda", lambda},
                                     {"holds", condition.holds},
                                     {"excess", real(condition.excess)},
                                     {"pairs_checked", condition.pairs_checked},
                                     {"witness", condition.witness
                                                     ? json::array({to_json(condition.witness->first),
                                                                    to_json(condition.witness->second)})
                                                     : json(nullptr)}};

  StabilityOptions options;
  options.ciric = coeffs;
  options.declared_delta = file.delta;
  const auto cert = solve_stability(inst, *file.start_table, theorem, lambda, file.iteration, options);
  r.certificate = to_json(cert);
  r.hypotheses["orbit_triangle"] = optional_bool(cert.orbit_triangle_ok);
  r.hypotheses["orbit_contraction"] = optional_bool(cert.contraction_ok);

  if (!cert.converged) {
    r.verdict = Verdict::kNonConverged;
  } else if (!condition.holds || cert.contraction_ok == false || !cert.theoretical_bound) {
    r.verdict = Verdict::kNotApplicable;
  } else {
    r.verdict = cert.bound_satisfied == true ? Verdict::kPass : Verdict::kFail;
  }
  return r;
}

Report certify_baker(const InstanceFile& file) {
  const auto& inst = *file.baker;
  inst.validate();
  const double lambda_max = inst.lambda_max();
  if (file.lambda && *file.lambda < lambda_max) {
    throw DomainError("declared lambda " + format_real(*file.lambda) +
                      " is below max lambda(s) = " + format_real(lambda_max));
  }
  const auto cert = solve_baker(inst, *file.start_table, file.iteration);

  Report r = base_report("certify", file);
  r.certificate = to_json(cert);
  r.hypotheses["lambda_max"] = lambda_max;
  r.hypotheses["norm"] = inst.norm.name();
  r.hypotheses["orbit_triangle"] = optional_bool(cert.orbit_triangle_ok);
  r.hypotheses["oracle_agreement"] = json{{"gap", optional_json_real(cert.oracle_gap)},
                                          {"tol", file.iteration.tol}};
  if (!cert.converged) {
    r.verdict = Verdict::kNonConverged;
  } else if (!cert.theoretical_bound) {
    r.verdict = Verdict::kNotApplicable;
  } else {
    r.verdict = cert.bound_satisfied == true ? Verdict::kPass : Verdict::kFail;
  }
  return r;
}

}  // namespace

Report cmd_certify(const InstanceFile& file) {
  require_kind(file, {InstanceKind::kFuncEq, InstanceKind::kBaker}, "certify");
  return file.kind == InstanceKind::kBaker ? certify_baker(file) : certify_funceq(file);
}

Report cmd_repro(const CommandOptions& options) {
  ReproOptions repro;
  repro.seed = options.seed.value_or(0);
  const auto rows = run_repro(repro);
  Report r;
  r.command = "repro";
  r.input = json{{"seed", repro.seed}};
  r.certificate = json{{"rows", to_json(rows)}};
  r.verdict = all_pass(rows) ? Verdict::kPass : Verdict::kFail;
  return r;
}

namespace {

struct ErrorInfo {
  const char* category;
  int code;
};

ErrorInfo classify_error(const std::exception& e) {
  if (dynamic_cast<const InputError*>(&e) || dynamic_cast<const UnsupportedKindError*>(&e)) {
    return {"input", kExitInput};
  }
  if (dynamic_cast<const ConsistencyError*>(&e)) return {"inconsistency", kExitInconsistent};
  if (dynamic_cast<const DomainError*>(&e)) return {"domain", kExitFailure};
  if (dynamic_cast<const DivergenceError*>(&e)) return {"divergence", kExitFailure};
  if (dynamic_cast<const CoefficientError*>(&e)) return {"coefficients", kExitFailure};
  if (dynamic_cast<const TruncationError*>(&e)) return {"truncation", kExitFailure};
  return {"internal", kExitInconsistent};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fixed-point and Hyers-Ulam stability certificates", "fixpoint"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_path;
  std::uint64_t seed = 0;
  double tol = 0.0;
  auto* seed_opt = app.add_option("--seed", seed, "Seed for every sampled pair and point");
  auto* tol_opt = app.add_option("--tol", tol, "Override the iteration tolerance");
  app.add_option("--out", out_path, "Write the JSON report here");

  std::string file;
  const std::pair<const char*, const char*> commands[] = {
      {"check-metric", "Check the metric axioms on a seeded sample"},
      {"classify", "Estimate Banach, Kannan and Chatterjea constants"},
      {"solve", "Verify the contraction and solve for the fixed point"},
      {"certify", "Certify stability of a functional equation"},
  };
  for (const auto& [name, help] : commands) {
    app.add_subcommand(name, help)->add_option("file", file, "Instance file")->required();
  }
  app.add_subcommand("repro", "Run the reproduction suite");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitInput;
  }

  CommandOptions options;
  if (seed_opt->count() > 0) options.seed = seed;
  if (tol_opt->count() > 0) options.tol = tol;
  const std::string command = app.get_subcommands().front()->get_name();

  Report report;
  json input = nullptr;
  try {
    if (command == "repro") {
      report = cmd_repro(options);
    } else {
      InstanceFile instance = load_instance(file);
      input = instance.source;
      apply_options(instance, options);
      if (command == "check-metric") {
        report = cmd_check_metric(instance);
      } else if (command == "classify") {
        report = cmd_classify(instance);
      } else if (command == "solve") {
        report = cmd_solve(instance);
      } else {
        report = cmd_certify(instance);
      }
    }
  } catch (const std::exception& e) {
    const auto info = classify_error(e);
    report = error_report(command, input, info.category, e.what(), info.code);
    err << "fixpoint " << command << ": " << e.what() << "\n";
  }

  const json doc = report.to_json();
  out << render_text(doc);
  if (!out_path.empty()) {
    try {
      write_atomic(out_path, dump(doc));
    } catch (const Error& e) {
      err << "fixpoint: " << e.what() << "\n";
      return kExitInput;
    }
  }
  return report.exit_code();
}

}  // namespace fixpoint
