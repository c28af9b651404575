#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fixpoint/picard.hpp"

namespace fixpoint {

/// One line of the reproduction table. `margin` is bound - observed for ceilings and
/// tolerance - |error| for equalities; a row passes when its check holds.
struct ReproRow {
  int criterion = 0;
  std::string label;
  double bound = 0.0;
  double observed = 0.0;
  double margin = 0.0;
  bool pass = false;
  std::string detail;
};

struct ReproOptions {
  /// The delta / (1 - lambda) formula under test. Replaceable for mutation checks.
  std::function<double(double, double)> banach_bound = bound_banach;
  std::uint64_t seed = 0;
};

/// Runs criteria 1 through 8 once.
std::vector<ReproRow> run_bound_checks(const ReproOptions& options);

/// Runs every criterion; the determinism row reruns 1 through 8 and compares serializations.
std::vector<ReproRow> run_repro(const ReproOptions& options = {});

nlohmann::json to_json(const ReproRow& row);
nlohmann::json to_json(const std::vector<ReproRow>& rows);
bool all_pass(const std::vector<ReproRow>& rows);

}  // namespace fixpoint
