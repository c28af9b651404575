#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "fixpoint/contraction.hpp"
#include "fixpoint/funceq.hpp"
#include "fixpoint/metric.hpp"
#include "fixpoint/picard.hpp"

namespace fixpoint {

enum class Verdict { kPass, kFail, kNotApplicable, kNonConverged };

std::string_view to_string(Verdict verdict);

/// Stable process exit codes.
enum ExitCode : int {
  kExitPass = 0,
  kExitFailure = 1,  ///< hypothesis, bound or domain failure
  kExitInput = 2,
  kExitInconsistent = 3,
};

int exit_code_for(Verdict verdict) noexcept;

/// The machine-readable report. Text output is rendered from to_json(), never separately.
struct Report {
  std::string command;
  nlohmann::json input = nullptr;
  nlohmann::json certificate = nlohmann::json::object();
  nlohmann::json hypotheses = nlohmann::json::object();
  Verdict verdict = Verdict::kFail;
  /// Set for error reports; the verdict decides the code otherwise.
  std::optional<int> exit_override;

  int exit_code() const noexcept;
  nlohmann::json to_json() const;
};

/// Report for a command that ended in an error before producing a certificate.
Report error_report(std::string command, nlohmann::json input, std::string_view category,
                    const std::string& message, int exit_code);

nlohmann::json to_json(const Point& p);
nlohmann::json to_json(const FunctionTable& t);
/// Non-finite values become null.
nlohmann::json real(double x);

nlohmann::json to_json(const FixedPointCertificate<Point>& cert);
nlohmann::json to_json(const StabilityCertificate& cert);
nlohmann::json to_json(const AxiomReport<Point>& report);
nlohmann::json to_json(const ContractionReport<Point>& report);
nlohmann::json to_json(const ConditionCheck<Point>& check);
nlohmann::json to_json(const TriangleCheck<Point>& check);

/// Canonical serialization: sorted keys, two-space indent, trailing newline.
std::string dump(const nlohmann::json& doc);

/// Human-readable summary derived from a report document.
std::string render_text(const nlohmann::json& report);

/// Writes `text` to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace fixpoint
