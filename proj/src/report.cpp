#include "fixpoint/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "fixpoint/errors.hpp"

namespace fixpoint {

using nlohmann::json;

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kPass: return "PASS";
    case Verdict::kFail: return "FAIL";
    case Verdict::kNotApplicable: return "NOT_APPLICABLE";
    case Verdict::kNonConverged: return "NON_CONVERGED";
  }
  return "?";
}

int exit_code_for(Verdict verdict) noexcept {
  return verdict == Verdict::kPass ? kExitPass : kExitFailure;
}

int Report::exit_code() const noexcept { return exit_override.value_or(exit_code_for(verdict)); }

json Report::to_json() const {
  return json{{"command", command},
              {"input", input},
              {"certificate", certificate},
              {"hypotheses", hypotheses},
              {"verdict", std::string(to_string(verdict))},
              {"exit_code", exit_code()}};
}

Report error_report(std::string command, json input, std::string_view category,
                    const std::string& message, int exit_code) {
  Report r;
  r.command = std::move(command);
  r.input = std::move(input);
  r.certificate = nullptr;
  r.hypotheses = json{{"error", {{"category", category}, {"message", message}}}};
  r.verdict = Verdict::kFail;
  r.exit_override = exit_code;
  return r;
}

json real(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

json to_json(const Point& p) {
  json out = json::array();
  for (double x : p.coords()) out.push_back(real(x));
  return out;
}

json to_json(const FunctionTable& t) {
  json out = json::array();
  for (const auto& p : t) out.push_back(to_json(p));
  return out;
}

namespace {

template <class T>
json optional_json(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_same_v<T, double>) {
    return real(*v);
  } else {
    return *v;
  }
}

}  // namespace

json to_json(const FixedPointCertificate<Point>& cert) {
  return json{{"fixed_point", to_json(cert.fixed_point)},
              {"iterations_used", cert.iterations_used},
              {"residual", real(cert.residual)},
              {"theorem", std::string(to_string(cert.theorem))},
              {"delta", real(cert.delta)},
              {"lambda", real(cert.lambda)},
              {"theoretical_bound", real(cert.theoretical_bound)},
              {"observed_start_distance", real(cert.observed_start_distance)},
              {"bound_satisfied", cert.bound_satisfied},
              {"orbit_triangle_ok", optional_json(cert.orbit_triangle_ok)},
              {"triangle_iterates_checked", cert.triangle_iterates_checked},
              {"converged", cert.converged},
              {"tol", real(cert.tol)},
              {"orbital_continuity_assumed", cert.orbital_continuity_assumed}};
}

json to_json(const StabilityCertificate& cert) {
  return json{{"theorem", std::string(to_string(cert.theorem))},
              {"delta", real(cert.delta)},
              {"lambda", real(cert.lambda)},
              {"exact_solution", to_json(cert.exact_solution)},
              {"sup_distance", real(cert.sup_distance)},
              {"theoretical_bound", optional_json(cert.theoretical_bound)},
              {"bound_satisfied", optional_json(cert.bound_satisfied)},
              {"residual", real(cert.residual)},
              {"orbit_triangle_ok", optional_json(cert.orbit_triangle_ok)},
              {"triangle_iterates_checked", cert.triangle_iterates_checked},
              {"contraction_ok", optional_json(cert.contraction_ok)},
              {"contraction_pairs_checked", cert.contraction_pairs_checked},
              {"converged", cert.converged},
              {"iterations_used", cert.iterations_used},
              {"tol", real(cert.tol)},
              {"reason", cert.reason},
              {"oracle_gap", optional_json(cert.oracle_gap)}};
}

json to_json(const AxiomReport<Point>& report) {
  json violations = json::array();
  for (const auto& v : report.violations) {
    json witness = json::array();
    for (const auto& p : v.witness) witness.push_back(to_json(p));
    json values = json::array();
    for (double x : v.values) values.push_back(real(x));
    violations.push_back(
        {{"axiom", std::string(to_string(v.axiom))}, {"witness", witness}, {"values", values}});
  }
  return json{{"N1", report.n1_pass},
              {"N2", report.n2_pass},
              {"N3", report.n3_pass},
              {"all_pass", report.all_pass()},
              {"violations", violations}};
}

json to_json(const ContractionReport<Point>& report) {
  json worst = nullptr;
  if (report.worst_pair) worst = json::array({to_json(report.worst_pair->first), to_json(report.worst_pair->second)});
  return json{{"kind", std::string(to_string(report.kind))},
              {"lambda_estimate", real(report.lambda_estimate)},
              {"unbounded", report.unbounded},
              {"admissible", report.admissible},
              {"informative", report.informative},
              {"ceiling", lambda_ceiling(report.kind)},
              {"worst_pair", worst},
              {"pairs_checked", report.pairs_checked},
              {"pairs_skipped", report.pairs_skipped}};
}

json to_json(const ConditionCheck<Point>& check) {
  json witness = nullptr;
  if (check.witness) witness = json::array({to_json(check.witness->first), to_json(check.witness->second)});
  return json{{"holds", check.holds},
              {"witness", witness},
              {"excess", real(check.excess)},
              {"pairs_checked", check.pairs_checked}};
}

json to_json(const TriangleCheck<Point>& check) {
  json witness = nullptr;
  if (check.witness) {
    const auto& w = *check.witness;
    witness = json{{"a", to_json(w.a)},       {"b", to_json(w.b)},       {"c", to_json(w.c)},
                   {"d_ac", real(w.d_ac)}, {"d_ab", real(w.d_ab)}, {"d_bc", real(w.d_bc)}};
  }
  return json{{"holds", check.holds}, {"witness", witness}};
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

namespace {

bool is_flat_array(const json& v) {
  if (!v.is_array()) return false;
  for (const auto& e : v) {
    if (e.is_object()) return false;
    if (e.is_array() && !is_flat_array(e)) return false;
  }
  return true;
}

void render_value(std::ostringstream& os, const std::string& prefix, const json& v, int depth) {
  const std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
  if (v.is_object()) {
    if (!prefix.empty()) os << indent << prefix << ":\n";
    for (const auto& [key, child] : v.items()) render_value(os, key, child, prefix.empty() ? depth : depth + 1);
    return;
  }
  if (v.is_array() && !is_flat_array(v)) {
    os << indent << prefix << ":\n";
    for (std::size_t i = 0; i < v.size(); ++i) render_value(os, "[" + std::to_string(i) + "]", v[i], depth + 1);
    return;
  }
  os << indent << prefix << ": ";
  if (v.is_string()) {
    os << v.get<std::string>();
  } else if (v.is_null()) {
    os << "-";
  } else {
    os << v.dump();
  }
  os << "\n";
}

}  // namespace

std::string render_text(const json& report) {
  std::ostringstream os;
  os << "fixpoint " << report.value("command", std::string("?")) << "\n";
  const json* cert = report.contains("certificate") ? &report.at("certificate") : nullptr;
  if (cert != nullptr && cert->is_object() && cert->contains("rows")) {
    char line[320];
    std::snprintf(line, sizeof line, "%-3s %-44s %14s %14s %11s  %s\n", "#", "check", "bound",
                  "observed", "margin", "result");
    os << line;
    auto num = [](const json& v) {
      char buf[32];
      if (v.is_null()) return std::string("-");
      std::snprintf(buf, sizeof buf, "%.6g", v.get<double>());
      return std::string(buf);
    };
    for (const auto& row : cert->at("rows")) {
      std::snprintf(line, sizeof line, "%-3d %-44s %14s %14s %11s  %s\n", row.at("criterion").get<int>(),
                    row.at("label").get<std::string>().c_str(), num(row.at("bound")).c_str(),
                    num(row.at("observed")).c_str(), num(row.at("margin")).c_str(),
                    row.at("pass").get<bool>() ? "PASS" : "FAIL");
      os << line;
    }
  } else if (cert != nullptr && !cert->is_null()) {
    os << "certificate:\n";
    render_value(os, "", *cert, 1);
  }
  if (report.contains("hypotheses") && !report.at("hypotheses").empty()) {
    os << "hypotheses:\n";
    render_value(os, "", report.at("hypotheses"), 1);
  }
  os << "verdict: " << report.value("verdict", std::string("?")) << " (exit "
     << report.value("exit_code", -1) << ")\n";
  return os.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write report to '" + tmp.string() + "'");
    out << text;
    out.flush();
    if (!out) throw InputError("failed writing report to '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw InputError("cannot move report into place at '" + path.string() + "'");
  }
}

}  // namespace fixpoint
