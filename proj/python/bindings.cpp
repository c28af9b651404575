#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "fixpoint/cli.hpp"
#include "fixpoint/funceq.hpp"
#include "fixpoint/instance.hpp"
#include "fixpoint/repro.hpp"

namespace py = pybind11;
using namespace fixpoint;

namespace {

using Rows = std::vector<std::vector<double>>;

Rows to_rows(const FunctionTable& t) {
  Rows out;
  for (const auto& p : t) out.emplace_back(p.coords().begin(), p.coords().end());
  return out;
}

FunctionTable from_rows(const Rows& rows) {
  std::vector<Point> points;
  for (const auto& r : rows) points.emplace_back(r);
  return FunctionTable(std::move(points));
}

/// Runs a command on an instance document given as JSON text; returns the report as JSON text.
std::string run_command(Report (*command)(const InstanceFile&), const std::string& doc) {
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(doc);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(e.what());
  }
  InstanceFile file = parse_instance(parsed);
  return command(file).to_json().dump();
}

}  // namespace

PYBIND11_MODULE(_fixpoint, m) {
  m.doc() = "Fixed-point solver and stability certificates";

  // Translators run newest first, so the base class is registered before its subclasses.
  auto& error = py::register_exception<Error>(m, "Error");
  py::register_exception<InputError>(m, "InputError", error.ptr());
  py::register_exception<DomainError>(m, "DomainError", error.ptr());
  py::register_exception<ConsistencyError>(m, "ConsistencyError", error.ptr());

  m.def("metric_names", [] {
    std::vector<std::string> out;
    for (auto n : metric_names()) out.emplace_back(n);
    return out;
  });
  m.def("distance", [](const std::string& metric, const std::vector<double>& u,
                       const std::vector<double>& v) {
    return make_metric(metric, u.size())(Point(u), Point(v));
  }, py::arg("metric"), py::arg("u"), py::arg("v"));

  m.def("bound_banach", &bound_banach, py::arg("delta"), py::arg("lam"));
  m.def("bound_kannan_chatterjea", &bound_kannan_chatterjea, py::arg("delta"), py::arg("lam"));
  m.def("bound_ciric", &bound_ciric, py::arg("delta"), py::arg("lam"));
  m.def("kannan_step_bound", &kannan_step_bound, py::arg("m"), py::arg("lam"), py::arg("d1"));
  m.def("ciric_reduced_factor", &ciric_reduced_factor, py::arg("coefficients"));

  m.def("baker_series_solution",
        [](const std::vector<std::size_t>& psi, const std::vector<double>& lam, const Rows& b,
           const std::string& norm, const std::vector<double>& weights, std::size_t k_max,
           double tail_tol) {
          const BakerInstance inst{psi.size(), psi, lam, from_rows(b), Norm::make(norm, weights)};
          return to_rows(baker_series_solution(inst, k_max, tail_tol));
        },
        py::arg("psi"), py::arg("lam"), py::arg("B"), py::arg("norm") = "euclidean",
        py::arg("weights") = std::vector<double>{}, py::arg("k_max") = 64,
        py::arg("tail_tol") = 1e-13);

  m.def("_check_metric", [](const std::string& doc) { return run_command(&cmd_check_metric, doc); });
  m.def("_classify", [](const std::string& doc) { return run_command(&cmd_classify, doc); });
  m.def("_solve", [](const std::string& doc) { return run_command(&cmd_solve, doc); });
  m.def("_certify", [](const std::string& doc) { return run_command(&cmd_certify, doc); });
  m.def("_repro", [](std::uint64_t seed) {
    ReproOptions options;
    options.seed = seed;
    return to_json(run_repro(options)).dump();
  }, py::arg("seed") = 0);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs the command-line interface in-process: (exit_code, stdout, stderr).");
}
