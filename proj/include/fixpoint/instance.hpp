#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fixpoint/contraction.hpp"
#include "fixpoint/funceq.hpp"
#include "fixpoint/metric.hpp"
#include "fixpoint/picard.hpp"

namespace fixpoint {

inline constexpr int kSchemaVersion = 1;

/// kMetric is a bare metric block (no "kind" field).
enum class InstanceKind { kMetric, kMap, kFuncEq, kBaker };

std::string_view to_string(InstanceKind kind);

/// A validated instance file. Which optional members are set depends on `kind`.
struct InstanceFile {
  InstanceKind kind = InstanceKind::kMetric;
  std::string metric;
  std::size_t dimension = 1;

  std::optional<MapUnderTest> map;
  std::optional<FuncEqInstance> funceq;
  std::optional<BakerInstance> baker;

  std::optional<Point> start_point;
  std::optional<FunctionTable> start_table;
  /// Sampling box for pairs, grids and metric samples, when given.
  std::optional<Box> domain_box;

  IterationConfig iteration;
  std::uint64_t seed = 0;

  std::optional<std::string> theorem;
  std::optional<double> lambda;
  std::optional<std::array<double, 5>> coefficients;
  std::optional<double> delta;
  std::vector<WitnessSequence<Point>> witnesses;

  /// The parsed document, echoed into reports.
  nlohmann::json source;

  /// domain_box, or [-2, 2]^dimension.
  Box domain() const;
};

/// Validates a parsed document. Unknown fields, wrong types and out-of-catalogue names raise
/// InputError with the JSON path of the offending field.
InstanceFile parse_instance(const nlohmann::json& doc);

/// Reads and validates a file; syntax errors report line and column.
InstanceFile load_instance(const std::filesystem::path& path);

}  // namespace fixpoint
