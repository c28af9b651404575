#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fixpoint/instance.hpp"
#include "fixpoint/report.hpp"

namespace fixpoint {

/// Global flags that override instance settings.
struct CommandOptions {
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
};

inline constexpr std::size_t kMetricSampleSize = 64;
inline constexpr std::size_t kUniformPairCount = 256;
inline constexpr std::size_t kTablePairCount = 128;
inline constexpr std::size_t kBruteForceGrid = 10'000;

/// Applies --seed and --tol to a parsed instance.
void apply_options(InstanceFile& file, const CommandOptions& options);

/// The grid + seeded uniform pair set used by classify and solve.
std::vector<ElementPair<Point>> sample_pairs(const InstanceFile& file);

// Library errors propagate; run() maps them to exit codes.
Report cmd_check_metric(const InstanceFile& file);
Report cmd_classify(const InstanceFile& file);
Report cmd_solve(const InstanceFile& file);
Report cmd_certify(const InstanceFile& file);
Report cmd_repro(const CommandOptions& options);

/// Entry point behind the `fixpoint` executable. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fixpoint
