// Acceptance driver: one pass/fail line per criterion, nonzero exit on any failure.
// argv[1] is the fixpoint executable, used for the end-to-end determinism check.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fixpoint/repro.hpp"

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Line {
  bool pass = true;
  std::vector<std::string> labels;
  std::vector<std::string> failures;
};

void print(int criterion, const Line& line) {
  std::string label;
  for (const auto& l : line.labels) label += (label.empty() ? "" : "; ") + l;
  std::cout << (line.pass ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": " << label << "\n";
  for (const auto& f : line.failures) std::cout << "       " << f << "\n";
}

// Runs `tool repro --out file` and returns the file contents, or "" when the run fails.
std::string tool_repro(const std::string& tool, const std::filesystem::path& out) {
  const std::string cmd = "\"" + tool + "\" repro --out \"" + out.string() + "\" > /dev/null";
  if (std::system(cmd.c_str()) != 0) return "";
  return slurp(out);
}

}  // namespace

int main(int argc, char** argv) {
  const auto rows = fixpoint::run_repro();
  std::map<int, Line> lines;
  for (const auto& row : rows) {
    auto& line = lines[row.criterion];
    line.labels.push_back(row.label);
    if (!row.pass) {
      line.pass = false;
      line.failures.push_back(row.label + ": bound " + std::to_string(row.bound) + ", observed " +
                              std::to_string(row.observed) + (row.detail.empty() ? "" : ", " + row.detail));
    }
  }

  // The determinism criterion also holds across processes, byte for byte.
  if (argc > 1) {
    const auto dir = std::filesystem::temp_directory_path();
    const auto a = dir / "fixpoint_acceptance_a.json";
    const auto b = dir / "fixpoint_acceptance_b.json";
    const auto first = tool_repro(argv[1], a);
    const auto second = tool_repro(argv[1], b);
    auto& line = lines[9];
    line.labels.push_back("executable output identical across runs");
    if (first.empty() || first != second) {
      line.pass = false;
      line.failures.push_back("repro --out differed between two runs or failed");
    }
  }

  // Mutation check: with the bound replaced by delta alone, criterion 1 must notice.
  fixpoint::ReproOptions mutated;
  mutated.banach_bound = [](double delta, double) { return delta; };
  bool caught = false;
  for (const auto& row : fixpoint::run_bound_checks(mutated)) {
    if (row.criterion == 1 && !row.pass) caught = true;
  }
  auto& line1 = lines[1];
  line1.labels.push_back("mutated bound detected");
  if (!caught) {
    line1.pass = false;
    line1.failures.push_back("replacing delta/(1-lambda) by delta went unnoticed");
  }

  bool all = true;
  for (const auto& [criterion, line] : lines) {
    print(criterion, line);
    all = all && line.pass;
  }
  std::cout << (all ? "all criteria pass" : "some criteria fail") << "\n";
  return all ? 0 : 1;
}
