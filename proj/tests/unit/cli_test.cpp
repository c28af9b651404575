#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fixpoint/cli.hpp"

using namespace fixpoint;
using nlohmann::json;

namespace {

std::string data(const std::string& name) { return std::string(FIXPOINT_TEST_DATA) + "/" + name; }

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("fixpoint_cli_test_" + name);
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
  json report;
};

Outcome invoke(std::vector<std::string> args) {
  const auto path = scratch("report.json");
  std::filesystem::remove(path);
  args.insert(args.begin(), {"--out", path.string()});
  std::ostringstream out;
  std::ostringstream err;
  Outcome o;
  o.code = run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  if (std::filesystem::exists(path)) o.report = json::parse(slurp(path));
  return o;
}

}  // namespace

TEST(Cli, CheckMetric) {
  const auto e = invoke({"check-metric", data("euclidean.json")});
  EXPECT_EQ(e.code, 0);
  EXPECT_EQ(e.report["verdict"], "PASS");
  EXPECT_EQ(e.report["exit_code"], 0);

  const auto sq = invoke({"check-metric", data("squared.json")});
  EXPECT_EQ(sq.code, 0);
  EXPECT_EQ(sq.report["verdict"], "PASS");
}

TEST(Cli, InputErrorsExitTwo) {
  const auto typo = invoke({"check-metric", data("typo.json")});
  EXPECT_EQ(typo.code, 2);
  EXPECT_EQ(typo.report["verdict"], "FAIL");
  EXPECT_NE(typo.err.find("dimnension"), std::string::npos);

  const auto syntax = invoke({"solve", data("syntax.json")});
  EXPECT_EQ(syntax.code, 2);
  EXPECT_NE(syntax.err.find(":4:"), std::string::npos);

  EXPECT_EQ(invoke({"solve", data("does_not_exist.json")}).code, 2);
}

TEST(Cli, UsageErrorsExitTwo) {
  std::ostringstream out;
  std::ostringstream err;
  EXPECT_EQ(run({"frobnicate"}, out, err), 2);
  EXPECT_EQ(run({"solve"}, out, err), 2);
  EXPECT_EQ(run({"--tol", "abc", "solve", data("halving.json")}, out, err), 2);
  EXPECT_EQ(run({"--help"}, out, err), 0);
}

TEST(Cli, SolveHalving) {
  const auto o = invoke({"solve", data("halving.json")});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.report["verdict"], "PASS");
  EXPECT_EQ(o.report["certificate"]["theoretical_bound"], 1.0);
  EXPECT_NEAR(o.report["certificate"]["fixed_point"][0].get<double>(), 0.0, 1e-11);
  EXPECT_NE(o.out.find("verdict: PASS"), std::string::npos);
}

TEST(Cli, SolveCosine) {
  const auto o = invoke({"solve", data("cosine.json")});
  EXPECT_EQ(o.code, 0);
  EXPECT_NEAR(o.report["certificate"]["fixed_point"][0].get<double>(), 0.7390851332151607, 1e-10);
}

TEST(Cli, ClassifyQuarterAndIdentity) {
  const auto q = invoke({"classify", data("quarter.json")});
  EXPECT_EQ(q.code, 0);
  EXPECT_EQ(q.report["verdict"], "PASS");

  const auto id = invoke({"classify", data("identity.json")});
  EXPECT_EQ(id.code, 1);
  EXPECT_EQ(id.report["verdict"], "NOT_APPLICABLE");

  const auto solve_id = invoke({"solve", data("identity.json")});
  EXPECT_EQ(solve_id.code, 1);
  EXPECT_EQ(solve_id.report["verdict"], "NOT_APPLICABLE");
}

TEST(Cli, CertifyFuncEqAndBaker) {
  const auto affine = invoke({"certify", data("affine_scalar.json")});
  EXPECT_EQ(affine.code, 0);
  EXPECT_EQ(affine.report["certificate"]["delta"], 1.0);
  EXPECT_EQ(affine.report["certificate"]["theoretical_bound"], 2.0);

  const auto baker = invoke({"certify", data("baker_swap.json")});
  EXPECT_EQ(baker.code, 0);
  EXPECT_NEAR(baker.report["certificate"]["exact_solution"][0][0].get<double>(), 4.0 / 3.0, 1e-12);
  EXPECT_NEAR(baker.report["certificate"]["exact_solution"][1][0].get<double>(), 2.0 / 3.0, 1e-12);

  const auto kannan = invoke({"certify", data("kannan_ceiling.json")});
  EXPECT_EQ(kannan.code, 1);
  EXPECT_EQ(kannan.report["verdict"], "FAIL");
}

TEST(Cli, WrongCommandForKindIsInputError) {
  EXPECT_EQ(invoke({"solve", data("euclidean.json")}).code, 2);
  EXPECT_EQ(invoke({"certify", data("halving.json")}).code, 2);
}

TEST(Cli, OutputIsDeterministic) {
  const auto a = scratch("a.json");
  const auto b = scratch("b.json");
  std::ostringstream sink;
  ASSERT_EQ(run({"--out", a.string(), "certify", data("baker_swap.json")}, sink, sink), 0);
  ASSERT_EQ(run({"--out", b.string(), "certify", data("baker_swap.json")}, sink, sink), 0);
  EXPECT_EQ(slurp(a), slurp(b));
}

TEST(Cli, GlobalOverrides) {
  const auto loose = invoke({"--tol", "1e-3", "solve", data("halving.json")});
  EXPECT_EQ(loose.report["certificate"]["tol"], 1e-3);
  EXPECT_LT(loose.report["certificate"]["iterations_used"].get<int>(), 48);

  // Flags after the subcommand work too.
  const auto after = invoke({"solve", data("halving.json"), "--tol", "1e-3"});
  EXPECT_EQ(after.report["certificate"]["tol"], 1e-3);

  const auto s1 = invoke({"--seed", "5", "classify", data("quarter.json")});
  const auto s2 = invoke({"--seed", "6", "classify", data("quarter.json")});
  EXPECT_EQ(s1.code, 0);
  EXPECT_EQ(s2.code, 0);
}
