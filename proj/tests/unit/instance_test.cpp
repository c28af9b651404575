#include <gtest/gtest.h>

#include <string>

#include "fixpoint/instance.hpp"

using namespace fixpoint;
using nlohmann::json;

namespace {

std::string data(const std::string& name) { return std::string(FIXPOINT_TEST_DATA) + "/" + name; }

json halving_doc() {
  return json::parse(R"({"schema_version": 1, "kind": "MAP", "metric": "euclidean", "dimension": 1,
                         "map": {"name": "scale", "params": {"factor": 0.5}}, "start": 1})");
}

std::string input_error(const json& doc) {
  try {
    parse_instance(doc);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Instance, DataFilesParse) {
  for (const char* name : {"euclidean.json", "squared.json", "halving.json", "quarter.json", "identity.json",
                           "cosine.json", "affine_scalar.json", "baker_swap.json", "kannan_ceiling.json"}) {
    EXPECT_NO_THROW(load_instance(data(name))) << name;
  }
}

TEST(Instance, KindsAndMembers) {
  const auto metric = load_instance(data("euclidean.json"));
  EXPECT_EQ(metric.kind, InstanceKind::kMetric);
  const auto map = load_instance(data("halving.json"));
  EXPECT_EQ(map.kind, InstanceKind::kMap);
  EXPECT_EQ(*map.start_point, Point{1.0});
  EXPECT_EQ(*map.lambda, 0.5);
  EXPECT_EQ(map.iteration.tol, 1e-12);
  const auto baker = load_instance(data("baker_swap.json"));
  EXPECT_EQ(baker.kind, InstanceKind::kBaker);
  EXPECT_EQ(baker.baker->domain_size, 2u);
  EXPECT_EQ(to_string(InstanceKind::kFuncEq), "FUNCEQ");
}

TEST(Instance, UnknownFieldNamesPath) {
  try {
    load_instance(data("typo.json"));
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("/dimnension"), std::string::npos) << e.what();
  }
  auto doc = halving_doc();
  doc["map"]["params"]["factr"] = 1;
  EXPECT_NE(input_error(doc).find("/map/params/factr"), std::string::npos);
}

TEST(Instance, SchemaVersionChecked) {
  auto doc = halving_doc();
  doc["schema_version"] = 2;
  EXPECT_NE(input_error(doc).find("/schema_version"), std::string::npos);
  doc.erase("schema_version");
  EXPECT_NE(input_error(doc).find("/schema_version"), std::string::npos);
}

TEST(Instance, UnknownNamesRejected) {
  auto doc = halving_doc();
  doc["metric"] = "manhattan";
  EXPECT_NE(input_error(doc).find("/metric"), std::string::npos);
  doc = halving_doc();
  doc["map"]["name"] = "tan";
  EXPECT_NE(input_error(doc).find("/map/name"), std::string::npos);
  doc = halving_doc();
  doc["theorem"] = "BANACHISH";
  EXPECT_FALSE(input_error(doc).empty());
}

TEST(Instance, ShapesChecked) {
  auto doc = halving_doc();
  doc["start"] = json::array({1, 2});
  EXPECT_NE(input_error(doc).find("/start"), std::string::npos);
  doc = halving_doc();
  doc["dimension"] = 0;
  EXPECT_NE(input_error(doc).find("/dimension"), std::string::npos);
  doc = halving_doc();
  doc["start"] = "one";
  EXPECT_FALSE(input_error(doc).empty());
}

TEST(Instance, PsiOutOfRange) {
  auto doc = json::parse(R"({"schema_version": 1, "kind": "BAKER", "dimension": 1,
                             "instance": {"n": 2, "psi": [1, 2], "lambda": [0.5, 0.5], "B": [1, 0],
                                          "norm": "euclidean"},
                             "start": [0, 0], "theorem": "T5-BAKER"})");
  EXPECT_NE(input_error(doc).find("/instance/psi/1"), std::string::npos);
}

TEST(Instance, SyntaxErrorReportsPosition) {
  try {
    load_instance(data("syntax.json"));
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("syntax.json:4:"), std::string::npos) << e.what();
  }
  EXPECT_THROW(load_instance(data("missing.json")), InputError);
}

TEST(Instance, DefaultDomain) {
  const auto file = parse_instance(halving_doc());
  EXPECT_FALSE(file.domain_box.has_value());
  const auto box = file.domain();
  EXPECT_EQ(box.lo, Point{-2.0});
  EXPECT_EQ(box.hi, Point{2.0});
}
