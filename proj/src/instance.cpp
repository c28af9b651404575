#include "fixpoint/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "fixpoint/maps.hpp"

namespace fixpoint {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw InputError("field " + (path.empty() ? std::string("/") : path) + ": " + what);
}

void only_fields(const json& obj, const std::string& path,
                 std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(path + "/" + key, "unknown field '" + key + "'");
    }
  }
}

const json& required(const json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key)) fail(path + "/" + key, "missing required field");
  return obj.at(key);
}

double as_real(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(path, "expected a finite number");
  return x;
}

std::uint64_t as_count(const json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    if (!v.is_number_unsigned()) fail(path, "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

std::vector<double> as_reals(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_real(v[i], path + "/" + std::to_string(i)));
  return out;
}

/// A number (dimension 1 only) or an array of `dim` numbers.
Point as_point(const json& v, const std::string& path, std::size_t dim) {
  if (v.is_number()) {
    if (dim != 1) fail(path, "a bare number is only a point in dimension 1");
    return Point{as_real(v, path)};
  }
  auto coords = as_reals(v, path);
  if (coords.size() != dim) {
    fail(path, "expected " + std::to_string(dim) + " coordinates, got " +
                   std::to_string(coords.size()));
  }
  return Point(std::move(coords));
}

std::vector<Point> as_points(const json& v, const std::string& path, std::size_t dim,
                             std::optional<std::size_t> count = std::nullopt) {
  if (!v.is_array()) fail(path, "expected an array of points");
  if (count && v.size() != *count) {
    fail(path, "expected " + std::to_string(*count) + " entries, got " + std::to_string(v.size()));
  }
  std::vector<Point> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_point(v[i], path + "/" + std::to_string(i), dim));
  return out;
}

std::vector<std::size_t> as_psi(const json& v, const std::string& path, std::size_t n) {
  if (!v.is_array() || v.size() != n) fail(path, "expected an array of " + std::to_string(n) + " indices");
  std::vector<std::size_t> psi;
  for (std::size_t i = 0; i < n; ++i) {
    const auto idx = as_count(v[i], path + "/" + std::to_string(i));
    if (idx >= n) fail(path + "/" + std::to_string(i), "index outside the domain");
    psi.push_back(static_cast<std::size_t>(idx));
  }
  return psi;
}

std::vector<double> as_sized_reals(const json& v, const std::string& path, std::size_t n) {
  auto out = as_reals(v, path);
  if (out.size() != n) fail(path, "expected " + std::to_string(n) + " entries");
  return out;
}

MapUnderTest parse_map(const json& v, const std::string& path, std::size_t dim) {
  only_fields(v, path, {"name", "params"});
  const std::string name = as_string(required(v, path, "name"), path + "/name");
  const json params = v.contains("params") ? v.at("params") : json::object();
  const std::string ppath = path + "/params";
  auto param = [&](const char* key) { return as_real(required(params, ppath, key), ppath + "/" + key); };

  if (name == "scale") {
    only_fields(params, ppath, {"factor"});
    return scale_map(dim, param("factor"));
  }
  if (name == "affine") {
    only_fields(params, ppath, {"a", "c"});
    return affine_map(param("a"), as_point(required(params, ppath, "c"), ppath + "/c", dim));
  }
  if (name == "shift") {
    only_fields(params, ppath, {"offset"});
    return shift_map(dim, param("offset"));
  }
  if (name == "identity") {
    only_fields(params, ppath, {});
    return identity_map(dim);
  }
  if (name == "cos") {
    only_fields(params, ppath, {"lo", "hi"});
    const double lo = param("lo");
    const double hi = param("hi");
    if (lo > hi) fail(ppath, "lo must not exceed hi");
    return cosine_map(dim, lo, hi);
  }
  fail(path + "/name", "unknown map '" + name + "' (expected scale, affine, shift, identity, cos)");
}

FuncEqInstance parse_funceq(const json& v, const std::string& path, PointSpace base) {
  only_fields(v, path, {"n", "psi", "G"});
  const auto n = as_count(required(v, path, "n"), path + "/n");
  if (n == 0) fail(path + "/n", "domain size must be positive");
  auto psi = as_psi(required(v, path, "psi"), path + "/psi", n);
  const std::string gpath = path + "/G";
  const json& g = required(v, path, "G");
  if (!g.is_object()) fail(gpath, "expected an object");
  const std::string family = as_string(required(g, gpath, "family"), gpath + "/family");
  const std::size_t dim = base.dimension();
  if (family == "affine") {
    only_fields(g, gpath, {"family", "a", "c"});
    auto a = as_sized_reals(required(g, gpath, "a"), gpath + "/a", n);
    auto c = as_points(required(g, gpath, "c"), gpath + "/c", dim, n);
    return affine_instance(std::move(base), std::move(psi), std::move(a), std::move(c));
  }
  if (family == "cosine") {
    only_fields(g, gpath, {"family", "scale", "c"});
    auto scale = as_sized_reals(required(g, gpath, "scale"), gpath + "/scale", n);
    auto c = as_points(required(g, gpath, "c"), gpath + "/c", dim, n);
    return cosine_instance(std::move(base), std::move(psi), std::move(scale), std::move(c));
  }
  fail(gpath + "/family", "unknown G family '" + family + "' (expected affine, cosine)");
}

BakerInstance parse_baker(const json& v, const std::string& path, std::size_t dim) {
  only_fields(v, path, {"n", "psi", "lambda", "B", "norm", "weights"});
  const auto n = as_count(required(v, path, "n"), path + "/n");
  if (n == 0) fail(path + "/n", "domain size must be positive");
  auto psi = as_psi(required(v, path, "psi"), path + "/psi", n);
  auto lam = as_sized_reals(required(v, path, "lambda"), path + "/lambda", n);
  for (std::size_t s = 0; s < n; ++s) {
    if (lam[s] < 0.0) fail(path + "/lambda/" + std::to_string(s), "lambda(s) must be non-negative");
  }
  auto b = as_points(required(v, path, "B"), path + "/B", dim, n);
  const std::string norm_name = as_string(required(v, path, "norm"), path + "/norm");
  std::vector<double> weights;
  if (v.contains("weights")) weights = as_reals(v.at("weights"), path + "/weights");
  if (norm_name == "weighted-sum" && weights.size() != dim) {
    fail(path + "/weights", "weighted-sum norm needs " + std::to_string(dim) + " weights");
  }
  Norm norm = [&] {
    try {
      return Norm::make(norm_name, std::move(weights));
    } catch (const InputError& e) {
      fail(path + "/norm", e.what());
    }
  }();
  return BakerInstance{n, std::move(psi), std::move(lam), FunctionTable(std::move(b)),
                       std::move(norm)};
}

}  // namespace

std::string_view to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::kMetric: return "METRIC";
    case InstanceKind::kMap: return "MAP";
    case InstanceKind::kFuncEq: return "FUNCEQ";
    case InstanceKind::kBaker: return "BAKER";
  }
  return "?";
}

Box InstanceFile::domain() const {
  if (domain_box) return *domain_box;
  return Box(Point(std::vector<double>(dimension, -2.0)), Point(std::vector<double>(dimension, 2.0)));
}

InstanceFile parse_instance(const json& doc) {
  only_fields(doc, "", {"schema_version", "kind", "metric", "dimension", "map", "instance",
                        "start", "domain", "config", "theorem", "lambda", "coefficients", "delta",
                        "witnesses", "description"});
  InstanceFile file;
  file.source = doc;

  const json& version = required(doc, "", "schema_version");
  if (!version.is_number_integer() || version.get<std::int64_t>() != kSchemaVersion) {
    fail("/schema_version", "expected schema_version " + std::to_string(kSchemaVersion));
  }

  if (doc.contains("kind")) {
    const std::string kind = as_string(doc.at("kind"), "/kind");
    if (kind == "MAP") {
      file.kind = InstanceKind::kMap;
    } else if (kind == "FUNCEQ") {
      file.kind = InstanceKind::kFuncEq;
    } else if (kind == "BAKER") {
      file.kind = InstanceKind::kBaker;
    } else {
      fail("/kind", "unknown kind '" + kind + "' (expected MAP, FUNCEQ, BAKER)");
    }
  }

  const auto dim = as_count(required(doc, "", "dimension"), "/dimension");
  if (dim == 0) fail("/dimension", "dimension must be positive");
  file.dimension = static_cast<std::size_t>(dim);

  if (file.kind != InstanceKind::kBaker || doc.contains("metric")) {
    file.metric = as_string(required(doc, "", "metric"), "/metric");
    try {
      (void)make_metric(file.metric, file.dimension);
    } catch (const InputError& e) {
      fail("/metric", e.what());
    }
  }

  if (doc.contains("domain")) {
    const json& d = doc.at("domain");
    only_fields(d, "/domain", {"lo", "hi"});
    Point lo = as_point(required(d, "/domain", "lo"), "/domain/lo", file.dimension);
    Point hi = as_point(required(d, "/domain", "hi"), "/domain/hi", file.dimension);
    try {
      file.domain_box = Box(std::move(lo), std::move(hi));
    } catch (const InputError& e) {
      fail("/domain", e.what());
    }
  }

  if (doc.contains("config")) {
    const json& c = doc.at("config");
    only_fields(c, "/config", {"max_iters", "tol", "window", "seed"});
    if (c.contains("max_iters")) file.iteration.max_iters = as_count(c.at("max_iters"), "/config/max_iters");
    if (c.contains("tol")) file.iteration.tol = as_real(c.at("tol"), "/config/tol");
    if (c.contains("window")) file.iteration.window = as_count(c.at("window"), "/config/window");
    if (c.contains("seed")) file.seed = as_count(c.at("seed"), "/config/seed");
    try {
      file.iteration.validate();
    } catch (const InputError& e) {
      fail("/config", e.what());
    }
  }

  if (doc.contains("theorem")) file.theorem = as_string(doc.at("theorem"), "/theorem");
  if (doc.contains("lambda")) file.lambda = as_real(doc.at("lambda"), "/lambda");
  if (doc.contains("delta")) file.delta = as_real(doc.at("delta"), "/delta");
  if (doc.contains("coefficients")) {
    const auto c = as_reals(doc.at("coefficients"), "/coefficients");
    if (c.size() != 5) fail("/coefficients", "expected 5 Ciric coefficients");
    file.coefficients = std::array<double, 5>{c[0], c[1], c[2], c[3], c[4]};
  }
  if (doc.contains("description")) (void)as_string(doc.at("description"), "/description");

  if (doc.contains("witnesses")) {
    const json& ws = doc.at("witnesses");
    if (!ws.is_array()) fail("/witnesses", "expected an array");
    for (std::size_t i = 0; i < ws.size(); ++i) {
      const std::string wpath = "/witnesses/" + std::to_string(i);
      only_fields(ws[i], wpath, {"terms", "limits"});
      auto terms = as_points(required(ws[i], wpath, "terms"), wpath + "/terms", file.dimension);
      if (terms.empty()) fail(wpath + "/terms", "witness needs at least one term");
      auto limits = as_points(required(ws[i], wpath, "limits"), wpath + "/limits", file.dimension, 2);
      file.witnesses.push_back({std::move(terms), {limits[0], limits[1]}});
    }
  }

  switch (file.kind) {
    case InstanceKind::kMetric:
      for (const char* key : {"map", "instance", "start", "theorem", "lambda", "coefficients", "delta"}) {
        if (doc.contains(key)) fail(std::string("/") + key, "not allowed in a bare metric block");
      }
      break;
    case InstanceKind::kMap:
      if (doc.contains("instance")) fail("/instance", "MAP files use 'map', not 'instance'");
      file.map = parse_map(required(doc, "", "map"), "/map", file.dimension);
      if (doc.contains("start")) file.start_point = as_point(doc.at("start"), "/start", file.dimension);
      if (file.theorem) {
        try {
          (void)parse_contraction_kind(*file.theorem);
        } catch (const InputError& e) {
          fail("/theorem", e.what());
        }
      }
      break;
    case InstanceKind::kFuncEq: {
      if (doc.contains("map")) fail("/map", "FUNCEQ files use 'instance', not 'map'");
      file.funceq = parse_funceq(required(doc, "", "instance"), "/instance",
                                 make_metric(file.metric, file.dimension));
      file.start_table = FunctionTable(as_points(required(doc, "", "start"), "/start",
                                                 file.dimension, file.funceq->domain_size));
      if (file.theorem) {
        try {
          if (parse_stability_theorem(*file.theorem) == StabilityTheorem::kBaker) {
            fail("/theorem", "T5-BAKER applies to BAKER files");
          }
        } catch (const InputError& e) {
          fail("/theorem", e.what());
        }
      }
      break;
    }
    case InstanceKind::kBaker: {
      if (doc.contains("map")) fail("/map", "BAKER files use 'instance', not 'map'");
      file.baker = parse_baker(required(doc, "", "instance"), "/instance", file.dimension);
      if (!file.metric.empty() && file.metric != file.baker->norm.name()) {
        fail("/metric", "metric must match the norm '" + file.baker->norm.name() + "'");
      }
      file.start_table = FunctionTable(as_points(required(doc, "", "start"), "/start",
                                                 file.dimension, file.baker->domain_size));
      if (file.theorem && *file.theorem != "T5-BAKER") fail("/theorem", "BAKER files certify under T5-BAKER");
      break;
    }
  }
  return file;
}

InstanceFile load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open instance file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t byte = std::min<std::size_t>(e.byte, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < byte; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw InputError(path.string() + ":" + std::to_string(line) + ":" + std::to_string(column) +
                     ": JSON syntax error: " + e.what());
  }
  return parse_instance(doc);
}

}  // namespace fixpoint
