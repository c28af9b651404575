#include "fixpoint/point.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "fixpoint/errors.hpp"

namespace fixpoint {

namespace {

void require_same_dim(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) {
    throw InputError("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                     std::to_string(b.dim()));
  }
}

std::string exact_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw InputError("point must have at least one coordinate");
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (!std::isfinite(coords_[i])) {
      throw NonFiniteError("coordinate " + std::to_string(i) + " is not finite");
    }
  }
}

Point::Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

Point operator+(const Point& a, const Point& b) {
  require_same_dim(a, b);
  std::vector<double> out(a.dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
  return Point(std::move(out));
}

Point operator-(const Point& a, const Point& b) {
  require_same_dim(a, b);
  std::vector<double> out(a.dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
  return Point(std::move(out));
}

Point operator*(double k, const Point& p) {
  std::vector<double> out(p.dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = k * p[i];
  return Point(std::move(out));
}

Point zeros(std::size_t dim) { return Point(std::vector<double>(dim, 0.0)); }

double coordinate_gap(const Point& a, const Point& b) {
  require_same_dim(a, b);
  double gap = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) gap = std::max(gap, std::abs(a[i] - b[i]));
  return gap;
}

std::string to_string(const Point& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (i) out += ", ";
    out += exact_real(p[i]);
  }
  return out + ")";
}

FunctionTable::FunctionTable(std::vector<Point> values) : values_(std::move(values)) {
  if (values_.empty()) throw InputError("function table must have a non-empty domain");
  const auto d = values_.front().dim();
  for (const auto& v : values_) {
    if (v.dim() != d) throw InputError("function table entries differ in dimension");
  }
}

FunctionTable constant_table(std::size_t domain_size, const Point& value) {
  return FunctionTable(std::vector<Point>(domain_size, value));
}

double coordinate_gap(const FunctionTable& a, const FunctionTable& b) {
  if (a.size() != b.size()) throw InputError("function tables differ in domain size");
  double gap = 0.0;
  for (std::size_t s = 0; s < a.size(); ++s) gap = std::max(gap, coordinate_gap(a[s], b[s]));
  return gap;
}

std::string to_string(const FunctionTable& t) {
  std::string out = "[";
  for (std::size_t s = 0; s < t.size(); ++s) {
    if (s) out += ", ";
    out += to_string(t[s]);
  }
  return out + "]";
}

}  // namespace fixpoint
