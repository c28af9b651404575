#include "fixpoint/maps.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace fixpoint {

namespace {

template <class F>
MapUnderTest coordinatewise(std::string name, std::size_t dim, F f) {
  if (dim == 0) throw InputError("map dimension must be positive");
  return {std::move(name), dim, [f](const Point& x) {
            std::vector<double> out(x.dim());
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(x[i]);
            return Point(std::move(out));
          }};
}

}  // namespace

MapUnderTest scale_map(std::size_t dim, double factor) {
  return coordinatewise("scale(" + format_real(factor) + ")", dim,
                        [factor](double x) { return factor * x; });
}

MapUnderTest affine_map(double a, const Point& c) {
  return {"affine", c.dim(), [a, c](const Point& x) {
            std::vector<double> out(x.dim());
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = a * x[i] + c[i];
            return Point(std::move(out));
          }};
}

MapUnderTest shift_map(std::size_t dim, double offset) {
  return coordinatewise("shift", dim, [offset](double x) { return x + offset; });
}

MapUnderTest identity_map(std::size_t dim) {
  return coordinatewise("identity", dim, [](double x) { return x; });
}

MapUnderTest cosine_map(std::size_t dim, double lo, double hi) {
  if (lo > hi) throw InputError("cosine map needs lo <= hi");
  return coordinatewise("cos", dim, [lo, hi](double x) { return std::cos(std::clamp(x, lo, hi)); });
}

}  // namespace fixpoint
