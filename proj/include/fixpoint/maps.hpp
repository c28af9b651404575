#pragma once

#include <cstddef>

#include "fixpoint/contraction.hpp"
#include "fixpoint/point.hpp"

namespace fixpoint {

// Built-in self-maps of R^dim.

/// x -> factor * x
MapUnderTest scale_map(std::size_t dim, double factor);
/// x -> a * x + c
MapUnderTest affine_map(double a, const Point& c);
/// x -> x + offset (every coordinate)
MapUnderTest shift_map(std::size_t dim, double offset);
MapUnderTest identity_map(std::size_t dim);
/// x -> cos(clamp(x, lo, hi)) coordinatewise. With [lo, hi] = [0.54, 1] this is a
/// contraction of that interval with constant sin(1).
MapUnderTest cosine_map(std::size_t dim, double lo, double hi);

}  // namespace fixpoint
