#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace fixpoint {

/// An element of the carrier space: a non-empty tuple of finite reals.
class Point {
 public:
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator*(double k, const Point& p);

/// Point with `dim` zero coordinates.
Point zeros(std::size_t dim);

/// Largest absolute coordinate difference. Used to decide whether two points are distinct.
double coordinate_gap(const Point& a, const Point& b);

std::string to_string(const Point& p);

/// A function S -> X over the finite domain S = {0, ..., n-1}; entry i holds h(i).
class FunctionTable {
 public:
  explicit FunctionTable(std::vector<Point> values);

  std::size_t size() const noexcept { return values_.size(); }
  /// Dimension shared by every entry.
  std::size_t dim() const noexcept { return values_.front().dim(); }
  const Point& operator[](std::size_t s) const { return values_[s]; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }
  const std::vector<Point>& values() const noexcept { return values_; }

  friend bool operator==(const FunctionTable&, const FunctionTable&) = default;

 private:
  std::vector<Point> values_;
};

/// Table with every entry equal to `value`.
FunctionTable constant_table(std::size_t domain_size, const Point& value);

double coordinate_gap(const FunctionTable& a, const FunctionTable& b);

std::string to_string(const FunctionTable& t);

}  // namespace fixpoint
