#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace mmfix {

/// Element of a numeric domain: a real scalar or a fixed-dimension real vector.
class Point {
 public:
  Point() = default;
  Point(double x) : coords_{x} {}  // NOLINT(google-explicit-constructor)
  Point(std::initializer_list<double> xs) : coords_(xs) {}
  explicit Point(std::vector<double> xs) : coords_(std::move(xs)) {}

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }

  /// Value of a one-dimensional point. Throws Argument for other dimensions.
  double scalar() const;

  std::string to_string() const;

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

/// Euclidean norm of x - y. Dimensions must agree.
double euclidean_distance(const Point& x, const Point& y);

using SelfMap = std::function<Point(const Point&)>;

}  // namespace mmfix
