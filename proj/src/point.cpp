#include "mmfix/point.hpp"

#include <charconv>
#include <cmath>

#include "mmfix/error.hpp"

namespace mmfix {

namespace {

std::string format_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

}  // namespace

double Point::scalar() const {
  if (coords_.size() != 1) {
    throw Error(ErrorKind::Argument, "expected a scalar point, got dimension " + std::to_string(coords_.size()));
  }
  return coords_[0];
}

std::string Point::to_string() const {
  if (coords_.size() == 1) return format_double(coords_[0]);
  std::string out = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out += ", ";
    out += format_double(coords_[i]);
  }
  return out + ")";
}

double euclidean_distance(const Point& x, const Point& y) {
  if (x.dim() != y.dim()) {
    throw Error(ErrorKind::Argument, "dimension mismatch: " + std::to_string(x.dim()) + " vs " + std::to_string(y.dim()));
  }
  if (x.dim() == 1) return std::abs(x[0] - y[0]);
  double sum = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    const double diff = x[i] - y[i];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

}  // namespace mmfix
