#pragma once

#include <array>
#include <cmath>
#include <initializer_list>
#include <span>
#include <string>

#include "antisym/errors.hpp"

namespace antisym {

inline constexpr int kMaxDim = 3;

/// Problem context: dimension n and fractional order s.
struct Params {
  int n = 1;
  double s = 0.5;

  Params() = default;
  Params(int dim, double order) : n(dim), s(order) { validate(); }

  void validate() const {
    if (n < 1 || n > kMaxDim) {
      throw UsageError("dimension n must be 1, 2 or 3 (got " + std::to_string(n) + ")");
    }
    if (!(s > 0.0 && s < 1.0)) {
      throw UsageError("fractional order s must lie in the open interval (0,1)");
    }
  }

  friend bool operator==(const Params&, const Params&) = default;
};

/// A point of R^n, n <= 3, stored inline. Coordinates follow x = (x1, x').
class Point {
 public:
  Point() = default;
  explicit Point(int dim) : dim_(dim) {
    if (dim < 1 || dim > kMaxDim) throw UsageError("point dimension must be 1, 2 or 3");
  }
  Point(std::initializer_list<double> coords) : Point(static_cast<int>(coords.size())) {
    int i = 0;
    for (double c : coords) c_[i++] = c;
  }
  explicit Point(std::span<const double> coords) : Point(static_cast<int>(coords.size())) {
    for (int i = 0; i < dim_; ++i) c_[i] = coords[i];
  }

  /// x1 * e1 in R^dim.
  static Point axis(int dim, double x1) {
    Point p(dim);
    p.c_[0] = x1;
    return p;
  }

  int dim() const noexcept { return dim_; }
  double operator[](int i) const noexcept { return c_[i]; }
  double& operator[](int i) noexcept { return c_[i]; }
  std::span<const double> coords() const noexcept { return {c_.data(), static_cast<std::size_t>(dim_)}; }

  double norm2() const noexcept {
    double acc = 0.0;
    for (int i = 0; i < dim_; ++i) acc += c_[i] * c_[i];
    return acc;
  }
  double norm() const noexcept { return std::sqrt(norm2()); }

  Point& operator+=(const Point& o) noexcept {
    for (int i = 0; i < dim_; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Point& operator-=(const Point& o) noexcept {
    for (int i = 0; i < dim_; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Point& operator*=(double a) noexcept {
    for (int i = 0; i < dim_; ++i) c_[i] *= a;
    return *this;
  }
  friend Point operator+(Point a, const Point& b) noexcept { return a += b; }
  friend Point operator-(Point a, const Point& b) noexcept { return a -= b; }
  friend Point operator*(double k, Point a) noexcept { return a *= k; }
  friend Point operator-(Point a) noexcept { return a *= -1.0; }

  friend bool operator==(const Point& a, const Point& b) noexcept {
    if (a.dim_ != b.dim_) return false;
    for (int i = 0; i < a.dim_; ++i)
      if (a.c_[i] != b.c_[i]) return false;
    return true;
  }

 private:
  std::array<double, kMaxDim> c_{};
  int dim_ = 0;
};

/// Reflection across {x1 = 0}: x_* = (-x1, x').
inline Point reflect(Point x) noexcept {
  x[0] = -x[0];
  return x;
}

inline double dot(const Point& a, const Point& b) noexcept {
  double acc = 0.0;
  for (int i = 0; i < a.dim(); ++i) acc += a[i] * b[i];
  return acc;
}

inline double distance2(const Point& a, const Point& b) noexcept {
  double acc = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

inline void require_dim(const Point& x, int n, const char* what) {
  if (x.dim() != n) {
    throw UsageError(std::string(what) + ": point has dimension " + std::to_string(x.dim()) +
                     ", expected " + std::to_string(n));
  }
}

}  // namespace antisym
