#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "subgrad/errors.hpp"

namespace subgrad {

/// Dense real vector with finite entries and a dimension fixed at construction.
///
/// Points are the common currency of the library: cost vectors, unprojected
/// iterates and actions are all Points. Arithmetic helpers below check that
/// dimensions agree and throw InvalidInput otherwise.
class Point {
 public:
  Point() = default;

  explicit Point(std::size_t dim, double fill = 0.0) : coords_(dim, fill) {}

  Point(std::initializer_list<double> values) : coords_(values) { validate(); }

  explicit Point(std::vector<double> values) : coords_(std::move(values)) { validate(); }

  static Point unit(std::size_t dim, std::size_t index) {
    Point p(dim);
    p.coords_.at(index) = 1.0;
    return p;
  }

  std::size_t size() const noexcept { return coords_.size(); }
  bool empty() const noexcept { return coords_.empty(); }

  double operator[](std::size_t i) const noexcept { return coords_[i]; }
  double& operator[](std::size_t i) noexcept { return coords_[i]; }

  std::span<const double> coords() const noexcept { return coords_; }
  const std::vector<double>& values() const noexcept { return coords_; }

  auto begin() const noexcept { return coords_.begin(); }
  auto end() const noexcept { return coords_.end(); }

  bool all_finite() const noexcept {
    return std::all_of(coords_.begin(), coords_.end(),
                       [](double v) { return std::isfinite(v); });
  }

  Point& operator+=(const Point& other) {
    require_same_size(other);
    for (std::size_t i = 0; i < size(); ++i) coords_[i] += other.coords_[i];
    return *this;
  }

  Point& operator-=(const Point& other) {
    require_same_size(other);
    for (std::size_t i = 0; i < size(); ++i) coords_[i] -= other.coords_[i];
    return *this;
  }

  Point& operator*=(double s) noexcept {
    for (double& v : coords_) v *= s;
    return *this;
  }

  friend Point operator+(Point a, const Point& b) { return a += b; }
  friend Point operator-(Point a, const Point& b) { return a -= b; }
  friend Point operator*(Point a, double s) { return a *= s; }
  friend Point operator*(double s, Point a) { return a *= s; }

  friend bool operator==(const Point&, const Point&) = default;

  void require_same_size(const Point& other) const {
    if (other.size() != size()) {
      throw InvalidInput("dimension mismatch: " + std::to_string(size()) + " vs " +
                         std::to_string(other.size()));
    }
  }

 private:
  void validate() const {
    if (!all_finite()) throw InvalidInput("point has non-finite coordinates");
  }

  std::vector<double> coords_;
};

inline double dot(const Point& a, const Point& b) {
  a.require_same_size(b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double sum(const Point& a) noexcept {
  return std::accumulate(a.begin(), a.end(), 0.0);
}

inline double squared_norm(const Point& a) noexcept {
  double s = 0.0;
  for (double v : a) s += v * v;
  return s;
}

inline double norm(const Point& a) noexcept { return std::sqrt(squared_norm(a)); }

inline double max_abs(const Point& a) noexcept {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

inline double distance(const Point& a, const Point& b) { return norm(a - b); }

/// Smallest index attaining the minimum coordinate.
inline std::size_t argmin_index(const Point& a) {
  if (a.empty()) throw InvalidInput("argmin of an empty point");
  return static_cast<std::size_t>(std::min_element(a.begin(), a.end()) - a.begin());
}

/// Smallest index attaining the maximum coordinate.
inline std::size_t argmax_index(const Point& a) {
  if (a.empty()) throw InvalidInput("argmax of an empty point");
  return static_cast<std::size_t>(std::max_element(a.begin(), a.end()) - a.begin());
}

}  // namespace subgrad
