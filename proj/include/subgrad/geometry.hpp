#pragma once

// Convex action domains and exact Euclidean projections onto them.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "subgrad/errors.hpp"
#include "subgrad/point.hpp"

namespace subgrad {

inline constexpr double kConstraintTolerance = 1e-12;
inline constexpr double kNormalityTolerance = 1e-10;

namespace detail {

inline void require_valid(const Point& w) {
  if (w.empty()) throw InvalidInput("point of dimension 0");
  if (!w.all_finite()) throw InvalidInput("point has non-finite coordinates");
}

inline void require_curve_exponent(double alpha) {
  if (!(alpha > 2.0) || !std::isfinite(alpha)) {
    throw InvalidParameter("curved domain requires a finite exponent alpha > 2, got " +
                           std::to_string(alpha));
  }
}

}  // namespace detail

/// Euclidean projection onto the probability simplex {u >= 0, sum u = 1}.
///
/// Sort-and-threshold: with v sorted descending, the pivot is the largest j
/// with v(j) - (v(1)+...+v(j) - 1)/j > 0, and every coordinate is shifted by
/// that threshold and clamped at zero.
inline Point project_simplex(const Point& w) {
  detail::require_valid(w);
  const std::size_t d = w.size();
  std::vector<double> sorted(w.begin(), w.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  double running = 0.0;
  double threshold = 0.0;
  std::size_t support = 0;
  for (std::size_t j = 0; j < d; ++j) {
    running += sorted[j];
    const double candidate = (running - 1.0) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0.0) {
      threshold = candidate;
      support = j + 1;
    }
  }

  // A single active coordinate is a vertex; return it without rounding.
  if (support == 1) return Point::unit(d, argmax_index(w));
  Point u(d);
  for (std::size_t i = 0; i < d; ++i) u[i] = std::max(w[i] - threshold, 0.0);
  return u;
}

/// Orthogonal projection onto the hyperplane {x : sum x = 0}.
inline Point project_zero_sum(const Point& w) {
  detail::require_valid(w);
  const double mean = sum(w) / static_cast<double>(w.size());
  Point r = w;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= mean;
  return r;
}

/// Componentwise clamp onto the box [lo, hi].
inline Point project_box(const Point& w, const Point& lo, const Point& hi) {
  detail::require_valid(w);
  w.require_same_size(lo);
  w.require_same_size(hi);
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (lo[i] > hi[i]) throw InvalidInput("box has lo > hi on axis " + std::to_string(i));
  }
  Point r = w;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::clamp(r[i], lo[i], hi[i]);
  return r;
}

/// The compact region between the graph y = |x|^alpha and the line y = 1.
///
/// For alpha > 2 the region is convex but not strictly convex at the origin,
/// which is what makes linear costs with minimiser (0, 0) hard for lazy
/// subgradient. Its corners are (-1, 1) and (1, 1).
struct CurvedRegion {
  double alpha = 3.0;

  double graph(double x) const { return std::pow(std::abs(x), alpha); }

  /// Outward normal of the region at the graph point above x (unnormalised).
  std::array<double, 2> outward_normal(double x) const {
    const double slope = alpha * std::pow(std::abs(x), alpha - 1.0) * (x < 0.0 ? -1.0 : 1.0);
    return {slope, -1.0};
  }

  bool contains(const Point& p, double tol) const {
    if (p.size() != 2) return false;
    const double x = p[0];
    const double y = p[1];
    return std::abs(x) <= 1.0 + tol && y <= 1.0 + tol && y >= graph(x) - tol;
  }
};

/// Euclidean projection onto {(x, y) : |x|^alpha <= y <= 1}.
///
/// Outside points project onto the boundary, which is the graph over [-1, 1]
/// plus the top edge. The graph candidate comes from a 1-D root find of
/// d/dx [(x - w1)^2 + (|x|^alpha - w2)^2]: sign changes are bracketed on a
/// 64-cell grid and bisected to 1e-12, and the endpoints x = +-1 are always
/// candidates. The global minimiser among all candidates is returned.
inline Point project_curved(const Point& w, double alpha) {
  detail::require_valid(w);
  detail::require_curve_exponent(alpha);
  if (w.size() != 2) throw InvalidInput("curved domain is two dimensional");
  const CurvedRegion region{alpha};
  if (region.contains(w, 0.0)) return w;

  const double w1 = w[0];
  const double w2 = w[1];
  auto dist2 = [&](double x, double y) { return (x - w1) * (x - w1) + (y - w2) * (y - w2); };
  auto half_slope = [&](double x) {
    const double ax = std::abs(x);
    const double sgn = x < 0.0 ? -1.0 : 1.0;
    return (x - w1) + (std::pow(ax, alpha) - w2) * alpha * sgn * std::pow(ax, alpha - 1.0);
  };

  double best_x = std::clamp(w1, -1.0, 1.0);
  double best_y = 1.0;
  double best = dist2(best_x, best_y);
  auto offer = [&](double x) {
    const double y = region.graph(x);
    const double d = dist2(x, y);
    if (d < best) {
      best = d;
      best_x = x;
      best_y = y;
    }
  };

  offer(-1.0);
  offer(1.0);

  constexpr int kCells = 64;
  double lo = -1.0;
  double g_lo = half_slope(lo);
  for (int k = 1; k <= kCells; ++k) {
    const double hi = -1.0 + 2.0 * static_cast<double>(k) / kCells;
    const double g_hi = half_slope(hi);
    if (g_lo == 0.0) offer(lo);
    if (g_lo < 0.0 && g_hi > 0.0) {
      double a = lo;
      double b = hi;
      while (b - a > 1e-12) {
        const double mid = 0.5 * (a + b);
        if (half_slope(mid) < 0.0) {
          a = mid;
        } else {
          b = mid;
        }
      }
      offer(0.5 * (a + b));
    }
    lo = hi;
    g_lo = g_hi;
  }
  if (g_lo == 0.0) offer(lo);

  return Point{best_x, best_y};
}

struct SimplexDomain {
  std::size_t dim = 2;
};

struct BoxDomain {
  Point lo;
  Point hi;
};

struct CurvedDomain {
  double alpha = 3.0;
};

struct ZeroSumDomain {
  std::size_t dim = 2;
};

/// A closed convex action set with an exact Euclidean projection.
///
/// Intervals are one-dimensional boxes. The zero-sum hyperplane is unbounded
/// and reports infinite diameter and max-norm.
class ConvexDomain {
 public:
  using Variant = std::variant<SimplexDomain, BoxDomain, CurvedDomain, ZeroSumDomain>;

  static ConvexDomain simplex(std::size_t dim) {
    if (dim == 0) throw InvalidInput("simplex of dimension 0");
    return ConvexDomain(SimplexDomain{dim});
  }

  static ConvexDomain box(Point lo, Point hi) {
    if (lo.empty()) throw InvalidInput("box of dimension 0");
    lo.require_same_size(hi);
    if (!lo.all_finite() || !hi.all_finite()) throw InvalidInput("box bounds must be finite");
    for (std::size_t i = 0; i < lo.size(); ++i) {
      if (lo[i] > hi[i]) throw InvalidInput("box has lo > hi on axis " + std::to_string(i));
    }
    return ConvexDomain(BoxDomain{std::move(lo), std::move(hi)});
  }

  static ConvexDomain interval(double lo, double hi) { return box(Point{lo}, Point{hi}); }

  static ConvexDomain curved(double alpha) {
    detail::require_curve_exponent(alpha);
    return ConvexDomain(CurvedDomain{alpha});
  }

  static ConvexDomain zero_sum(std::size_t dim) {
    if (dim == 0) throw InvalidInput("hyperplane of dimension 0");
    return ConvexDomain(ZeroSumDomain{dim});
  }

  const Variant& kind() const noexcept { return kind_; }

  bool is_simplex() const noexcept { return std::holds_alternative<SimplexDomain>(kind_); }

  std::size_t dimension() const {
    return std::visit(
        [](const auto& k) -> std::size_t {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, BoxDomain>) {
            return k.lo.size();
          } else if constexpr (std::is_same_v<K, CurvedDomain>) {
            return 2;
          } else {
            return k.dim;
          }
        },
        kind_);
  }

  std::string name() const {
    return std::visit(
        [](const auto& k) -> std::string {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, SimplexDomain>) {
            return "simplex";
          } else if constexpr (std::is_same_v<K, BoxDomain>) {
            return k.lo.size() == 1 ? "interval" : "box";
          } else if constexpr (std::is_same_v<K, CurvedDomain>) {
            return "curved";
          } else {
            return "zero-sum";
          }
        },
        kind_);
  }

  Point project(const Point& w) const {
    if (w.size() != dimension()) {
      throw InvalidInput("point of dimension " + std::to_string(w.size()) +
                         " for a domain of dimension " + std::to_string(dimension()));
    }
    return std::visit(
        [&](const auto& k) -> Point {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, SimplexDomain>) {
            return project_simplex(w);
          } else if constexpr (std::is_same_v<K, BoxDomain>) {
            return project_box(w, k.lo, k.hi);
          } else if constexpr (std::is_same_v<K, CurvedDomain>) {
            return project_curved(w, k.alpha);
          } else {
            return project_zero_sum(w);
          }
        },
        kind_);
  }

  bool contains(const Point& p, double tol = kConstraintTolerance) const {
    if (p.size() != dimension() || !p.all_finite()) return false;
    return std::visit(
        [&](const auto& k) -> bool {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, SimplexDomain>) {
            for (double v : p) {
              if (v < -tol) return false;
            }
            return std::abs(sum(p) - 1.0) <= tol;
          } else if constexpr (std::is_same_v<K, BoxDomain>) {
            for (std::size_t i = 0; i < p.size(); ++i) {
              if (p[i] < k.lo[i] - tol || p[i] > k.hi[i] + tol) return false;
            }
            return true;
          } else if constexpr (std::is_same_v<K, CurvedDomain>) {
            return CurvedRegion{k.alpha}.contains(p, tol);
          } else {
            return std::abs(sum(p)) <= tol;
          }
        },
        kind_);
  }

  double diameter() const {
    return std::visit(
        [](const auto& k) -> double {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, SimplexDomain>) {
            return k.dim == 1 ? 0.0 : std::sqrt(2.0);
          } else if constexpr (std::is_same_v<K, BoxDomain>) {
            return distance(k.hi, k.lo);
          } else if constexpr (std::is_same_v<K, CurvedDomain>) {
            return 2.0;  // between the corners (-1, 1) and (1, 1)
          } else {
            return std::numeric_limits<double>::infinity();
          }
        },
        kind_);
  }

  /// max{ ||x|| : x in domain }
  double max_norm() const {
    return std::visit(
        [](const auto& k) -> double {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, SimplexDomain>) {
            return 1.0;
          } else if constexpr (std::is_same_v<K, BoxDomain>) {
            double s = 0.0;
            for (std::size_t i = 0; i < k.lo.size(); ++i) {
              s += std::max(k.lo[i] * k.lo[i], k.hi[i] * k.hi[i]);
            }
            return std::sqrt(s);
          } else if constexpr (std::is_same_v<K, CurvedDomain>) {
            return std::sqrt(2.0);
          } else {
            return std::numeric_limits<double>::infinity();
          }
        },
        kind_);
  }

  /// A minimiser of the linear function x -> g . x over the domain.
  ///
  /// Simplex: the vertex of the smallest coordinate (smallest index on ties).
  /// Box: per-axis lower bound unless the coefficient is negative.
  /// Curved: closed form on the graph; the corners when the vertical
  /// coefficient is non-positive.
  Point minimize_linear(const Point& g) const {
    if (g.size() != dimension()) throw InvalidInput("linear cost of the wrong dimension");
    if (!g.all_finite()) throw InvalidInput("linear cost has non-finite coordinates");
    return std::visit(
        [&](const auto& k) -> Point {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, SimplexDomain>) {
            return Point::unit(k.dim, argmin_index(g));
          } else if constexpr (std::is_same_v<K, BoxDomain>) {
            Point x = k.lo;
            for (std::size_t i = 0; i < x.size(); ++i) {
              if (g[i] < 0.0) x[i] = k.hi[i];
            }
            return x;
          } else if constexpr (std::is_same_v<K, CurvedDomain>) {
            const double g1 = g[0];
            const double g2 = g[1];
            if (g2 > 0.0) {
              double x = std::pow(std::abs(g1) / (k.alpha * g2), 1.0 / (k.alpha - 1.0));
              x = std::min(x, 1.0);
              if (g1 > 0.0) x = -x;
              if (g1 == 0.0) x = 0.0;
              return Point{x, CurvedRegion{k.alpha}.graph(x)};
            }
            return Point{g1 > 0.0 ? -1.0 : 1.0, 1.0};
          } else {
            const double first = g[0];
            for (double v : g) {
              if (v != first) throw Unsupported("linear cost is unbounded below on the hyperplane");
            }
            return Point(k.dim);
          }
        },
        kind_);
  }

 private:
  explicit ConvexDomain(Variant kind) : kind_(std::move(kind)) {}

  Variant kind_;
};

}  // namespace subgrad
