#pragma once

// Search-based projection oracle used to cross-check the analytic projections.
// Nothing here shares code with the projections in geometry.hpp beyond the
// domain description and membership test.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <variant>

#include "subgrad/errors.hpp"
#include "subgrad/geometry.hpp"
#include "subgrad/point.hpp"

namespace subgrad {

namespace detail {

/// Minimises a convex f on [lo, hi]: a scan at the given step picks the best
/// grid point (smallest index on ties), then golden-section search refines
/// inside the two neighbouring cells.
inline double scan_minimize(const std::function<double(double)>& f, double lo, double hi,
                            double step) {
  if (hi <= lo) return lo;
  const auto cells = static_cast<long>(std::ceil((hi - lo) / step));
  long best_k = 0;
  double best = f(lo);
  for (long k = 1; k <= cells; ++k) {
    const double v = f(std::min(lo + static_cast<double>(k) * step, hi));
    if (v < best) {
      best = v;
      best_k = k;
    }
  }
  double a = std::max(lo, lo + static_cast<double>(best_k - 1) * step);
  double b = std::min(hi, lo + static_cast<double>(best_k + 1) * step);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
    const double c = b - inv_phi * (b - a);
    const double d = a + inv_phi * (b - a);
    if (f(c) <= f(d)) {
      b = d;
    } else {
      a = c;
    }
  }
  double x = 0.5 * (a + b);
  // The scan point itself may beat the refined one at an endpoint minimum.
  const double x_scan = std::min(lo + static_cast<double>(best_k) * step, hi);
  if (f(x_scan) < f(x)) x = x_scan;
  if (f(lo) < f(x)) x = lo;
  if (f(hi) < f(x)) x = hi;
  return x;
}

inline Point brute_force_simplex(const Point& w, double resolution) {
  const std::size_t d = w.size();
  Point x = Point(d, 1.0 / static_cast<double>(d));
  if (d == 1) return Point{1.0};
  auto objective = [&](const Point& p) { return squared_norm(p - w); };

  // Pairwise mass transfers: each move is a one-dimensional convex problem in
  // the amount t moved from coordinate j to coordinate i, t in [-x_i, x_j].
  double previous = objective(x);
  for (int sweep = 0; sweep < 2000; ++sweep) {
    const double step = sweep == 0 ? resolution : 1e-2;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i + 1; j < d; ++j) {
        const double xi = x[i];
        const double xj = x[j];
        auto along = [&](double t) {
          const double a = xi + t - w[i];
          const double b = xj - t - w[j];
          return a * a + b * b;
        };
        const double t = scan_minimize(along, -xi, xj, step);
        x[i] = xi + t;
        x[j] = xj - t;
        if (t == -xi) x[i] = 0.0;
        if (t == xj) x[j] = 0.0;
      }
    }
    const double current = objective(x);
    if (previous - current <= 1e-18) break;
    previous = current;
  }
  return x;
}

inline Point brute_force_box(const Point& w, const BoxDomain& box, double resolution) {
  // The squared distance separates across axes.
  Point x(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto along = [&](double t) { return (t - w[i]) * (t - w[i]); };
    x[i] = scan_minimize(along, box.lo[i], box.hi[i], resolution);
  }
  return x;
}

inline Point brute_force_curved(const Point& w, double alpha, double resolution) {
  const CurvedRegion region{alpha};
  if (region.contains(w, 0.0)) return w;
  // Exterior points project onto the boundary: the graph over [-1, 1] and the
  // top edge y = 1.
  auto on_graph = [&](double t) {
    const double y = region.graph(t);
    return (t - w[0]) * (t - w[0]) + (y - w[1]) * (y - w[1]);
  };
  auto on_top = [&](double t) { return (t - w[0]) * (t - w[0]) + (1.0 - w[1]) * (1.0 - w[1]); };

  // The graph distance need not be unimodal, so refine around the scan's
  // best point only.
  const auto cells = static_cast<long>(std::ceil(2.0 / resolution));
  long best_k = 0;
  double best = on_graph(-1.0);
  for (long k = 1; k <= cells; ++k) {
    const double v = on_graph(std::min(-1.0 + static_cast<double>(k) * resolution, 1.0));
    if (v < best) {
      best = v;
      best_k = k;
    }
  }
  const double a = std::max(-1.0, -1.0 + static_cast<double>(best_k - 1) * resolution);
  const double b = std::min(1.0, -1.0 + static_cast<double>(best_k + 1) * resolution);
  const double g = scan_minimize(on_graph, a, b, (b - a) / 64.0);
  const double t = scan_minimize(on_top, -1.0, 1.0, resolution);
  if (on_top(t) < on_graph(g)) return Point{t, 1.0};
  return Point{g, region.graph(g)};
}

}  // namespace detail

/// Search-based projection used as an independent oracle.
///
/// Simplex and box domains support d <= 5; the curved domain is planar.
/// The result is within O(resolution) of the exact projection.
inline Point brute_force_project(const ConvexDomain& domain, const Point& w, double resolution) {
  detail::require_valid(w);
  if (!(resolution > 0.0)) throw InvalidParameter("resolution must be positive");
  if (w.size() != domain.dimension()) throw InvalidInput("point of the wrong dimension");
  return std::visit(
      [&](const auto& k) -> Point {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, SimplexDomain>) {
          if (k.dim > 5) throw Unsupported("brute-force simplex oracle supports d <= 5");
          return detail::brute_force_simplex(w, resolution);
        } else if constexpr (std::is_same_v<K, BoxDomain>) {
          if (k.lo.size() > 5) throw Unsupported("brute-force box oracle supports d <= 5");
          return detail::brute_force_box(w, k, resolution);
        } else if constexpr (std::is_same_v<K, CurvedDomain>) {
          return detail::brute_force_curved(w, k.alpha, resolution);
        } else {
          throw Unsupported("no brute-force oracle for the unbounded hyperplane");
        }
      },
      domain.kind());
}

}  // namespace subgrad
