#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "subgrad/geometry.hpp"
#include "subgrad/point.hpp"

namespace subgrad {

/// One turn of a run: the action played, the cost it paid, and the
/// unprojected iterate that produced it (absent on turn 1).
struct TurnEntry {
  Point cost;
  std::optional<Point> unprojected;
  Point action;
};

/// Outcome of a snap check at one turn n: whenever
/// n >= 9 / (gap_j eta)^2 and the running mean error is within gap_j / 3 in
/// the sup norm, the next action must put zero mass on every coordinate whose
/// gap is at least gap_j. `level` is the smallest such j (sorted position).
struct SnapCheck {
  std::size_t turn = 0;
  bool hypothesis_holds = false;
  bool conclusion_holds = false;
  std::size_t level = 0;
};

struct SnapSummary {
  std::size_t hypothesis_turns = 0;
  std::size_t violations = 0;
  /// First turn n after which x_{n+1} equalled the best vertex for the rest of the run.
  std::optional<std::size_t> snap_turn;
};

/// Per-trial log. `instant` always holds a per-turn regret term: a . (x_n - x*)
/// against the mean minimiser when the mean is known, otherwise
/// b_n . (x_n - x*) against the hindsight minimiser of the whole run.
struct RunRecord {
  std::size_t trial = 0;
  double eta = 1.0;
  ConvexDomain domain = ConvexDomain::simplex(2);
  std::optional<Point> mean;
  std::vector<TurnEntry> turns;  // per-turn record level only
  std::vector<double> instant;
  double regret = 0.0;  // hindsight regret sum b_n . (x_n - x*)
  double max_cost_norm = 0.0;
  std::optional<SnapSummary> snap;

  std::size_t horizon() const noexcept { return instant.size(); }

  double cumulative() const noexcept {
    double s = 0.0;
    for (double v : instant) s += v;
    return s;
  }
};

}  // namespace subgrad
