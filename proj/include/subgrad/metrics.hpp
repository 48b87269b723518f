#pragma once

// Regret accounting, snap certificates, log-log growth fits and calculators
// for the printed regret, pseudo-regret and tail bounds.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "subgrad/costs.hpp"
#include "subgrad/errors.hpp"
#include "subgrad/geometry.hpp"
#include "subgrad/point.hpp"
#include "subgrad/record.hpp"

namespace subgrad {

/// sum_i b_i . (x_i - x*) with x* a minimiser of (sum_i b_i) . x over the domain.
inline double regret(std::span<const Point> costs, std::span<const Point> actions,
                     const ConvexDomain& domain) {
  if (costs.size() != actions.size()) {
    throw InvalidInput("regret needs as many actions as costs");
  }
  if (costs.empty()) return 0.0;
  Point total(domain.dimension());
  double paid = 0.0;
  for (std::size_t i = 0; i < costs.size(); ++i) {
    total += costs[i];
    paid += dot(costs[i], actions[i]);
  }
  return paid - dot(total, domain.minimize_linear(total));
}

/// sum_i a . (x_i - x*) with x* the minimiser of a over the domain.
inline double pseudo_regret(const Point& mean, std::span<const Point> actions,
                            const ConvexDomain& domain) {
  const double best = dot(mean, domain.minimize_linear(mean));
  double s = 0.0;
  for (const Point& x : actions) s += dot(mean, x) - best;
  return s;
}

/// Simplex form: the comparator is e_j for j the smallest-index minimiser of a.
inline double pseudo_regret(const Point& mean, std::span<const Point> actions) {
  if (!mean.all_finite()) throw InvalidInput("mean has non-finite coordinates");
  const double best = mean[argmin_index(mean)];
  double s = 0.0;
  for (const Point& x : actions) s += dot(mean, x) - best;
  return s;
}

/// Which constant multiplies ||X||^2 / eta in the adversarial bound.
enum class AdversarialForm {
  kStatement,     ///< ||X||^2 / (2 eta), as stated
  kProofVariant,  ///< ||X||^2 / eta, as used when composing the pseudo-regret bound
};

struct AdversarialBound {
  double value = 0.0;                   ///< L D + (c ||X||^2 / eta + 2 eta L^2) sqrt(N)
  std::optional<double> simplex_value;  ///< sqrt(2) L + 2 L sqrt(N), when the inputs match
  double L2 = 0.0;
  std::size_t N = 0;
  double eta = 0.0;
  double D = 0.0;
  double max_norm = 0.0;
};

namespace detail {

inline void require_positive(double v, const char* name) {
  if (!(v > 0.0) || std::isnan(v)) {
    throw InvalidParameter(std::string(name) + " must be positive");
  }
}

inline bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace detail

/// Pathwise regret bound of lazy anytime subgradient against any cost
/// sequence with ||b_i|| <= L2.
inline AdversarialBound bound_adversarial(double L2, std::size_t N, double eta, double D,
                                          double max_norm,
                                          AdversarialForm form = AdversarialForm::kStatement) {
  detail::require_positive(L2, "L2");
  detail::require_positive(eta, "eta");
  detail::require_positive(D, "D");
  detail::require_positive(max_norm, "max_norm");
  const double scale = form == AdversarialForm::kStatement ? 0.5 : 1.0;
  const double root_n = std::sqrt(static_cast<double>(N));
  AdversarialBound b;
  b.L2 = L2;
  b.N = N;
  b.eta = eta;
  b.D = D;
  b.max_norm = max_norm;
  b.value = L2 * D + (scale * max_norm * max_norm / eta + 2.0 * eta * L2 * L2) * root_n;
  if (detail::nearly_equal(max_norm, 1.0) && detail::nearly_equal(D, std::sqrt(2.0)) &&
      detail::nearly_equal(eta, 1.0 / (2.0 * L2))) {
    b.simplex_value = std::sqrt(2.0) * L2 + 2.0 * L2 * root_n;
  }
  return b;
}

struct PseudoRegretBound {
  /// sqrt(2) L + (1 + 2 eta^2 L^2) L / 6 + (3/eta^2 + 6 L^2 + 72 R^2 exp(-1/(2 eta^2 R^2))) / gap
  double value = 0.0;
  /// 2 L + (18 L^2 + 72 R^2) / gap, reported when eta = 1/(2 L).
  std::optional<double> special_value;
  double L2 = 0.0;
  double R2 = 0.0;
  double gap = 0.0;
  double eta = 0.0;
};

/// Expected pseudo-regret bound on the simplex for i.i.d. costs with
/// ||a_i|| <= L2 and ||a_i - a|| <= R2. An infinite gap drops the 1/gap terms.
inline PseudoRegretBound bound_pseudo_regret(double L2, double R2, double gap, double eta) {
  if (!(gap > 0.0)) throw UndefinedGap("pseudo-regret bound needs a positive gap");
  detail::require_positive(L2, "L2");
  detail::require_positive(eta, "eta");
  if (!(R2 >= 0.0)) throw InvalidParameter("R2 must be >= 0");
  const double L = L2;
  const double noise =
      R2 == 0.0 ? 0.0 : 72.0 * R2 * R2 * std::exp(-1.0 / (2.0 * eta * eta * R2 * R2));
  PseudoRegretBound b;
  b.L2 = L2;
  b.R2 = R2;
  b.gap = gap;
  b.eta = eta;
  b.value = std::sqrt(2.0) * L + (1.0 + 2.0 * eta * eta * L * L) * L / 6.0 +
            (3.0 / (eta * eta) + 6.0 * L * L + noise) / gap;
  if (detail::nearly_equal(eta, 1.0 / (2.0 * L))) {
    b.special_value = 2.0 * L + (18.0 * L * L + 72.0 * R2 * R2) / gap;
  }
  return b;
}

struct TailBound {
  double threshold = 0.0;       ///< 2 L + (L^2 / gap) t
  double probability = 0.0;     ///< (1 + 36 R^2) exp(-t / (24 R^2))
  double validity_floor = 0.0;  ///< (3 / L^2) (2 L + sqrt(2)/eta + sqrt(2) gap / 3)^2
  bool valid = false;           ///< t >= validity_floor
  double L2 = 0.0;
  double R2 = 0.0;
  double gap = 0.0;
  double eta = 0.0;
  double t = 0.0;
};

/// Tail bound P(total pseudo-regret > threshold) <= probability, which holds
/// for t at or above the validity floor. A t below the floor is flagged.
inline TailBound bound_tail(double L2, double R2, double gap, double eta, double t) {
  detail::require_positive(L2, "L2");
  detail::require_positive(eta, "eta");
  detail::require_positive(t, "t");
  if (!(gap > 0.0)) throw UndefinedGap("tail bound needs a positive gap");
  if (!(R2 >= 0.0)) throw InvalidParameter("R2 must be >= 0");
  TailBound b;
  b.L2 = L2;
  b.R2 = R2;
  b.gap = gap;
  b.eta = eta;
  b.t = t;
  b.threshold = 2.0 * L2 + (L2 * L2 / gap) * t;
  b.probability = R2 == 0.0 ? 0.0 : (1.0 + 36.0 * R2 * R2) * std::exp(-t / (24.0 * R2 * R2));
  const double inner = 2.0 * L2 + std::sqrt(2.0) / eta + std::sqrt(2.0) * gap / 3.0;
  b.validity_floor = 3.0 / (L2 * L2) * inner * inner;
  b.valid = t >= b.validity_floor;
  return b;
}

/// Reference curve mean_gap + 0.4 R^2 / gap, with mean_gap the average of all
/// coordinate gaps. Reported alongside simulations, never used as a check.
inline double empirical_reference(const GapProfile& profile, double R) {
  if (!profile.min_positive_gap) throw UndefinedGap("reference needs a positive gap");
  double mean_gap = 0.0;
  for (double g : profile.sorted_gaps) mean_gap += g;
  mean_gap /= static_cast<double>(profile.sorted_gaps.size());
  return mean_gap + 0.4 * R * R / *profile.min_positive_gap;
}

struct TildeConstants {
  double L2 = 0.0;
  double R2 = 0.0;
};

/// Norms of the samples (and of their deviations from the mean) after
/// removing the component along the all-ones vector:
/// sqrt(||v||^2 - (sum v)^2 / d), maximised over the samples.
inline TildeConstants tilde_constants(std::span<const Point> samples, const Point& mean) {
  if (samples.empty()) throw InvalidInput("tilde constants need at least one sample");
  const double d = static_cast<double>(mean.size());
  auto reduced = [d](const Point& v) {
    const double s = sum(v);
    return std::sqrt(std::max(0.0, squared_norm(v) - s * s / d));
  };
  TildeConstants t;
  for (const Point& a : samples) {
    mean.require_same_size(a);
    t.L2 = std::max(t.L2, reduced(a));
    t.R2 = std::max(t.R2, reduced(a - mean));
  }
  return t;
}

/// Incremental snap checker for lazy subgradient on the simplex.
///
/// Feed each cost a_n together with the action x_{n+1} it produced.
class SnapCertifier {
 public:
  static constexpr double kZeroTolerance = 1e-12;

  SnapCertifier(const Point& mean, double eta)
      : mean_(mean), profile_(gaps(mean)), eta_(eta), error_sum_(mean.size()) {
    detail::require_positive(eta, "eta");
  }

  SnapCheck observe(const Point& cost, const Point& next_action) {
    ++n_;
    error_sum_ += mean_;
    error_sum_ -= cost;
    SnapCheck check;
    check.turn = n_;
    const double n = static_cast<double>(n_);
    const double err = max_abs(error_sum_) / n;
    const std::size_t d = profile_.sorted_gaps.size();
    for (std::size_t j = 1; j < d; ++j) {
      const double gap = profile_.sorted_gaps[j];
      if (!(gap > 0.0)) continue;
      if (j > 1 && gap == profile_.sorted_gaps[j - 1]) continue;
      if (n >= 9.0 / (gap * gap * eta_ * eta_) && err <= gap / 3.0) {
        check.hypothesis_holds = true;
        check.level = j;
        check.conclusion_holds = true;
        for (std::size_t l = j; l < d; ++l) {
          if (next_action[profile_.permutation[l]] > kZeroTolerance) check.conclusion_holds = false;
        }
        break;
      }
    }
    if (check.hypothesis_holds) {
      ++summary_.hypothesis_turns;
      if (!check.conclusion_holds) ++summary_.violations;
    }
    const bool at_best = next_action[profile_.permutation.front()] >= 1.0 - kZeroTolerance;
    if (at_best) {
      if (!summary_.snap_turn) summary_.snap_turn = n_;
    } else {
      summary_.snap_turn.reset();
    }
    return check;
  }

  const SnapSummary& summary() const noexcept { return summary_; }
  const GapProfile& profile() const noexcept { return profile_; }

 private:
  Point mean_;
  GapProfile profile_;
  double eta_;
  Point error_sum_;
  std::size_t n_ = 0;
  SnapSummary summary_;
};

/// Snap checks for every turn n = 1..N-1 of a per-turn simplex record.
inline std::vector<SnapCheck> snap_certificate(const RunRecord& record, const GapProfile& profile,
                                               double eta) {
  if (!record.mean) throw Unsupported("snap certificate needs a stochastic run with known mean");
  if (!record.domain.is_simplex()) throw Unsupported("snap certificate is defined on the simplex");
  if (record.turns.size() != record.horizon()) {
    throw Unsupported("snap certificate needs a per-turn record");
  }
  SnapCertifier certifier(*record.mean, eta);
  if (certifier.profile().permutation != profile.permutation) {
    throw InvalidInput("gap profile does not belong to the record's mean");
  }
  std::vector<SnapCheck> checks;
  for (std::size_t i = 0; i + 1 < record.turns.size(); ++i) {
    checks.push_back(certifier.observe(record.turns[i].cost, record.turns[i + 1].action));
  }
  return checks;
}

/// Least-squares slope of log(value) against log(turn) over turns in
/// [window_lo, window_hi].
inline double fit_loglog_slope(std::span<const std::size_t> turns, std::span<const double> values,
                               std::size_t window_lo, std::size_t window_hi) {
  if (turns.size() != values.size()) throw InvalidInput("slope fit needs paired data");
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < turns.size(); ++i) {
    if (turns[i] < window_lo || turns[i] > window_hi) continue;
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
      throw InvalidInput("slope fit needs positive values inside the window");
    }
    pts.emplace_back(std::log(static_cast<double>(turns[i])), std::log(values[i]));
  }
  if (pts.size() < 3) throw InsufficientData("slope fit needs at least 3 points in the window");
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto& [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  if (sxx == 0.0) throw InsufficientData("slope fit needs at least two distinct turns");
  return sxy / sxx;
}

}  // namespace subgrad
