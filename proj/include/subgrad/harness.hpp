#pragma once

// Experiment orchestration: seeded trials, Monte-Carlo aggregation, noise
// sweeps and counterexample growth studies.
//
// Every trial owns its learner and its RngStream(seed, trial index), and
// results are merged by trial index, so outputs do not depend on the number
// of workers.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "subgrad/algorithms.hpp"
#include "subgrad/costs.hpp"
#include "subgrad/errors.hpp"
#include "subgrad/geometry.hpp"
#include "subgrad/metrics.hpp"
#include "subgrad/parallel.hpp"
#include "subgrad/point.hpp"
#include "subgrad/record.hpp"

namespace subgrad {

enum class Algorithm { kLazy, kGreedy, kFtl };

enum class RecordLevel { kSummary, kPerTurn };

inline std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kLazy:
      return "lazy";
    case Algorithm::kGreedy:
      return "greedy";
    case Algorithm::kFtl:
      return "ftl";
  }
  return "?";
}

struct ExperimentConfig {
  Algorithm algorithm = Algorithm::kLazy;
  ConvexDomain domain = ConvexDomain::simplex(2);
  CostModel model = CostModel::sphere_noise(Point{0.0, 1.0}, 0.0);
  double eta = 1.0;
  std::size_t horizon = 500;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  RecordLevel record_level = RecordLevel::kSummary;
  unsigned workers = 0;  ///< 0 picks the hardware concurrency
};

inline void validate(const ExperimentConfig& config) {
  if (config.horizon < 1) throw InvalidParameter("horizon N must be >= 1");
  if (config.trials < 1) throw InvalidParameter("trials must be >= 1");
  detail::require_step_parameter(config.eta);
  if (config.model.dimension() != config.domain.dimension()) {
    throw InvalidInput("cost dimension " + std::to_string(config.model.dimension()) +
                       " does not match domain dimension " +
                       std::to_string(config.domain.dimension()));
  }
  if (config.algorithm == Algorithm::kFtl && !config.domain.is_simplex()) {
    throw Unsupported("follow-the-leader runs only on the simplex");
  }
  if (std::holds_alternative<ZeroSumDomain>(config.domain.kind())) {
    throw Unsupported("experiments need a bounded domain");
  }
  if (const auto len = config.model.length(); len && *len < config.horizon) {
    throw InvalidInput("scripted stream has " + std::to_string(*len) + " costs, horizon is " +
                       std::to_string(config.horizon));
  }
}

namespace detail {

/// Uniform facade over the three learners.
class Learner {
 public:
  Learner(Algorithm algorithm, const ConvexDomain& domain, double eta)
      : impl_(make(algorithm, domain, eta)) {}

  const Point& action() const {
    return std::visit([](const auto& l) -> const Point& { return l.action(); }, impl_);
  }

  const Point& step(const Point& cost) {
    return std::visit([&](auto& l) -> const Point& { return l.step(cost); }, impl_);
  }

  std::optional<Point> unprojected() const {
    return std::visit(
        [](const auto& l) -> std::optional<Point> {
          using L = std::decay_t<decltype(l)>;
          if constexpr (std::is_same_v<L, FollowTheLeader>) {
            return std::nullopt;
          } else {
            if (l.turn() == 1) return std::nullopt;
            return l.unprojected();
          }
        },
        impl_);
  }

 private:
  using Impl = std::variant<LazySubgradient, GreedySubgradient, FollowTheLeader>;

  static Impl make(Algorithm algorithm, const ConvexDomain& domain, double eta) {
    switch (algorithm) {
      case Algorithm::kLazy:
        return LazySubgradient(domain, eta);
      case Algorithm::kGreedy:
        return GreedySubgradient(domain, eta);
      case Algorithm::kFtl:
        return FollowTheLeader(domain);
    }
    throw InvalidParameter("unknown algorithm");
  }

  Impl impl_;
};

}  // namespace detail

/// Plays the configured learner against the configured stream for N turns.
/// Deterministic in (config, trial_index).
inline RunRecord run_trial(const ExperimentConfig& config, std::size_t trial_index) {
  validate(config);
  const std::size_t N = config.horizon;
  CostStream stream(config.model, RngStream(config.seed, trial_index));
  detail::Learner learner(config.algorithm, config.domain, config.eta);

  RunRecord record;
  record.trial = trial_index;
  record.eta = config.eta;
  record.domain = config.domain;
  record.mean = config.model.mean();
  record.instant.reserve(N);
  if (config.record_level == RecordLevel::kPerTurn) record.turns.reserve(N);

  std::optional<double> best_mean_cost;
  if (record.mean) best_mean_cost = dot(*record.mean, config.domain.minimize_linear(*record.mean));

  std::optional<SnapCertifier> certifier;
  if (config.algorithm == Algorithm::kLazy && config.domain.is_simplex() && record.mean) {
    certifier.emplace(*record.mean, config.eta);
  }

  std::vector<Point> hindsight_costs;
  Point total(config.domain.dimension());
  double paid = 0.0;

  for (std::size_t n = 1; n <= N; ++n) {
    const Point& action = learner.action();
    Point cost = stream.next();
    record.max_cost_norm = std::max(record.max_cost_norm, norm(cost));
    paid += dot(cost, action);
    total += cost;
    if (best_mean_cost) {
      record.instant.push_back(dot(*record.mean, action) - *best_mean_cost);
    } else {
      record.instant.push_back(dot(cost, action));
      hindsight_costs.push_back(cost);
    }
    if (config.record_level == RecordLevel::kPerTurn) {
      record.turns.push_back(TurnEntry{cost, learner.unprojected(), action});
    }
    if (n < N) {
      const Point& next = learner.step(cost);
      if (certifier) certifier->observe(cost, next);
    }
  }

  const Point comparator = config.domain.minimize_linear(total);
  record.regret = paid - dot(total, comparator);
  if (!best_mean_cost) {
    for (std::size_t i = 0; i < N; ++i) record.instant[i] -= dot(hindsight_costs[i], comparator);
  }
  if (certifier) record.snap = certifier->summary();
  return record;
}

/// Cross-trial aggregate of cumulative pseudo-regret (or regret) curves.
struct AggregateResult {
  std::vector<double> mean;
  std::vector<double> quantile05;
  std::vector<double> median;
  std::vector<double> quantile95;
  std::vector<double> finals;  ///< final cumulative value of each trial, by index
  std::vector<double> regrets;  ///< hindsight regret of each trial, by index
  std::vector<SnapSummary> snaps;  ///< per trial, when certified
  /// Per-trial instantaneous terms; kept only at the per-turn record level.
  std::vector<std::vector<double>> instants;
  double wall_seconds = 0.0;

  std::size_t horizon() const noexcept { return mean.size(); }
  std::size_t trials() const noexcept { return finals.size(); }

  double final_mean() const { return mean.empty() ? 0.0 : mean.back(); }

  /// Standard error of the mean final value.
  double final_standard_error() const {
    const std::size_t k = finals.size();
    if (k < 2) return 0.0;
    double m = 0.0;
    for (double v : finals) m += v;
    m /= static_cast<double>(k);
    double ss = 0.0;
    for (double v : finals) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(k - 1) / static_cast<double>(k));
  }
};

/// Linear-interpolation quantile of sorted data.
inline double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

/// Runs all trials and aggregates them per turn, in trial-index order.
inline AggregateResult run_monte_carlo(const ExperimentConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  const std::size_t K = config.trials;
  const std::size_t N = config.horizon;

  std::vector<std::vector<double>> curves(K);
  std::vector<double> regrets(K);
  std::vector<std::optional<SnapSummary>> snaps(K);
  const bool keep_instants = config.record_level == RecordLevel::kPerTurn;
  std::vector<std::vector<double>> instants(keep_instants ? K : 0);
  parallel_for(K, config.workers, [&](std::size_t k) {
    RunRecord r = run_trial(config, k);
    if (keep_instants) instants[k] = r.instant;
    double c = 0.0;
    for (double& v : r.instant) {
      c += v;
      v = c;
    }
    curves[k] = std::move(r.instant);
    regrets[k] = r.regret;
    snaps[k] = r.snap;
  });

  AggregateResult out;
  out.mean.resize(N);
  out.quantile05.resize(N);
  out.median.resize(N);
  out.quantile95.resize(N);
  std::vector<double> column(K);
  for (std::size_t n = 0; n < N; ++n) {
    double s = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      column[k] = curves[k][n];
      s += column[k];
    }
    out.mean[n] = s / static_cast<double>(K);
    std::sort(column.begin(), column.end());
    out.quantile05[n] = quantile_sorted(column, 0.05);
    out.median[n] = quantile_sorted(column, 0.5);
    out.quantile95[n] = quantile_sorted(column, 0.95);
  }
  out.finals.reserve(K);
  for (const auto& c : curves) out.finals.push_back(c.back());
  out.regrets = std::move(regrets);
  for (const auto& s : snaps) {
    if (s) out.snaps.push_back(*s);
  }
  out.instants = std::move(instants);
  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

struct SweepRow {
  double R = 0.0;
  std::size_t trial = 0;
  double final_pseudo_regret = 0.0;
};

/// For each noise radius, reruns the base sphere-noise experiment and reports
/// every trial's final cumulative pseudo-regret.
inline std::vector<SweepRow> sweep_noise(const ExperimentConfig& base,
                                         const std::vector<double>& radii) {
  const auto* noise = std::get_if<SphereNoise>(&base.model.kind());
  if (noise == nullptr) throw Unsupported("noise sweeps need a sphere-noise cost model");
  std::vector<SweepRow> rows;
  for (double R : radii) {
    ExperimentConfig config = base;
    config.model = CostModel::sphere_noise(noise->mean, R);
    config.record_level = RecordLevel::kSummary;
    const AggregateResult result = run_monte_carlo(config);
    for (std::size_t k = 0; k < result.finals.size(); ++k) {
      rows.push_back(SweepRow{R, k, result.finals[k]});
    }
  }
  return rows;
}

enum class GrowthScenario {
  kCurved,        ///< lazy on the curved region, costs (+-1, 1)
  kGreedyScalar,  ///< greedy on [-1, 1], costs +1 w.p. 3/4, -1 w.p. 1/4
  kLazySimplex,   ///< lazy on the 2-simplex with the lifted scalar costs (c, -c)
};

/// Preset configurations for the counterexample growth studies (eta = 1).
inline ExperimentConfig growth_config(GrowthScenario scenario, double alpha, std::size_t trials,
                                      std::uint64_t seed) {
  ExperimentConfig config;
  config.eta = 1.0;
  config.trials = trials;
  config.seed = seed;
  switch (scenario) {
    case GrowthScenario::kCurved:
      config.algorithm = Algorithm::kLazy;
      config.domain = ConvexDomain::curved(alpha);
      config.model = CostModel::curved_example();
      break;
    case GrowthScenario::kGreedyScalar:
      config.algorithm = Algorithm::kGreedy;
      config.domain = ConvexDomain::interval(-1.0, 1.0);
      config.model = CostModel::greedy_example(false);
      break;
    case GrowthScenario::kLazySimplex:
      config.algorithm = Algorithm::kLazy;
      config.domain = ConvexDomain::simplex(2);
      config.model = CostModel::greedy_example(true);
      break;
  }
  return config;
}

struct GrowthResult {
  std::vector<std::size_t> horizons;
  std::vector<double> mean;            ///< mean cumulative pseudo-regret at each horizon
  std::vector<double> standard_error;  ///< of that mean
  double slope = 0.0;
  std::size_t window_lo = 0;
  std::size_t window_hi = 0;
};

/// Mean cumulative pseudo-regret at each horizon and its log-log slope over
/// [window_lo, window_hi] (default: the largest decade, [max/10, max]).
/// One run per trial to the largest horizon; checkpoints are read off it.
inline GrowthResult growth_study(ExperimentConfig config, std::vector<std::size_t> horizons,
                                 std::optional<std::pair<std::size_t, std::size_t>> window = {}) {
  if (horizons.empty()) throw InvalidInput("growth study needs horizons");
  if (!std::is_sorted(horizons.begin(), horizons.end()) || horizons.front() < 1) {
    throw InvalidInput("horizons must be ascending and positive");
  }
  if (!config.model.mean()) throw Unsupported("growth study needs a stochastic cost model");
  config.horizon = horizons.back();
  config.record_level = RecordLevel::kSummary;
  validate(config);

  const std::size_t K = config.trials;
  const std::size_t H = horizons.size();
  std::vector<std::vector<double>> at(K);
  parallel_for(K, config.workers, [&](std::size_t k) {
    const RunRecord r = run_trial(config, k);
    std::vector<double> values(H);
    double c = 0.0;
    std::size_t h = 0;
    for (std::size_t n = 1; n <= r.instant.size() && h < H; ++n) {
      c += r.instant[n - 1];
      while (h < H && horizons[h] == n) values[h++] = c;
    }
    at[k] = std::move(values);
  });

  GrowthResult out;
  out.horizons = horizons;
  out.mean.assign(H, 0.0);
  out.standard_error.assign(H, 0.0);
  for (std::size_t h = 0; h < H; ++h) {
    double m = 0.0;
    for (std::size_t k = 0; k < K; ++k) m += at[k][h];
    m /= static_cast<double>(K);
    double ss = 0.0;
    for (std::size_t k = 0; k < K; ++k) ss += (at[k][h] - m) * (at[k][h] - m);
    out.mean[h] = m;
    out.standard_error[h] =
        K > 1 ? std::sqrt(ss / static_cast<double>(K - 1) / static_cast<double>(K)) : 0.0;
  }
  out.window_lo = window ? window->first : std::max<std::size_t>(1, horizons.back() / 10);
  out.window_hi = window ? window->second : horizons.back();
  out.slope = fit_loglog_slope(out.horizons, out.mean, out.window_lo, out.window_hi);
  return out;
}

}  // namespace subgrad
