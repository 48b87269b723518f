// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. An optional argument names the CLI
// binary, which criterion 11 then also exercises end to end.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "subgrad/brute_force.hpp"
#include "subgrad/subgrad.hpp"

namespace {

using namespace subgrad;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

Point random_point(std::mt19937_64& gen, std::size_t d, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Point p(d);
  for (std::size_t i = 0; i < d; ++i) p[i] = u(gen);
  return p;
}

/// Largest violation of the constraints defining the domain.
double constraint_residual(const ConvexDomain& domain, const Point& p) {
  double r = 0.0;
  if (const auto* box = std::get_if<BoxDomain>(&domain.kind())) {
    for (std::size_t i = 0; i < p.size(); ++i) r = std::max({r, box->lo[i] - p[i], p[i] - box->hi[i]});
  } else if (const auto* curved = std::get_if<CurvedDomain>(&domain.kind())) {
    r = std::max({0.0, std::pow(std::abs(p[0]), curved->alpha) - p[1], p[1] - 1.0});
  } else if (domain.is_simplex()) {
    r = std::abs(sum(p) - 1.0);
    for (double v : p.values()) r = std::max(r, -v);
  } else {
    r = std::abs(sum(p));
  }
  return r;
}

Outcome projection_oracle() {
  std::mt19937_64 gen(101);
  std::vector<ConvexDomain> domains{ConvexDomain::simplex(2), ConvexDomain::simplex(3),
                                    ConvexDomain::simplex(5), ConvexDomain::curved(2.5),
                                    ConvexDomain::curved(3.0), ConvexDomain::curved(5.0),
                                    ConvexDomain::interval(-1.0, 1.0),
                                    ConvexDomain::box(Point{-1.0, 0.0, -2.0}, Point{1.0, 0.5, 3.0})};
  double worst_gap = 0.0;
  double worst_residual = 0.0;
  for (const auto& domain : domains) {
    for (int i = 0; i < 1000; ++i) {
      const Point w = random_point(gen, domain.dimension(), 3.0);
      const Point p = domain.project(w);
      worst_gap = std::max(worst_gap, max_abs(p - brute_force_project(domain, w, 1e-4)));
      worst_residual = std::max(worst_residual, constraint_residual(domain, p));
    }
  }
  return {worst_gap <= 1e-3 && worst_residual <= 1e-12,
          "max oracle gap " + fmt(worst_gap) + ", max residual " + fmt(worst_residual)};
}

Outcome gap_zeroes_coordinate() {
  std::mt19937_64 gen(102);
  std::uniform_real_distribution<double> extra(0.0, 2.0);
  std::size_t failures = 0;
  for (int i = 0; i < 10000; ++i) {
    const std::size_t d = 2 + static_cast<std::size_t>(gen() % 15);
    Point w = random_point(gen, d, 5.0);
    const std::size_t hi = gen() % d;
    std::size_t lo = gen() % (d - 1);
    if (lo >= hi) ++lo;
    w[lo] = w[hi] - 1.0 - extra(gen);
    if (project_simplex(w)[lo] > 1e-12) ++failures;
  }
  return {failures == 0, std::to_string(failures) + " failures in 10000 instances"};
}

Outcome factorization() {
  std::mt19937_64 gen(103);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Point w = random_point(gen, 2 + static_cast<std::size_t>(gen() % 19), 10.0);
    worst = std::max(worst, max_abs(project_simplex(w) - project_simplex(project_zero_sum(w))));
  }
  return {worst <= 1e-10, "max deviation " + fmt(worst)};
}

Outcome pathwise_regret() {
  std::mt19937_64 gen(104);
  std::size_t violations = 0;
  double worst_ratio = 0.0;
  for (int s = 0; s < 100; ++s) {
    const std::size_t d = 2 + static_cast<std::size_t>(gen() % 15);
    const std::size_t N = 1 + static_cast<std::size_t>(gen() % 10000);
    const double scale = std::exp(std::uniform_real_distribution<double>(-3.0, 3.0)(gen));
    std::vector<Point> costs;
    costs.reserve(N);
    double L = 0.0;
    // Alternate between i.i.d. noise and a drifting adversarial pattern.
    const bool drifting = s % 2 == 1;
    for (std::size_t n = 0; n < N; ++n) {
      Point c = random_point(gen, d, scale);
      if (drifting) c[(n / 97) % d] -= scale;
      L = std::max(L, norm(c));
      costs.push_back(std::move(c));
    }
    LazySubgradient lazy(ConvexDomain::simplex(d), 1.0 / (2.0 * L));
    std::vector<Point> actions;
    actions.reserve(N);
    actions.push_back(lazy.action());
    for (std::size_t n = 0; n + 1 < N; ++n) actions.push_back(lazy.step(costs[n]));
    const double measured = regret(costs, actions, ConvexDomain::simplex(d));
    const double bound = std::sqrt(2.0) * L + 2.0 * L * std::sqrt(static_cast<double>(N));
    if (measured > bound) ++violations;
    worst_ratio = std::max(worst_ratio, measured / bound);
  }
  return {violations == 0, std::to_string(violations) + " violations, max regret/bound " +
                               fmt(worst_ratio)};
}

ExperimentConfig noisy_simplex(double R, std::size_t N, std::size_t trials, std::uint64_t seed) {
  ExperimentConfig c;
  c.domain = ConvexDomain::simplex(2);
  c.model = CostModel::sphere_noise(Point{0.0, 1.0}, R);
  c.eta = 1.0;
  c.horizon = N;
  c.trials = trials;
  c.seed = seed;
  return c;
}

const AggregateResult& stochastic_run() {
  static const AggregateResult result = run_monte_carlo(noisy_simplex(10.0, 500, 100, 105));
  return result;
}

Outcome stochastic_pseudo_regret() {
  const AggregateResult& r = stochastic_run();
  const double bound = bound_pseudo_regret(11.0, 10.0, 1.0, 1.0).value;
  const double upper = r.final_mean() + 3.0 * r.final_standard_error();
  const double growth = r.mean[499] - r.mean[399];
  const double share = growth / r.final_mean();
  return {upper <= bound && share <= 0.01,
          "mean+3se " + fmt(upper) + " vs bound " + fmt(bound) + ", late growth share " +
              fmt(share)};
}

Outcome snap_certificate_holds() {
  const AggregateResult& r = stochastic_run();
  std::size_t hypothesis = 0, violations = 0;
  for (const SnapSummary& s : r.snaps) {
    hypothesis += s.hypothesis_turns;
    violations += s.violations;
  }
  return {r.snaps.size() == 100 && violations == 0,
          std::to_string(violations) + " violations over " + std::to_string(hypothesis) +
              " certified turns"};
}

const std::vector<std::size_t> kHorizons{1000, 3000, 10000, 30000, 100000};

Outcome curved_growth() {
  const auto g = growth_study(growth_config(GrowthScenario::kCurved, 3.0, 200, 107), kHorizons);
  return {g.slope >= 0.15 && g.slope <= 0.35,
          "slope " + fmt(g.slope) + " over [" + std::to_string(g.window_lo) + ", " +
              std::to_string(g.window_hi) + "]"};
}

Outcome greedy_growth() {
  const auto greedy =
      growth_study(growth_config(GrowthScenario::kGreedyScalar, 0.0, 200, 108), kHorizons);
  const auto lazy = growth_study(growth_config(GrowthScenario::kLazySimplex, 0.0, 200, 108),
                                 {1000, 3000, 10000}, std::pair<std::size_t, std::size_t>{1000, 10000});
  return {greedy.slope >= 0.4 && greedy.slope <= 0.6 && lazy.slope <= 0.05,
          "greedy slope " + fmt(greedy.slope) + ", lazy slope " + fmt(lazy.slope)};
}

Outcome tail_exceedance() {
  const AggregateResult r = run_monte_carlo(noisy_simplex(1.0, 1000, 10000, 109));
  const double L = 2.0;  // ||a|| + R bounds every cost norm
  bool pass = true;
  std::string detail;
  for (double t : {50.0, 75.0, 100.0}) {
    const TailBound b = bound_tail(L, 1.0, 1.0, 1.0, t);
    const auto over = std::count_if(r.finals.begin(), r.finals.end(),
                                    [&](double v) { return v > b.threshold; });
    const double fraction = static_cast<double>(over) / static_cast<double>(r.finals.size());
    pass = pass && b.valid && fraction <= b.probability;
    detail += "t=" + fmt(t) + ": " + fmt(fraction) + " <= " + fmt(b.probability) + "; ";
  }
  detail += "floor " + fmt(bound_tail(L, 1.0, 1.0, 1.0, 50.0).validity_floor);
  return {pass, detail};
}

Outcome calculators() {
  // Hand evaluations: sqrt(2) + 20, 2 + 18 + 72, and 3 (2 + sqrt(2) + sqrt(2)/3)^2.
  const double adversarial = std::sqrt(2.0) + 20.0;
  const double special = 92.0;
  const double s = 2.0 + std::sqrt(2.0) + std::sqrt(2.0) / 3.0;
  const double floor = 3.0 * s * s;
  const auto a = bound_adversarial(1.0, 100, 0.5, std::sqrt(2.0), 1.0);
  const auto p = bound_pseudo_regret(1.0, 1.0, 1.0, 0.5);
  const auto t = bound_tail(1.0, 1.0, 1.0, 1.0, 50.0);
  const double err = std::max({std::abs(a.value - adversarial),
                               std::abs(a.simplex_value.value_or(NAN) - adversarial),
                               std::abs(p.special_value.value_or(NAN) - special),
                               std::abs(t.validity_floor - floor)});
  return {err <= 1e-9, "max deviation " + fmt(err) + " (floor " + fmt(t.validity_floor) + ")"};
}

std::string run_csv(ExperimentConfig c, unsigned workers) {
  c.workers = workers;
  std::ostringstream out;
  write_per_turn_csv(out, run_monte_carlo(c));
  return out.str();
}

std::string sweep_csv(const ExperimentConfig& c, unsigned workers) {
  ExperimentConfig copy = c;
  copy.workers = workers;
  std::ostringstream out;
  write_sweep_csv(out, sweep_noise(copy, {0.0, 0.5, 2.0}));
  return out.str();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism(const std::string& cli) {
  ExperimentConfig c = noisy_simplex(2.0, 200, 12, 111);
  c.record_level = RecordLevel::kPerTurn;
  const std::string ref = run_csv(c, 1);
  bool same = run_csv(c, 1) == ref;
  for (unsigned w : {2u, 4u, 7u}) same = same && run_csv(c, w) == ref;
  const std::string sweep_ref = sweep_csv(c, 1);
  for (unsigned w : {1u, 3u}) same = same && sweep_csv(c, w) == sweep_ref;
  std::string detail = "library run/sweep CSV identical across workers 1-7";
  if (!cli.empty()) {
    const auto dir = std::filesystem::temp_directory_path() / "subgrad_acceptance";
    std::filesystem::create_directories(dir);
    std::vector<std::string> outputs;
    for (const char* verb : {"run", "sweep"}) {
      std::string first;
      for (const char* w : {"1", "1", "3"}) {
        const auto out = dir / (std::string(verb) + "_" + w + ".csv");
        std::string cmd = "\"" + cli + "\" " + verb + " --mean 0,1,1 --N 150 --trials 9 --seed 5 " +
                          "--workers " + w + " --out \"" + out.string() + "\"";
        cmd += std::string(verb) == "run" ? " --R 1.5" : " --R-values 0,1,3";
        const int rc = std::system(cmd.c_str());
        const std::string text = slurp(out);
        if (rc != 0 || text.empty()) same = false;
        if (first.empty()) first = text;
        same = same && text == first;
      }
    }
    std::filesystem::remove_all(dir);
    detail += "; CLI run/sweep outputs byte-identical";
  }
  return {same, detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria{
      {1, "projection oracle equivalence", 60, projection_oracle},
      {2, "gap of one zeroes the coordinate", 60, gap_zeroes_coordinate},
      {3, "simplex projection factors through zero-sum", 60, factorization},
      {4, "pathwise adversarial regret bound", 120, pathwise_regret},
      {5, "stochastic pseudo-regret below bound", 120, stochastic_pseudo_regret},
      {6, "snap certificate", 120, snap_certificate_holds},
      {7, "curved-domain growth slope", 600, curved_growth},
      {8, "greedy growth slope vs lazy", 600, greedy_growth},
      {9, "tail-bound exceedance", 300, tail_exceedance},
      {10, "bound calculators", 60, calculators},
      {11, "determinism across worker counts", 120, [&] { return determinism(cli); }},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_seconds;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::cout << (pass ? "PASS" : "FAIL") << "  " << c.id << ". " << c.name << ": " << o.detail
              << " [" << fmt(secs) << " s" << (in_time ? "" : ", over budget") << "]" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
