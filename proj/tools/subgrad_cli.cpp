// Command-line front end: experiments, bound calculators and projections.
//
// Exit status: 0 on success, 2 for malformed or invalid arguments, 1 for
// failures while running. Results go to stdout (or --out); diagnostics to
// stderr.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "subgrad/subgrad.hpp"

namespace {

using subgrad::ConfigMap;

constexpr int kUsageError = 2;
constexpr int kRuntimeError = 1;

/// Flags shared by `run` and `sweep`, collected as raw config values.
struct ExperimentFlags {
  std::string config_path;
  std::map<std::string, std::string> values;
  std::string out;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "Key-value experiment file")->check(CLI::ExistingFile);
    add(cmd, "--algorithm", "algorithm", "lazy | greedy | ftl (default lazy)");
    add(cmd, "--domain", "domain", "simplex | interval | box | curved (default simplex)");
    add(cmd, "--model", "model", "sphere | curved-example | greedy-example | scripted");
    add(cmd, "--mean", "mean", "Mean cost vector, comma separated");
    add(cmd, "--R", "R", "Sphere-noise radius (default 0)");
    add(cmd, "--d", "d", "Dimension; must agree with --mean");
    add(cmd, "--alpha", "alpha", "Curved-domain exponent, > 2 (default 3)");
    add(cmd, "--lo", "lo", "Interval or box lower bound");
    add(cmd, "--hi", "hi", "Interval or box upper bound");
    add(cmd, "--costs", "costs", "Scripted cost file");
    add(cmd, "--eta", "eta", "Step parameter (default 1)");
    add(cmd, "--N", "N", "Horizon in turns (default 500)");
    add(cmd, "--trials", "trials", "Number of trials (default 1)");
    add(cmd, "--seed", "seed", "Random seed (default 0)");
    add(cmd, "--record-level", "record_level", "summary | per_turn (default summary)");
    add(cmd, "--workers", "workers", "Worker threads; 0 = hardware (default 0)");
    cmd->add_option("--out", out, "Write the CSV here instead of stdout");
  }

  void add(CLI::App* cmd, const std::string& flag, const std::string& key, const std::string& help) {
    cmd->add_option_function<std::string>(
        flag, [this, key](const std::string& v) { values[key] = v; }, help);
  }

  ConfigMap merged() const {
    ConfigMap map;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw subgrad::FileError(config_path, "cannot open for reading");
      map = subgrad::parse_config(in);
    }
    for (const auto& [k, v] : values) map[k] = v;
    return map;
  }
};

void emit(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
  } else {
    subgrad::write_file(out, text);
  }
}

void print_kv(const std::string& key, double value) {
  std::cout << key << '=' << subgrad::format_number(value) << '\n';
}

subgrad::ConvexDomain domain_from_flags(const std::string& name, std::size_t dim, double alpha,
                                        const std::string& lo, const std::string& hi) {
  if (name == "simplex") return subgrad::ConvexDomain::simplex(dim);
  if (name == "zero-sum") return subgrad::ConvexDomain::zero_sum(dim);
  if (name == "curved") return subgrad::ConvexDomain::curved(alpha);
  if (name == "interval" || name == "box") {
    subgrad::Point l = lo.empty() ? subgrad::Point(dim, -1.0) : subgrad::parse_point(lo);
    subgrad::Point h = hi.empty() ? subgrad::Point(dim, 1.0) : subgrad::parse_point(hi);
    return subgrad::ConvexDomain::box(std::move(l), std::move(h));
  }
  throw subgrad::ConfigError("domain must be simplex, zero-sum, interval, box or curved");
}

std::vector<double> parse_list(const std::string& text) {
  return subgrad::parse_point(text).values();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lazy anytime subgradient: experiments, bounds and projections"};
  app.require_subcommand(1);

  ExperimentFlags run_flags;
  auto* run = app.add_subcommand("run", "Run a Monte-Carlo experiment and print a CSV table");
  run_flags.attach(run);

  ExperimentFlags sweep_flags;
  std::string radii;
  auto* sweep = app.add_subcommand("sweep", "Final pseudo-regret per trial across noise radii");
  sweep_flags.attach(sweep);
  sweep->add_option("--R-values", radii, "Comma-separated noise radii")->required();

  std::string scenario = "curved";
  double growth_alpha = 3.0;
  std::string horizons = "1000,3000,10000,30000,100000";
  std::size_t growth_trials = 200;
  std::uint64_t growth_seed = 0;
  unsigned growth_workers = 0;
  std::optional<std::size_t> window_lo;
  std::optional<std::size_t> window_hi;
  std::string growth_out;
  auto* growth = app.add_subcommand("growth", "Counterexample growth study with log-log slope");
  growth->add_option("--scenario", scenario, "curved | greedy | lazy-simplex")
      ->check(CLI::IsMember({"curved", "greedy", "lazy-simplex"}));
  growth->add_option("--alpha", growth_alpha, "Curved-domain exponent");
  growth->add_option("--horizons", horizons, "Ascending comma-separated horizons");
  growth->add_option("--trials", growth_trials, "Trials")->check(CLI::PositiveNumber);
  growth->add_option("--seed", growth_seed, "Random seed");
  growth->add_option("--workers", growth_workers, "Worker threads; 0 = hardware");
  growth->add_option("--window-lo", window_lo, "Slope window start (default max/10)");
  growth->add_option("--window-hi", window_hi, "Slope window end (default max)");
  growth->add_option("--out", growth_out, "Write the CSV here instead of stdout");

  double L2 = 0.0;
  std::optional<double> R2;
  std::optional<double> gap;
  double eta = 1.0;
  std::optional<std::size_t> horizon;
  double diameter = std::sqrt(2.0);
  double max_norm = 1.0;
  std::optional<double> t;
  bool proof_variant = false;
  auto* bounds = app.add_subcommand("bounds", "Evaluate the regret, pseudo-regret and tail bounds");
  bounds->add_option("--L2", L2, "Bound on ||a_n||")->required();
  bounds->add_option("--R2", R2, "Bound on ||a_n - a||");
  bounds->add_option("--gap", gap, "Smallest positive suboptimality gap");
  bounds->add_option("--eta", eta, "Step parameter (default 1)");
  bounds->add_option("--N", horizon, "Horizon for the adversarial bound");
  bounds->add_option("--D", diameter, "Domain diameter (default sqrt 2, the simplex)");
  bounds->add_option("--maxnorm", max_norm, "Largest norm in the domain (default 1)");
  bounds->add_option("--t", t, "Tail-bound parameter");
  bounds->add_flag("--proof-variant", proof_variant, "Use ||X||^2/eta in the adversarial bound");

  std::string proj_domain = "simplex";
  std::string point;
  double proj_alpha = 3.0;
  std::string proj_lo;
  std::string proj_hi;
  auto* project = app.add_subcommand("project", "Print the Euclidean projection of a point");
  project->add_option("--domain", proj_domain, "simplex | zero-sum | interval | box | curved");
  project->add_option("--point", point, "Comma-separated point")->required();
  project->add_option("--alpha", proj_alpha, "Curved-domain exponent");
  project->add_option("--lo", proj_lo, "Box lower bound (default -1 per axis)");
  project->add_option("--hi", proj_hi, "Box upper bound (default 1 per axis)");

  std::string gap_mean;
  auto* gaps_cmd = app.add_subcommand("gaps", "Print the gap profile of a mean cost vector");
  gaps_cmd->add_option("--mean", gap_mean, "Comma-separated mean vector")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kUsageError;
  }

  // Argument validation happens before any work and maps to exit status 2.
  try {
    if (*run) {
      const auto config = subgrad::build_config(run_flags.merged());
      const auto result = subgrad::run_monte_carlo(config);
      std::ostringstream text;
      if (config.record_level == subgrad::RecordLevel::kPerTurn) {
        subgrad::write_per_turn_csv(text, result);
      } else {
        subgrad::write_summary_csv(text, result);
      }
      emit(run_flags.out, text.str());
    } else if (*sweep) {
      const auto config = subgrad::build_config(sweep_flags.merged());
      std::vector<double> values;
      try {
        values = parse_list(radii);
      } catch (const subgrad::InvalidInput& e) {
        throw subgrad::ConfigError(std::string("--R-values: ") + e.what());
      }
      for (double R : values) {
        if (R < 0.0) throw subgrad::ConfigError("--R-values must be >= 0");
      }
      std::ostringstream text;
      subgrad::write_sweep_csv(text, subgrad::sweep_noise(config, values));
      emit(sweep_flags.out, text.str());
    } else if (*growth) {
      std::vector<std::size_t> hs;
      for (double h : parse_list(horizons)) {
        if (h < 1 || h != std::floor(h)) throw subgrad::ConfigError("horizons must be positive integers");
        hs.push_back(static_cast<std::size_t>(h));
      }
      const auto kind = scenario == "curved"   ? subgrad::GrowthScenario::kCurved
                        : scenario == "greedy" ? subgrad::GrowthScenario::kGreedyScalar
                                               : subgrad::GrowthScenario::kLazySimplex;
      auto config = subgrad::growth_config(kind, growth_alpha, growth_trials, growth_seed);
      config.workers = growth_workers;
      std::optional<std::pair<std::size_t, std::size_t>> window;
      if (window_lo || window_hi) {
        window = {window_lo.value_or(std::max<std::size_t>(1, hs.back() / 10)),
                  window_hi.value_or(hs.back())};
      }
      std::ostringstream text;
      subgrad::write_growth_csv(text, subgrad::growth_study(config, hs, window));
      emit(growth_out, text.str());
    } else if (*bounds) {
      if (horizon) {
        const auto b = subgrad::bound_adversarial(
            L2, *horizon, eta, diameter, max_norm,
            proof_variant ? subgrad::AdversarialForm::kProofVariant
                          : subgrad::AdversarialForm::kStatement);
        print_kv("adversarial_bound", b.value);
        if (b.simplex_value) print_kv("adversarial_bound_simplex", *b.simplex_value);
      }
      if (gap) {
        const auto p = subgrad::bound_pseudo_regret(L2, R2.value_or(0.0), *gap, eta);
        print_kv("pseudo_regret_bound", p.value);
        if (p.special_value) print_kv("pseudo_regret_bound_special", *p.special_value);
        if (t) {
          const auto tb = subgrad::bound_tail(L2, R2.value_or(0.0), *gap, eta, *t);
          print_kv("tail_threshold", tb.threshold);
          print_kv("tail_probability_bound", tb.probability);
          print_kv("tail_validity_floor", tb.validity_floor);
          std::cout << "tail_valid=" << (tb.valid ? "true" : "false") << '\n';
        }
      }
      if (!horizon && !gap) throw subgrad::ConfigError("bounds needs --N and/or --gap");
    } else if (*project) {
      const subgrad::Point w = subgrad::parse_point(point);
      const auto domain = domain_from_flags(proj_domain, w.size(), proj_alpha, proj_lo, proj_hi);
      std::cout << subgrad::format_point(domain.project(w)) << '\n';
    } else if (*gaps_cmd) {
      const auto g = subgrad::gaps(subgrad::parse_point(gap_mean));
      std::cout << "sorted_gaps=" << subgrad::format_point(subgrad::Point(g.sorted_gaps)) << '\n';
      std::cout << "permutation=";
      for (std::size_t j = 0; j < g.permutation.size(); ++j) {
        std::cout << (j ? "," : "") << g.permutation[j];
      }
      std::cout << '\n';
      std::cout << "min_positive_gap="
                << (g.min_positive_gap ? subgrad::format_number(*g.min_positive_gap) : "undefined")
                << '\n';
    }
  } catch (const subgrad::FileError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  } catch (const subgrad::TrialError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  } catch (const subgrad::Error& e) {
    // Anything the library rejects before running is an argument problem.
    std::cerr << "error: " << e.what() << '\n';
    std::cerr << "run '" << argv[0] << " --help' for usage\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return 0;
}
