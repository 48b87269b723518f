#pragma once

// Flat key-value experiment configuration.
//
//   # comment
//   algorithm = lazy          lazy | greedy | ftl
//   domain = simplex          simplex | interval | box | curved
//   model = sphere            sphere | curved-example | greedy-example | scripted
//   mean = 0,1                sphere-noise mean vector
//   R = 10                    sphere-noise radius
//   d = 2                     optional; must agree with the mean
//   alpha = 3                 curved exponent
//   lo = -1 / hi = 1          interval or box bounds
//   costs = path.txt          scripted cost file
//   eta = 1, N = 500, trials = 100, seed = 7, record_level = summary | per_turn
//   workers = 0

#include <cstdint>
#include <istream>
#include <map>
#include <set>
#include <string>

#include "subgrad/costs.hpp"
#include "subgrad/errors.hpp"
#include "subgrad/harness.hpp"

namespace subgrad {

/// A configuration value that is missing, unknown or malformed.
class ConfigError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

using ConfigMap = std::map<std::string, std::string>;

inline const std::set<std::string>& config_keys() {
  static const std::set<std::string> keys{
      "algorithm", "domain", "model",  "mean",   "R",      "d",           "alpha", "lo",
      "hi",        "costs",  "eta",    "N",      "trials", "record_level", "seed", "workers"};
  return keys;
}

inline ConfigMap parse_config(std::istream& in) {
  ConfigMap map;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(detail::trim(body.substr(0, eq)));
    const std::string value(detail::trim(body.substr(eq + 1)));
    if (!config_keys().contains(key)) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    map[key] = value;
  }
  return map;
}

namespace detail {

inline double config_number(const ConfigMap& map, const std::string& key, double fallback) {
  const auto it = map.find(key);
  if (it == map.end()) return fallback;
  try {
    return parse_double(it->second);
  } catch (const InvalidInput&) {
    throw ConfigError(key + ": not a number: '" + it->second + "'");
  }
}

inline std::uint64_t config_count(const ConfigMap& map, const std::string& key,
                                  std::uint64_t fallback) {
  const auto it = map.find(key);
  if (it == map.end()) return fallback;
  const std::string& s = it->second;
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError(key + ": not a non-negative integer: '" + s + "'");
  }
  return v;
}

inline Point config_point(const ConfigMap& map, const std::string& key) {
  try {
    return parse_point(map.at(key));
  } catch (const InvalidInput&) {
    throw ConfigError(key + ": not a comma-separated vector: '" + map.at(key) + "'");
  }
}

}  // namespace detail

/// Builds and validates an experiment from configuration values.
/// Invalid or missing values raise ConfigError; an unreadable cost file
/// raises FileError.
inline ExperimentConfig build_config(const ConfigMap& map) {
  for (const auto& [key, value] : map) {
    if (!config_keys().contains(key)) throw ConfigError("unknown key '" + key + "'");
  }
  auto get = [&](const std::string& key, const std::string& fallback) {
    const auto it = map.find(key);
    return it == map.end() ? fallback : it->second;
  };

  ExperimentConfig config;
  const std::string algorithm = get("algorithm", "lazy");
  if (algorithm == "lazy") {
    config.algorithm = Algorithm::kLazy;
  } else if (algorithm == "greedy") {
    config.algorithm = Algorithm::kGreedy;
  } else if (algorithm == "ftl") {
    config.algorithm = Algorithm::kFtl;
  } else {
    throw ConfigError("algorithm must be lazy, greedy or ftl");
  }

  const std::string domain = get("domain", "simplex");
  std::string default_model = "sphere";
  if (domain == "curved") default_model = "curved-example";
  if (domain == "interval") default_model = "greedy-example";
  if (map.contains("costs")) default_model = "scripted";
  const std::string model = get("model", default_model);

  try {
    if (model == "sphere") {
      if (!map.contains("mean")) throw ConfigError("sphere-noise model needs a mean vector");
      const double R = detail::config_number(map, "R", 0.0);
      config.model = CostModel::sphere_noise(detail::config_point(map, "mean"), R);
    } else if (model == "curved-example") {
      config.model = CostModel::curved_example();
    } else if (model == "greedy-example") {
      config.model = CostModel::greedy_example(domain == "simplex");
    } else if (model == "scripted") {
      if (!map.contains("costs")) throw ConfigError("scripted model needs a costs file");
      config.model = CostModel::scripted(load_scripted_costs(map.at("costs")));
    } else {
      throw ConfigError("model must be sphere, curved-example, greedy-example or scripted");
    }

    std::size_t d = config.model.dimension();
    if (map.contains("d")) {
      const auto given = static_cast<std::size_t>(detail::config_count(map, "d", 0));
      if (given != d) {
        throw ConfigError("d = " + std::to_string(given) + " disagrees with cost dimension " +
                          std::to_string(d));
      }
    }

    if (domain == "simplex") {
      config.domain = ConvexDomain::simplex(d);
    } else if (domain == "interval") {
      config.domain = ConvexDomain::interval(detail::config_number(map, "lo", -1.0),
                                             detail::config_number(map, "hi", 1.0));
    } else if (domain == "box") {
      if (!map.contains("lo") || !map.contains("hi")) throw ConfigError("box needs lo and hi");
      config.domain =
          ConvexDomain::box(detail::config_point(map, "lo"), detail::config_point(map, "hi"));
    } else if (domain == "curved") {
      config.domain = ConvexDomain::curved(detail::config_number(map, "alpha", 3.0));
    } else {
      throw ConfigError("domain must be simplex, interval, box or curved");
    }

    config.eta = detail::config_number(map, "eta", 1.0);
    config.horizon = static_cast<std::size_t>(detail::config_count(map, "N", 500));
    config.trials = static_cast<std::size_t>(detail::config_count(map, "trials", 1));
    config.seed = detail::config_count(map, "seed", 0);
    config.workers = static_cast<unsigned>(detail::config_count(map, "workers", 0));
    const std::string level = get("record_level", "summary");
    if (level == "summary") {
      config.record_level = RecordLevel::kSummary;
    } else if (level == "per_turn") {
      config.record_level = RecordLevel::kPerTurn;
    } else {
      throw ConfigError("record_level must be summary or per_turn");
    }
    validate(config);
  } catch (const ConfigError&) {
    throw;
  } catch (const FileError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return config;
}

}  // namespace subgrad
