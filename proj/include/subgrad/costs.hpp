#pragma once

// Cost-vector streams: sphere noise around a mean, the two counterexample
// distributions, and scripted (file-backed) sequences.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <charconv>
#include <utility>
#include <variant>
#include <vector>

#include "subgrad/errors.hpp"
#include "subgrad/point.hpp"

namespace subgrad {

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Random stream owned by one trial. (seed, stream_id) fully determines the
/// sequence; distinct stream ids get decorrelated engine seeds.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : seed_(seed), stream_id_(stream_id), engine_(derive(seed, stream_id)) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  /// A fresh stream with the same seed and another id.
  RngStream fork(std::uint64_t stream_id) const { return RngStream(seed_, stream_id); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double normal() { return gaussian_(engine_); }

  bool bernoulli(double p) noexcept { return uniform() < p; }

 private:
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream_id) noexcept {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream_id + 0x632be59bd9b4e019ULL));
  }

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> gaussian_;
};

/// Uniform draw from the unit sphere in R^d: normalised standard normals.
inline Point sample_sphere(std::size_t d, RngStream& rng) {
  if (d < 2) throw InvalidParameter("sphere sampling needs d >= 2");
  Point v(d);
  double n2 = 0.0;
  while (n2 == 0.0) {
    for (std::size_t i = 0; i < d; ++i) v[i] = rng.normal();
    n2 = squared_norm(v);
  }
  const double inv = 1.0 / std::sqrt(n2);
  for (std::size_t i = 0; i < d; ++i) v[i] *= inv;
  return v;
}

/// a_n = mean + radius * N_n with N_n uniform on the unit sphere.
struct SphereNoise {
  Point mean;
  double radius = 0.0;
};

/// a_n = (B_n, 1) with B_n = +-1 equiprobable. Mean (0, 1).
struct CurvedExample {};

/// Scalar a_n = +1 w.p. 3/4 and -1 w.p. 1/4. Mean 1/2.
///
/// With `lifted` set the stream emits (c, -c) instead, the same problem posed
/// on the two-point simplex.
struct GreedyExample {
  bool lifted = false;
};

struct Scripted {
  std::vector<Point> costs;
};

/// Immutable description of a cost stream.
class CostModel {
 public:
  using Variant = std::variant<SphereNoise, CurvedExample, GreedyExample, Scripted>;

  static CostModel sphere_noise(Point mean, double radius) {
    if (mean.empty() || !mean.all_finite()) throw InvalidInput("sphere noise needs a finite mean");
    if (!(radius >= 0.0) || !std::isfinite(radius)) {
      throw InvalidParameter("noise radius must be finite and >= 0");
    }
    if (mean.size() < 2 && radius > 0.0) throw InvalidParameter("sphere noise needs d >= 2");
    return CostModel(SphereNoise{std::move(mean), radius});
  }

  static CostModel curved_example() { return CostModel(CurvedExample{}); }

  static CostModel greedy_example(bool lifted = false) { return CostModel(GreedyExample{lifted}); }

  static CostModel scripted(std::vector<Point> costs) {
    if (costs.empty()) throw InvalidInput("scripted stream is empty");
    for (const Point& c : costs) {
      costs.front().require_same_size(c);
      if (!c.all_finite()) throw InvalidInput("scripted cost has non-finite coordinates");
    }
    return CostModel(Scripted{std::move(costs)});
  }

  const Variant& kind() const noexcept { return kind_; }

  std::size_t dimension() const {
    return std::visit(
        [](const auto& k) -> std::size_t {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, SphereNoise>) {
            return k.mean.size();
          } else if constexpr (std::is_same_v<K, CurvedExample>) {
            return 2;
          } else if constexpr (std::is_same_v<K, GreedyExample>) {
            return k.lifted ? 2 : 1;
          } else {
            return k.costs.front().size();
          }
        },
        kind_);
  }

  /// E[a_n], or nothing for scripted sequences.
  std::optional<Point> mean() const {
    return std::visit(
        [](const auto& k) -> std::optional<Point> {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, SphereNoise>) {
            return k.mean;
          } else if constexpr (std::is_same_v<K, CurvedExample>) {
            return Point{0.0, 1.0};
          } else if constexpr (std::is_same_v<K, GreedyExample>) {
            return k.lifted ? Point{0.5, -0.5} : Point{0.5};
          } else {
            return std::nullopt;
          }
        },
        kind_);
  }

  bool is_stochastic() const noexcept { return !std::holds_alternative<Scripted>(kind_); }

  /// Scripted streams have a fixed length; stochastic ones are unbounded.
  std::optional<std::size_t> length() const {
    if (const auto* s = std::get_if<Scripted>(&kind_)) return s->costs.size();
    return std::nullopt;
  }

 private:
  explicit CostModel(Variant kind) : kind_(std::move(kind)) {}

  Variant kind_;
};

/// Draws successive costs from a model. Single owner per trial.
class CostStream {
 public:
  CostStream(CostModel model, RngStream rng) : model_(std::move(model)), rng_(std::move(rng)) {}

  Point next() {
    return std::visit(
        [&](const auto& k) -> Point {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, SphereNoise>) {
            if (k.radius == 0.0) return k.mean;
            Point c = sample_sphere(k.mean.size(), rng_);
            c *= k.radius;
            c += k.mean;
            return c;
          } else if constexpr (std::is_same_v<K, CurvedExample>) {
            return Point{rng_.bernoulli(0.5) ? 1.0 : -1.0, 1.0};
          } else if constexpr (std::is_same_v<K, GreedyExample>) {
            const double c = rng_.bernoulli(0.75) ? 1.0 : -1.0;
            return k.lifted ? Point{c, -c} : Point{c};
          } else {
            if (position_ >= k.costs.size()) {
              throw StreamEnd("scripted stream exhausted after " + std::to_string(position_) +
                              " costs");
            }
            return k.costs[position_++];
          }
        },
        model_.kind());
  }

  const CostModel& model() const noexcept { return model_; }

 private:
  CostModel model_;
  RngStream rng_;
  std::size_t position_ = 0;
};

inline Point next_cost(CostStream& stream) { return stream.next(); }

/// Suboptimality gaps of a mean cost vector.
struct GapProfile {
  /// permutation[j] is the coordinate with the j-th smallest mean (stable).
  std::vector<std::size_t> permutation;
  /// sorted_gaps[j] = a(permutation[j]) - a(permutation[0]); ascending, first is 0.
  std::vector<double> sorted_gaps;
  /// Smallest positive gap; empty when all gaps vanish.
  std::optional<double> min_positive_gap;

  /// Gap of an original coordinate.
  double gap_of(std::size_t coordinate) const {
    for (std::size_t j = 0; j < permutation.size(); ++j) {
      if (permutation[j] == coordinate) return sorted_gaps[j];
    }
    throw InvalidInput("coordinate out of range");
  }
};

inline GapProfile gaps(const Point& a) {
  if (a.empty() || !a.all_finite()) throw InvalidInput("gaps need a finite, nonempty mean");
  GapProfile g;
  g.permutation.resize(a.size());
  std::iota(g.permutation.begin(), g.permutation.end(), std::size_t{0});
  std::stable_sort(g.permutation.begin(), g.permutation.end(),
                   [&](std::size_t i, std::size_t j) { return a[i] < a[j]; });
  const double best = a[g.permutation.front()];
  g.sorted_gaps.reserve(a.size());
  for (std::size_t idx : g.permutation) {
    const double gap = a[idx] - best;
    g.sorted_gaps.push_back(gap);
    if (gap > 0.0 && !g.min_positive_gap) g.min_positive_gap = gap;
  }
  return g;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline double parse_double(std::string_view field) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    throw InvalidInput("not a number: '" + std::string(field) + "'");
  }
  if (!std::isfinite(v)) throw InvalidInput("non-finite value: '" + std::string(field) + "'");
  return v;
}

}  // namespace detail

/// Parses "x1,x2,...,xd".
inline Point parse_point(std::string_view text) {
  std::vector<double> values;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    values.push_back(detail::parse_double(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Point(std::move(values));
}

/// Scripted cost text: one comma-separated vector per line; blank lines and
/// lines starting with '#' are skipped. All vectors must share a dimension.
inline std::vector<Point> parse_scripted_costs(std::istream& in) {
  std::vector<Point> costs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    try {
      costs.push_back(parse_point(body));
    } catch (const InvalidInput& e) {
      throw InvalidInput("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (costs.back().size() != costs.front().size()) {
      throw InvalidInput("line " + std::to_string(line_no) + ": dimension " +
                         std::to_string(costs.back().size()) + " differs from " +
                         std::to_string(costs.front().size()));
    }
  }
  return costs;
}

inline std::vector<Point> load_scripted_costs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError(path, "cannot open for reading");
  try {
    return parse_scripted_costs(in);
  } catch (const InvalidInput& e) {
    throw FileError(path, e.what());
  }
}

}  // namespace subgrad
