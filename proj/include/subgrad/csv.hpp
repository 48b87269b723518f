#pragma once

// CSV tables written by the harness. Numbers use the shortest decimal form
// that reads back to the same double, so output is byte-stable and
// round-trips exactly.

#include <array>
#include <charconv>
#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "subgrad/costs.hpp"
#include "subgrad/errors.hpp"
#include "subgrad/harness.hpp"
#include "subgrad/point.hpp"

namespace subgrad {

inline constexpr const char* kPerTurnHeader =
    "trial,turn,instant_pseudo_regret,cumulative_pseudo_regret";
inline constexpr const char* kSweepHeader = "R,trial,final_pseudo_regret";
inline constexpr const char* kSummaryHeader = "turn,mean,quantile05,median,quantile95";
inline constexpr const char* kGrowthHeader = "horizon,mean_pseudo_regret,standard_error";

inline std::string format_number(double v) {
  if (v == 0.0) return "0";  // folds -0
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw InvalidInput("cannot format number");
  return std::string(buf.data(), ptr);
}

inline std::string format_point(const Point& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i != 0) s += ',';
    s += format_number(p[i]);
  }
  return s;
}

inline void write_summary_csv(std::ostream& out, const AggregateResult& result) {
  out << kSummaryHeader << '\n';
  for (std::size_t n = 0; n < result.horizon(); ++n) {
    out << n + 1 << ',' << format_number(result.mean[n]) << ','
        << format_number(result.quantile05[n]) << ',' << format_number(result.median[n]) << ','
        << format_number(result.quantile95[n]) << '\n';
  }
}

/// Needs an aggregate produced at the per-turn record level.
inline void write_per_turn_csv(std::ostream& out, const AggregateResult& result) {
  if (result.instants.size() != result.trials()) {
    throw Unsupported("per-turn table needs a per-turn record level");
  }
  out << kPerTurnHeader << '\n';
  for (std::size_t k = 0; k < result.instants.size(); ++k) {
    double c = 0.0;
    for (std::size_t n = 0; n < result.instants[k].size(); ++n) {
      c += result.instants[k][n];
      out << k << ',' << n + 1 << ',' << format_number(result.instants[k][n]) << ','
          << format_number(c) << '\n';
    }
  }
}

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepHeader << '\n';
  for (const SweepRow& r : rows) {
    out << format_number(r.R) << ',' << r.trial << ',' << format_number(r.final_pseudo_regret)
        << '\n';
  }
}

inline void write_growth_csv(std::ostream& out, const GrowthResult& result) {
  out << kGrowthHeader << '\n';
  for (std::size_t h = 0; h < result.horizons.size(); ++h) {
    out << result.horizons[h] << ',' << format_number(result.mean[h]) << ','
        << format_number(result.standard_error[h]) << '\n';
  }
  out << "# fitted_slope=" << format_number(result.slope) << " window=" << result.window_lo << '-'
      << result.window_hi << '\n';
}

/// Writes `text` to `path`, reporting I/O failures with the path attached.
inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FileError(path, "cannot open for writing");
  out << text;
  out.flush();
  if (!out) throw FileError(path, "write failed");
}

/// Emits the summary table of an aggregate to a file.
inline void emit_csv(const AggregateResult& result, const std::string& path) {
  std::ostringstream text;
  write_summary_csv(text, result);
  write_file(path, text.str());
}

struct SummaryRow {
  std::size_t turn = 0;
  double mean = 0.0;
  double quantile05 = 0.0;
  double median = 0.0;
  double quantile95 = 0.0;

  friend bool operator==(const SummaryRow&, const SummaryRow&) = default;
};

inline std::vector<SummaryRow> read_summary_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || detail::trim(line) != kSummaryHeader) {
    throw InvalidInput("missing summary header");
  }
  std::vector<SummaryRow> rows;
  while (std::getline(in, line)) {
    const auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    const Point fields = parse_point(body);
    if (fields.size() != 5) throw InvalidInput("summary row needs 5 fields");
    rows.push_back(SummaryRow{static_cast<std::size_t>(fields[0]), fields[1], fields[2], fields[3],
                              fields[4]});
  }
  return rows;
}

}  // namespace subgrad
