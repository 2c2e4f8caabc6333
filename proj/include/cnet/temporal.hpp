#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cnet/graph.hpp"
#include "cnet/metrics.hpp"

namespace cnet {

enum class WindowMode { sliding, cumulative };
std::string_view to_string(WindowMode mode);
WindowMode window_mode_from_string(std::string_view name);

/// Windows of `length` years starting at the corpus' first year.
///
/// sliding:    [t0, t0+length-1], [t0+step, t0+step+length-1], ...
/// cumulative: [t0, t0+length-1], [t0, t0+length-1+step], ...
/// Generation stops with the first window that reaches the corpus' last
/// year. An empty corpus gives no windows. Throws UsageError when length or
/// step is < 1.
std::vector<TimeWindow> slice(const RecordSet& rs, int length, int step, WindowMode mode);
std::vector<TimeWindow> slice_years(int first_year, int last_year, int length, int step,
                                    WindowMode mode);

struct WindowSeries {
  WindowMode mode = WindowMode::sliding;
  std::string metric;
  std::vector<TimeWindow> windows;  // strictly increasing end year
  std::vector<double> values;
  std::vector<GraphSummary> summaries;
};

/// One graph per window, summarized and projected onto `metric` (any
/// summary_field name). Windows are ordered by end year. Throws UsageError
/// on an unknown metric, an empty window list or two windows sharing an end
/// year.
WindowSeries metric_series(const RecordSet& rs, const CountryRegistry& registry,
                           std::vector<TimeWindow> windows, std::string_view metric,
                           WindowMode mode = WindowMode::sliding,
                           ClusteringMode clustering = ClusteringMode::exclude_low_degree);

struct LogLogFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  // nullopt for two-point fits, which are exact by construction.
  std::optional<double> r_squared;
  bool exact_fit = false;
  std::size_t points_used = 0;
};

/// Least squares of ln y on ln x: exponent = slope, prefactor = exp(intercept).
/// Throws UsageError when fewer than two points are given, a coordinate is
/// not positive, or all x coincide.
LogLogFit loglog_fit(const std::vector<std::pair<double, double>>& points);

struct Snapshot {
  std::size_t n = 0;
  std::size_t m = 0;
};

struct DensificationFit {
  LogLogFit fit;
  std::vector<Snapshot> excluded;  // snapshots with n < 2 or m < 1
};

/// Fits m = c * n^alpha over usable snapshots. Throws UsageError when fewer
/// than two remain.
DensificationFit densification_fit(const std::vector<Snapshot>& snapshots);

/// Power-law fit of P(k) over degrees k >= k_min (k >= 1 always).
LogLogFit degree_tail_fit(const DegreeHistogram& h, std::size_t k_min = 1);

struct FirstYearSeries {
  std::map<std::string, int> first_year;  // code -> earliest year
  std::vector<int> years;                 // consecutive, first..last corpus year
  // Region -> running count of countries whose first year is <= years[i].
  std::map<Region, std::vector<std::size_t>> cumulative;
};

FirstYearSeries first_year_series(const RecordSet& rs, const CountryRegistry& registry);

inline constexpr std::string_view kUnclassified = "(unclassified)";

/// subject -> year -> number of records. Records without subjects count
/// under "(unclassified)".
std::map<std::string, std::map<int, std::int64_t>> discipline_series(const RecordSet& rs);

std::string densification_to_json(const DensificationFit& d);

}  // namespace cnet
