#include "cnet/temporal.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "cnet/errors.hpp"
#include "parallel.hpp"

namespace cnet {

using nlohmann::json;

std::string_view to_string(WindowMode mode) {
  return mode == WindowMode::sliding ? "sliding" : "cumulative";
}

WindowMode window_mode_from_string(std::string_view name) {
  if (name == "sliding") return WindowMode::sliding;
  if (name == "cumulative") return WindowMode::cumulative;
  throw UsageError("unknown window mode '" + std::string(name) +
                   "' (expected sliding or cumulative)");
}

std::vector<TimeWindow> slice_years(int first_year, int last_year, int length, int step,
                                    WindowMode mode) {
  if (length < 1) throw UsageError("window length must be >= 1");
  if (step < 1) throw UsageError("window step must be >= 1");
  if (first_year > last_year) throw UsageError("first year is after last year");
  std::vector<TimeWindow> out;
  int start = first_year;
  int end = first_year + length - 1;
  for (;;) {
    out.push_back({start, end});
    if (end >= last_year) break;
    if (mode == WindowMode::sliding) start += step;
    end += step;
  }
  return out;
}

std::vector<TimeWindow> slice(const RecordSet& rs, int length, int step, WindowMode mode) {
  if (length < 1) throw UsageError("window length must be >= 1");
  if (step < 1) throw UsageError("window step must be >= 1");
  auto range = rs.year_range();
  if (!range) return {};
  return slice_years(range->first, range->second, length, step, mode);
}

WindowSeries metric_series(const RecordSet& rs, const CountryRegistry& registry,
                           std::vector<TimeWindow> windows, std::string_view metric,
                           WindowMode mode, ClusteringMode clustering) {
  if (windows.empty()) throw UsageError("metric series needs at least one window");
  const auto& names = summary_field_names();
  if (std::find(names.begin(), names.end(), metric) == names.end())
    throw UsageError("unknown metric '" + std::string(metric) + "'");
  for (const auto& w : windows) make_window(w.start_year, w.end_year);
  std::sort(windows.begin(), windows.end(), [](const TimeWindow& a, const TimeWindow& b) {
    return std::tie(a.end_year, a.start_year) < std::tie(b.end_year, b.start_year);
  });
  for (std::size_t i = 1; i < windows.size(); ++i)
    if (windows[i].end_year == windows[i - 1].end_year)
      throw UsageError("two windows end in " + std::to_string(windows[i].end_year));

  WindowSeries series;
  series.mode = mode;
  series.metric = std::string(metric);
  series.windows = windows;
  series.summaries.resize(windows.size());
  detail::parallel_for(windows.size(), [&](std::size_t i) {
    series.summaries[i] = summary(build_network(rs, registry, windows[i]), clustering);
  });
  for (const auto& s : series.summaries) series.values.push_back(summary_field(s, metric));
  return series;
}

LogLogFit loglog_fit(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) throw UsageError("a log-log fit needs at least two points");
  const auto k = static_cast<double>(points.size());
  double sx = 0, sy = 0;
  for (const auto& [x, y] : points) {
    if (!(x > 0) || !(y > 0)) throw UsageError("log-log fit needs positive coordinates");
    sx += std::log(x);
    sy += std::log(y);
  }
  const double mx = sx / k;
  const double my = sy / k;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& [x, y] : points) {
    const double dx = std::log(x) - mx;
    const double dy = std::log(y) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0) throw UsageError("log-log fit needs at least two distinct x values");

  LogLogFit fit;
  fit.points_used = points.size();
  fit.exponent = sxy / sxx;
  fit.prefactor = std::exp(my - fit.exponent * mx);
  if (points.size() == 2) {
    fit.exact_fit = true;
  } else if (syy == 0) {
    fit.r_squared = 1.0;
  } else {
    double ss_res = 0;
    for (const auto& [x, y] : points) {
      const double r = std::log(y) - (my + fit.exponent * (std::log(x) - mx));
      ss_res += r * r;
    }
    fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  return fit;
}

DensificationFit densification_fit(const std::vector<Snapshot>& snapshots) {
  DensificationFit out;
  std::vector<std::pair<double, double>> points;
  for (const auto& s : snapshots) {
    if (s.n >= 2 && s.m >= 1)
      points.emplace_back(static_cast<double>(s.n), static_cast<double>(s.m));
    else
      out.excluded.push_back(s);
  }
  if (points.size() < 2)
    throw UsageError("densification fit needs at least two snapshots with n >= 2 and m >= 1");
  out.fit = loglog_fit(points);
  return out;
}

LogLogFit degree_tail_fit(const DegreeHistogram& h, std::size_t k_min) {
  std::vector<std::pair<double, double>> points;
  for (const auto& [k, p] : h.probabilities)
    if (k >= std::max<std::size_t>(k_min, 1) && p > 0)
      points.emplace_back(static_cast<double>(k), p);
  return loglog_fit(points);
}

FirstYearSeries first_year_series(const RecordSet& rs, const CountryRegistry& registry) {
  FirstYearSeries out;
  for (const auto& r : rs.records)
    for (const auto* c : resolve_countries(r, registry)) {
      auto [it, inserted] = out.first_year.emplace(c->code, r.year);
      if (!inserted) it->second = std::min(it->second, r.year);
    }
  auto range = rs.year_range();
  if (!range) return out;
  for (int y = range->first; y <= range->second; ++y) out.years.push_back(y);
  for (Region region : kAllRegions) out.cumulative[region].assign(out.years.size(), 0);
  for (const auto& [code, year] : out.first_year) {
    const auto region = registry.by_code(code)->region;
    auto& series = out.cumulative[region];
    for (std::size_t i = static_cast<std::size_t>(year - range->first); i < series.size(); ++i)
      ++series[i];
  }
  return out;
}

std::map<std::string, std::map<int, std::int64_t>> discipline_series(const RecordSet& rs) {
  std::map<std::string, std::map<int, std::int64_t>> out;
  for (const auto& r : rs.records) {
    if (r.subjects.empty()) {
      ++out[std::string(kUnclassified)][r.year];
      continue;
    }
    for (const auto& s : r.subjects) ++out[s][r.year];
  }
  return out;
}

std::string densification_to_json(const DensificationFit& d) {
  json excluded = json::array();
  for (const auto& s : d.excluded) excluded.push_back({{"n", s.n}, {"m", s.m}});
  json doc = {{"alpha", d.fit.exponent},
              {"c", d.fit.prefactor},
              {"r_squared", d.fit.r_squared ? json(*d.fit.r_squared) : json(nullptr)},
              {"exact_fit", d.fit.exact_fit},
              {"points_used", d.fit.points_used},
              {"excluded", excluded}};
  return doc.dump(2) + "\n";
}

}  // namespace cnet
