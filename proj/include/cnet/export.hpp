#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cnet/graph.hpp"
#include "cnet/temporal.hpp"

namespace cnet {

// ---------------------------------------------------------------------------
// Pajek

struct PajekDocument {
  std::string net;
  std::optional<std::string> clu;
};

/// `*Vertices N`, one `i "CODE"` line per node (1-based, code order),
/// `*Edges`, one `i j w` line per edge with i < j, sorted. LF endings.
/// With a partition, `clu` holds `*Vertices N` and one integer per node;
/// nodes missing from the partition get 0.
PajekDocument write_pajek(const CoauthorshipGraph& g,
                          const std::optional<std::map<std::string, int>>& partition = {});

/// Reads the subset written by write_pajek; a missing edge weight means 1.
/// Throws DataError.
CoauthorshipGraph read_pajek(std::string_view net);
std::vector<int> read_pajek_partition(std::string_view clu);

/// Partition by region enum index, for `.clu` output.
std::map<std::string, int> region_partition(const CoauthorshipGraph& g);

// ---------------------------------------------------------------------------
// Layout and SVG

enum class LayoutKind { circular, grouped_circles, center_top_k, year_bands };
enum class SizeAttr { paper_count, degree, none };
enum class NodeOrder { by_code, by_degree_desc };

std::string_view to_string(LayoutKind k);
LayoutKind layout_kind_from_string(std::string_view s);
std::string_view to_string(SizeAttr a);
SizeAttr size_attr_from_string(std::string_view s);
std::string_view to_string(NodeOrder o);
NodeOrder node_order_from_string(std::string_view s);

struct LayoutSpec {
  LayoutKind kind = LayoutKind::circular;
  SizeAttr size_attr = SizeAttr::degree;
  double size_exponent = 0.5;  // gamma, in (0, 1]
  std::size_t k = 10;          // inner-circle size for center_top_k
  std::optional<std::set<std::string>> highlight;
  NodeOrder order = NodeOrder::by_code;
  // Radii and widths in unit-square coordinates.
  double r_min = 0.008;
  double r_max = 0.035;
  double w_min = 0.001;
  double w_max = 0.008;
};

/// Throws UsageError on k == 0, gamma outside (0, 1] or r_min > r_max.
void validate(const LayoutSpec& spec);

/// r_min + (r_max - r_min) * (a / a_max)^gamma; r_min when a_max is 0.
double scaled_size(double a, double a_max, double gamma, double r_min, double r_max);

struct Point {
  double x = 0;
  double y = 0;
  bool operator==(const Point&) const = default;
};

struct RenderedLayout {
  std::map<std::string, Point> positions;  // inside [0,1]^2, y pointing up
  std::map<std::string, double> radii;
  std::map<std::pair<std::string, std::string>, double> edge_widths;
  std::set<std::string> inner;                                   // center_top_k
  std::set<std::pair<std::string, std::string>> highlighted_edges;
  std::vector<std::string> group_labels;                         // regions or years
};

/// Deterministic positions for every layout kind:
/// - circular: node i of n (in `order`) at angle 360*(i+1)/n degrees.
/// - grouped_circles: one circle per region, regions on a fixed hexagon.
/// - center_top_k: top_k_by_degree on an inner circle, the rest outside;
///   edges among the inner nodes are highlighted.
/// - year_bands: horizontal bands by first year, earliest at the top.
/// Throws UsageError when size_attr is paper_count and counts are missing.
RenderedLayout compute_layout(const CoauthorshipGraph& g, const LayoutSpec& spec);

std::string render_network_svg(const CoauthorshipGraph& g, const LayoutSpec& spec);

// ---------------------------------------------------------------------------
// DOT

/// `graph coauthorship { ... }` with nodes in code order and one
/// `"A" -- "B" [weight=w]` statement per edge. With a layout, node
/// positions and pen widths are added.
std::string write_dot(const CoauthorshipGraph& g,
                      const std::optional<LayoutSpec>& layout = std::nullopt);
/// Reads the subset written by write_dot. Throws DataError.
CoauthorshipGraph read_dot(std::string_view dot);

// ---------------------------------------------------------------------------
// Series tables and charts

struct SeriesTable {
  std::vector<std::string> label_headers;        // e.g. {"year"}
  std::vector<std::vector<std::string>> labels;  // per row
  std::vector<double> x;                         // per row, chart abscissa
  std::vector<std::string> columns;
  std::vector<std::vector<double>> values;  // values[row][column]
};

/// Columns sorted by key, rows by year; absent cells are 0.
SeriesTable table_from_year_map(const std::map<std::string, std::map<int, std::int64_t>>& data);
/// Columns in region enum order.
SeriesTable table_from_first_years(const FirstYearSeries& series);
/// Rows per window (start_year, end_year); columns are the named summary
/// fields, or the series' own metric when `fields` is empty.
SeriesTable table_from_window_series(const WindowSeries& series,
                                     const std::vector<std::string>& fields = {});

enum class ChartKind { none, line, bar };
ChartKind chart_kind_from_string(std::string_view s);

struct ChartOptions {
  std::string title;
  std::string y_label;
  bool log_y = false;
};

struct SeriesOutput {
  std::string csv;
  std::optional<std::string> svg;
};

SeriesOutput emit_series(const SeriesTable& table, ChartKind chart,
                         const ChartOptions& options = {});

std::string series_csv(const SeriesTable& table);
std::string render_chart_svg(const SeriesTable& table, ChartKind chart,
                             const ChartOptions& options);

/// Number formatting shared by the emitters: integers without a fraction,
/// other values in shortest round-trip form.
std::string format_number(double v);

}  // namespace cnet
