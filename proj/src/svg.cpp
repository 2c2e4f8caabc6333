#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "cnet/errors.hpp"
#include "cnet/export.hpp"
#include "cnet/metrics.hpp"

namespace cnet {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr std::array<const char*, 6> kRegionColors = {"#4e79a7", "#e15759", "#59a14f",
                                                      "#f28e2b", "#b07aa1", "#76b7b2"};
constexpr const char* kUnknownColor = "#9c9c9c";
constexpr std::array<const char*, 10> kSeriesColors = {
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
    "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

Point on_circle(Point center, double radius, std::size_t i, std::size_t count) {
  const double theta = kTwoPi * static_cast<double>(i + 1) / static_cast<double>(count);
  return {clamp01(center.x + radius * std::cos(theta)),
          clamp01(center.y + radius * std::sin(theta))};
}

std::vector<std::size_t> ordered(const CoauthorshipGraph& g, std::vector<std::size_t> nodes,
                                 NodeOrder order) {
  std::sort(nodes.begin(), nodes.end());
  if (order == NodeOrder::by_degree_desc)
    std::stable_sort(nodes.begin(), nodes.end(),
                     [&](std::size_t a, std::size_t b) { return g.degree(a) > g.degree(b); });
  return nodes;
}

void place_ring(const CoauthorshipGraph& g, const std::vector<std::size_t>& nodes, Point center,
                double radius, RenderedLayout& out) {
  if (nodes.size() == 1) {
    out.positions[g.node(nodes[0]).code] = center;
    return;
  }
  for (std::size_t i = 0; i < nodes.size(); ++i)
    out.positions[g.node(nodes[i]).code] = on_circle(center, radius, i, nodes.size());
}

std::string px(double v) { return fmt::format("{:.2f}", v); }

}  // namespace

std::string_view to_string(LayoutKind k) {
  switch (k) {
    case LayoutKind::circular: return "circular";
    case LayoutKind::grouped_circles: return "grouped_circles";
    case LayoutKind::center_top_k: return "center_top_k";
    case LayoutKind::year_bands: return "year_bands";
  }
  return "circular";
}

LayoutKind layout_kind_from_string(std::string_view s) {
  for (auto k : {LayoutKind::circular, LayoutKind::grouped_circles, LayoutKind::center_top_k,
                 LayoutKind::year_bands})
    if (to_string(k) == s) return k;
  throw UsageError("unknown layout '" + std::string(s) +
                   "' (expected circular, grouped_circles, center_top_k or year_bands)");
}

std::string_view to_string(SizeAttr a) {
  switch (a) {
    case SizeAttr::paper_count: return "paper_count";
    case SizeAttr::degree: return "degree";
    case SizeAttr::none: return "none";
  }
  return "none";
}

SizeAttr size_attr_from_string(std::string_view s) {
  for (auto a : {SizeAttr::paper_count, SizeAttr::degree, SizeAttr::none})
    if (to_string(a) == s) return a;
  throw UsageError("unknown size attribute '" + std::string(s) + "'");
}

std::string_view to_string(NodeOrder o) {
  return o == NodeOrder::by_code ? "by_code" : "by_degree_desc";
}

NodeOrder node_order_from_string(std::string_view s) {
  if (s == "by_code") return NodeOrder::by_code;
  if (s == "by_degree_desc") return NodeOrder::by_degree_desc;
  throw UsageError("unknown node order '" + std::string(s) + "'");
}

void validate(const LayoutSpec& spec) {
  if (spec.kind == LayoutKind::center_top_k && spec.k == 0)
    throw UsageError("center_top_k layout needs k >= 1");
  if (!(spec.size_exponent > 0.0 && spec.size_exponent <= 1.0))
    throw UsageError("size exponent must lie in (0, 1]");
  if (!(spec.r_min >= 0.0 && spec.r_min <= spec.r_max))
    throw UsageError("node radii need 0 <= r_min <= r_max");
  if (!(spec.w_min >= 0.0 && spec.w_min <= spec.w_max))
    throw UsageError("edge widths need 0 <= w_min <= w_max");
}

double scaled_size(double a, double a_max, double gamma, double r_min, double r_max) {
  if (a_max <= 0.0 || a <= 0.0) return r_min;
  if (a >= a_max) return r_max;
  return r_min + (r_max - r_min) * std::pow(a / a_max, gamma);
}

RenderedLayout compute_layout(const CoauthorshipGraph& g, const LayoutSpec& spec) {
  validate(spec);
  if (spec.size_attr == SizeAttr::paper_count && !g.has_paper_counts())
    throw UsageError("size attribute paper_count needs a graph with paper counts");
  if (spec.highlight)
    for (const auto& c : *spec.highlight)
      if (!g.index_of(c)) throw UsageError("highlighted code '" + c + "' is not a node");

  RenderedLayout out;
  const auto n = g.node_count();
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  const Point center{0.5, 0.5};

  switch (spec.kind) {
    case LayoutKind::circular:
      place_ring(g, ordered(g, all, spec.order), center, 0.5, out);
      break;

    case LayoutKind::grouped_circles: {
      std::vector<std::vector<std::size_t>> groups(kAllRegions.size() + 1);
      for (std::size_t i = 0; i < n; ++i) {
        const auto& r = g.node(i).region;
        groups[r ? static_cast<std::size_t>(*r) : kAllRegions.size()].push_back(i);
      }
      for (std::size_t r = 0; r < kAllRegions.size(); ++r) {
        if (groups[r].empty()) continue;
        const double theta = std::numbers::pi / 2.0 + kTwoPi * static_cast<double>(r) / 6.0;
        const Point c{0.5 + 0.33 * std::cos(theta), 0.5 + 0.33 * std::sin(theta)};
        place_ring(g, ordered(g, groups[r], spec.order), c, 0.15, out);
        out.group_labels.emplace_back(to_string(kAllRegions[r]));
      }
      if (!groups.back().empty()) {
        place_ring(g, ordered(g, groups.back(), spec.order), center, 0.1, out);
        out.group_labels.emplace_back("unknown");
      }
      break;
    }

    case LayoutKind::center_top_k: {
      const auto top = top_k_by_degree(g, spec.k);
      std::vector<std::size_t> inner;
      for (const auto& c : top) {
        inner.push_back(*g.index_of(c));
        out.inner.insert(c);
      }
      std::vector<std::size_t> outer;
      for (std::size_t i = 0; i < n; ++i)
        if (!out.inner.contains(g.node(i).code)) outer.push_back(i);
      place_ring(g, inner, center, 0.2, out);
      place_ring(g, ordered(g, outer, spec.order), center, 0.5, out);
      for (const auto& e : g.edges())
        if (out.inner.contains(g.node(e.u).code) && out.inner.contains(g.node(e.v).code))
          out.highlighted_edges.emplace(g.node(e.u).code, g.node(e.v).code);
      break;
    }

    case LayoutKind::year_bands: {
      std::map<int, std::vector<std::size_t>> bands;
      std::vector<std::size_t> unknown;
      for (std::size_t i = 0; i < n; ++i) {
        if (const auto& y = g.node(i).first_year)
          bands[*y].push_back(i);
        else
          unknown.push_back(i);
      }
      std::vector<std::pair<std::string, std::vector<std::size_t>>> rows;
      for (auto& [year, nodes] : bands) rows.emplace_back(std::to_string(year), std::move(nodes));
      if (!unknown.empty()) rows.emplace_back("unknown", std::move(unknown));
      const auto band_count = static_cast<double>(rows.size());
      for (std::size_t b = 0; b < rows.size(); ++b) {
        const double y = 1.0 - (static_cast<double>(b) + 0.5) / band_count;
        auto nodes = ordered(g, rows[b].second, spec.order);
        for (std::size_t i = 0; i < nodes.size(); ++i)
          out.positions[g.node(nodes[i]).code] = {
              (static_cast<double>(i) + 0.5) / static_cast<double>(nodes.size()), y};
        out.group_labels.push_back(rows[b].first);
      }
      break;
    }
  }

  double a_max = 0.0;
  std::vector<double> attr(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (spec.size_attr == SizeAttr::paper_count)
      attr[i] = static_cast<double>(*g.node(i).paper_count);
    else if (spec.size_attr == SizeAttr::degree)
      attr[i] = static_cast<double>(g.degree(i));
    a_max = std::max(a_max, attr[i]);
  }
  for (std::size_t i = 0; i < n; ++i)
    out.radii[g.node(i).code] =
        scaled_size(attr[i], a_max, spec.size_exponent, spec.r_min, spec.r_max);

  double w_max = 0.0;
  for (const auto& e : g.edges()) w_max = std::max(w_max, static_cast<double>(e.weight));
  for (const auto& e : g.edges())
    out.edge_widths[{g.node(e.u).code, g.node(e.v).code}] = scaled_size(
        static_cast<double>(e.weight), w_max, spec.size_exponent, spec.w_min, spec.w_max);

  if (spec.highlight)
    for (const auto& e : g.edges())
      if (spec.highlight->contains(g.node(e.u).code) && spec.highlight->contains(g.node(e.v).code))
        out.highlighted_edges.emplace(g.node(e.u).code, g.node(e.v).code);
  return out;
}

std::string render_network_svg(const CoauthorshipGraph& g, const LayoutSpec& spec) {
  const auto layout = compute_layout(g, spec);
  constexpr double size = 800.0;
  constexpr double margin = 60.0;
  constexpr double inner = size - 2 * margin;
  auto sx = [&](double x) { return margin + x * inner; };
  auto sy = [&](double y) { return margin + (1.0 - y) * inner; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{0}\" "
      "viewBox=\"0 0 {0} {0}\">\n",
      static_cast<int>(size));
  out += "  <style>line{stroke:#7f8c9a;stroke-opacity:0.6}line.highlight{stroke:#f1c40f;"
         "stroke-opacity:0.95}circle{stroke:#333;stroke-width:0.8}circle.highlight{stroke:#c0392b;"
         "stroke-width:2.5}text{font-family:sans-serif;font-size:10px;fill:#222}</style>\n";
  out += fmt::format("  <rect width=\"{0}\" height=\"{0}\" fill=\"#ffffff\"/>\n",
                     static_cast<int>(size));

  auto edge_line = [&](const Edge& e, bool highlight) {
    const auto& a = g.node(e.u).code;
    const auto& b = g.node(e.v).code;
    const auto& pa = layout.positions.at(a);
    const auto& pb = layout.positions.at(b);
    return fmt::format(
        "    <line{} x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke-width=\"{}\"><title>{} - {} "
        "({})</title></line>\n",
        highlight ? " class=\"highlight\"" : "", px(sx(pa.x)), px(sy(pa.y)), px(sx(pb.x)),
        px(sy(pb.y)), px(layout.edge_widths.at({a, b}) * inner), xml_escape(a), xml_escape(b),
        e.weight);
  };
  out += "  <g class=\"edges\">\n";
  for (const auto& e : g.edges())
    if (!layout.highlighted_edges.contains({g.node(e.u).code, g.node(e.v).code}))
      out += edge_line(e, false);
  for (const auto& e : g.edges())
    if (layout.highlighted_edges.contains({g.node(e.u).code, g.node(e.v).code}))
      out += edge_line(e, true);
  out += "  </g>\n";

  out += "  <g class=\"nodes\">\n";
  for (const auto& node : g.nodes()) {
    const auto& p = layout.positions.at(node.code);
    const bool hl = (spec.highlight && spec.highlight->contains(node.code)) ||
                    layout.inner.contains(node.code);
    const char* color =
        node.region ? kRegionColors[static_cast<std::size_t>(*node.region)] : kUnknownColor;
    out += fmt::format(
        "    <circle{} cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"><title>{}</title></circle>\n",
        hl ? " class=\"highlight\"" : "", px(sx(p.x)), px(sy(p.y)),
        px(layout.radii.at(node.code) * inner), color, xml_escape(node.code));
  }
  out += "  </g>\n";

  out += "  <g class=\"labels\">\n";
  for (const auto& node : g.nodes()) {
    const auto& p = layout.positions.at(node.code);
    const double r = layout.radii.at(node.code) * inner;
    out += fmt::format("    <text x=\"{}\" y=\"{}\">{}</text>\n", px(sx(p.x) + r + 2),
                       px(sy(p.y) - r - 2), xml_escape(node.code));
  }
  out += "  </g>\n";

  if (spec.kind == LayoutKind::year_bands) {
    out += "  <g class=\"bands\">\n";
    const auto count = static_cast<double>(layout.group_labels.size());
    for (std::size_t b = 0; b < layout.group_labels.size(); ++b) {
      const double y = 1.0 - (static_cast<double>(b) + 0.5) / count;
      out += fmt::format("    <text x=\"4\" y=\"{}\">{}</text>\n", px(sy(y)),
                         xml_escape(layout.group_labels[b]));
    }
    out += "  </g>\n";
  }
  if (spec.kind == LayoutKind::grouped_circles) {
    out += "  <g class=\"legend\">\n";
    for (std::size_t r = 0; r < kAllRegions.size(); ++r)
      out += fmt::format(
          "    <circle cx=\"12\" cy=\"{0}\" r=\"5\" fill=\"{1}\"/><text x=\"22\" y=\"{2}\">{3}</text>\n",
          px(14.0 + 16.0 * static_cast<double>(r)), kRegionColors[r],
          px(18.0 + 16.0 * static_cast<double>(r)), to_string(kAllRegions[r]));
    out += "  </g>\n";
  }
  out += "</svg>\n";
  return out;
}

namespace {

double nice_step(double range) {
  if (range <= 0) return 1.0;
  const double raw = range / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  const double f = norm <= 1.0 ? 1.0 : norm <= 2.0 ? 2.0 : norm <= 5.0 ? 5.0 : 10.0;
  return f * mag;
}

}  // namespace

std::string render_chart_svg(const SeriesTable& table, ChartKind chart,
                             const ChartOptions& options) {
  constexpr double width = 720, height = 420;
  constexpr double left = 64, right = 160, top = 40, bottom = 56;
  constexpr double plot_w = width - left - right;
  constexpr double plot_h = height - top - bottom;
  const std::size_t rows = table.values.size();
  const std::size_t cols = table.columns.size();

  // Y axis.
  double y_max = 0.0, y_min_pos = 0.0;
  for (const auto& row : table.values)
    for (double v : row) {
      y_max = std::max(y_max, v);
      if (v > 0 && (y_min_pos == 0.0 || v < y_min_pos)) y_min_pos = v;
    }
  std::vector<double> ticks;
  double lo = 0.0, hi = 1.0;
  if (options.log_y) {
    double lo_exp = y_min_pos > 0 ? std::floor(std::log10(y_min_pos)) : 0.0;
    double hi_exp = y_max > 0 ? std::ceil(std::log10(y_max)) : 1.0;
    if (hi_exp <= lo_exp) hi_exp = lo_exp + 1;
    lo = lo_exp;
    hi = hi_exp;
    for (double e = lo_exp; e <= hi_exp; e += 1.0) ticks.push_back(std::pow(10.0, e));
  } else {
    const double step = nice_step(y_max > 0 ? y_max : 1.0);
    hi = std::max(step, std::ceil(y_max / step - 1e-9) * step);
    const auto count = static_cast<int>(std::lround(hi / step));
    for (int i = 0; i <= count; ++i) {
      // Round away representation noise such as 0.30000000000000004.
      const double t = static_cast<double>(i) * step;
      ticks.push_back(std::stod(fmt::format("{:.10g}", t)));
    }
  }
  auto y_pos = [&](double v) -> std::optional<double> {
    double frac;
    if (options.log_y) {
      if (v <= 0) return std::nullopt;
      frac = (std::log10(v) - lo) / (hi - lo);
    } else {
      frac = (v - lo) / (hi - lo);
    }
    return top + plot_h * (1.0 - frac);
  };

  // X axis: linear in x for line charts, one slot per row for bar charts.
  double x_lo = 0, x_hi = 1;
  if (rows > 0) {
    x_lo = *std::min_element(table.x.begin(), table.x.end());
    x_hi = *std::max_element(table.x.begin(), table.x.end());
  }
  auto x_pos = [&](std::size_t r) {
    if (chart == ChartKind::bar || x_hi == x_lo)
      return left + plot_w * (static_cast<double>(r) + 0.5) / static_cast<double>(std::max<std::size_t>(rows, 1));
    return left + plot_w * (table.x[r] - x_lo) / (x_hi - x_lo);
  };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" "
      "viewBox=\"0 0 {} {}\">\n",
      width, height, width, height);
  out += "  <style>text{font-family:sans-serif;font-size:11px;fill:#222}line.grid{stroke:#ddd}"
         "line.axis{stroke:#333}polyline{fill:none;stroke-width:2}</style>\n";
  out += fmt::format("  <rect width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>\n", width, height);
  if (!options.title.empty())
    out += fmt::format("  <text x=\"{}\" y=\"22\" font-size=\"14\">{}</text>\n", px(left),
                       xml_escape(options.title));

  out += "  <g class=\"y-axis\">\n";
  for (double t : ticks) {
    const double y = *y_pos(t);
    out += fmt::format(
        "    <line class=\"grid\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/><text x=\"{}\" y=\"{}\" "
        "text-anchor=\"end\">{}</text>\n",
        px(left), px(y), px(left + plot_w), px(y), px(left - 6), px(y + 4), format_number(t));
  }
  if (!options.y_label.empty())
    out += fmt::format(
        "    <text x=\"14\" y=\"{}\" transform=\"rotate(-90 14 {})\" text-anchor=\"middle\">{}</text>\n",
        px(top + plot_h / 2), px(top + plot_h / 2), xml_escape(options.y_label));
  out += "  </g>\n";

  out += "  <g class=\"x-axis\">\n";
  out += fmt::format("    <line class=\"axis\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n",
                     px(left), px(top + plot_h), px(left + plot_w), px(top + plot_h));
  out += fmt::format("    <line class=\"axis\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n",
                     px(left), px(top), px(left), px(top + plot_h));
  const std::size_t label_every = rows <= 12 ? 1 : (rows + 9) / 10;
  for (std::size_t r = 0; r < rows; r += label_every) {
    std::string label;
    for (const auto& part : table.labels[r]) label += (label.empty() ? "" : "-") + part;
    out += fmt::format("    <text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
                       px(x_pos(r)), px(top + plot_h + 18), xml_escape(label));
  }
  out += "  </g>\n";

  out += "  <g class=\"series\">\n";
  if (chart == ChartKind::line) {
    for (std::size_t c = 0; c < cols; ++c) {
      std::string pts;
      for (std::size_t r = 0; r < rows; ++r) {
        auto y = y_pos(table.values[r][c]);
        if (!y) continue;
        if (!pts.empty()) pts.push_back(' ');
        pts += px(x_pos(r)) + "," + px(*y);
      }
      out += fmt::format("    <polyline stroke=\"{}\" points=\"{}\"><title>{}</title></polyline>\n",
                         kSeriesColors[c % kSeriesColors.size()], pts,
                         xml_escape(table.columns[c]));
    }
  } else if (chart == ChartKind::bar && rows > 0 && cols > 0) {
    const double slot = plot_w / static_cast<double>(rows);
    const double bar_w = slot * 0.8 / static_cast<double>(cols);
    const double base = top + plot_h;
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) {
        auto y = y_pos(table.values[r][c]);
        if (!y || *y >= base) continue;
        const double x = left + slot * static_cast<double>(r) + slot * 0.1 +
                         bar_w * static_cast<double>(c);
        out += fmt::format(
            "    <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>\n", px(x),
            px(*y), px(bar_w), px(base - *y), kSeriesColors[c % kSeriesColors.size()]);
      }
  }
  out += "  </g>\n";

  out += "  <g class=\"legend\">\n";
  for (std::size_t c = 0; c < cols; ++c) {
    const double y = top + 16.0 * static_cast<double>(c);
    out += fmt::format(
        "    <rect x=\"{}\" y=\"{}\" width=\"10\" height=\"10\" fill=\"{}\"/><text x=\"{}\" "
        "y=\"{}\">{}</text>\n",
        px(left + plot_w + 16), px(y), kSeriesColors[c % kSeriesColors.size()],
        px(left + plot_w + 32), px(y + 9), xml_escape(table.columns[c]));
  }
  out += "  </g>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace cnet
