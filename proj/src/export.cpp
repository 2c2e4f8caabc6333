#include "cnet/export.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "cnet/errors.hpp"
#include "csv.hpp"

namespace cnet {

namespace {

using EdgeTriple = std::tuple<std::string, std::string, std::int64_t>;

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }
  return lines;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

long long parse_int(const std::string& s, std::size_t line) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw DataError("expected an integer, got '" + s + "'", line);
  return v;
}

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::string format_number(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 1e15)
    return fmt::format("{}", static_cast<long long>(v));
  return fmt::format("{}", v);
}

// ---------------------------------------------------------------------------
// Pajek

PajekDocument write_pajek(const CoauthorshipGraph& g,
                          const std::optional<std::map<std::string, int>>& partition) {
  PajekDocument doc;
  std::string& net = doc.net;
  net += fmt::format("*Vertices {}\n", g.node_count());
  for (std::size_t i = 0; i < g.node_count(); ++i)
    net += fmt::format("{} \"{}\"\n", i + 1, g.node(i).code);
  net += "*Edges\n";
  for (const auto& e : g.edges()) net += fmt::format("{} {} {}\n", e.u + 1, e.v + 1, e.weight);

  if (partition) {
    std::string clu = fmt::format("*Vertices {}\n", g.node_count());
    for (const auto& n : g.nodes()) {
      auto it = partition->find(n.code);
      clu += fmt::format("{}\n", it == partition->end() ? 0 : it->second);
    }
    doc.clu = std::move(clu);
  }
  return doc;
}

CoauthorshipGraph read_pajek(std::string_view net) {
  auto lines = split_lines(net);
  std::size_t i = 0;
  auto skip_blank = [&] {
    while (i < lines.size() && trim(lines[i]).empty()) ++i;
  };
  skip_blank();
  if (i >= lines.size()) throw DataError("empty Pajek document");
  auto head = split_ws(lines[i]);
  if (head.size() < 2 || to_lower_ascii(head[0]) != "*vertices")
    throw DataError("expected '*Vertices N'", i + 1);
  const auto count = parse_int(head[1], i + 1);
  if (count < 0) throw DataError("negative vertex count", i + 1);
  ++i;

  std::vector<std::string> labels(static_cast<std::size_t>(count));
  std::vector<bool> seen(labels.size(), false);
  for (; i < lines.size(); ++i) {
    auto line = trim(lines[i]);
    if (line.empty()) continue;
    if (line.front() == '*') break;
    auto sp = line.find_first_of(" \t");
    if (sp == std::string_view::npos) throw DataError("vertex line without label", i + 1);
    auto idx = parse_int(std::string(line.substr(0, sp)), i + 1);
    if (idx < 1 || idx > count) throw DataError("vertex index out of range", i + 1);
    auto rest = trim(line.substr(sp));
    std::string label;
    if (!rest.empty() && rest.front() == '"') {
      auto close = rest.find('"', 1);
      if (close == std::string_view::npos) throw DataError("unterminated vertex label", i + 1);
      label = std::string(rest.substr(1, close - 1));
    } else {
      label = split_ws(rest).front();
    }
    auto slot = static_cast<std::size_t>(idx - 1);
    if (seen[slot]) throw DataError("vertex listed twice", i + 1);
    seen[slot] = true;
    labels[slot] = std::move(label);
  }
  for (std::size_t v = 0; v < labels.size(); ++v)
    if (!seen[v]) throw DataError("vertex " + std::to_string(v + 1) + " has no label line");

  std::vector<EdgeTriple> edges;
  if (i < lines.size()) {
    auto section = to_lower_ascii(trim(lines[i]));
    if (section != "*edges") throw DataError("expected '*Edges'", i + 1);
    ++i;
    for (; i < lines.size(); ++i) {
      auto line = trim(lines[i]);
      if (line.empty()) continue;
      auto tok = split_ws(line);
      if (tok.size() < 2) throw DataError("edge line needs two endpoints", i + 1);
      auto a = parse_int(tok[0], i + 1);
      auto b = parse_int(tok[1], i + 1);
      if (a < 1 || a > count || b < 1 || b > count)
        throw DataError("edge endpoint out of range", i + 1);
      std::int64_t w = tok.size() >= 3 ? parse_int(tok[2], i + 1) : 1;
      edges.emplace_back(labels[static_cast<std::size_t>(a - 1)],
                         labels[static_cast<std::size_t>(b - 1)], w);
    }
  }

  std::vector<NodeAttr> nodes;
  for (auto& l : labels) nodes.push_back({std::move(l), std::nullopt, std::nullopt, std::nullopt});
  try {
    return CoauthorshipGraph(std::move(nodes), std::move(edges));
  } catch (const UsageError& e) {
    throw DataError(std::string("invalid Pajek graph: ") + e.what());
  }
}

std::vector<int> read_pajek_partition(std::string_view clu) {
  auto lines = split_lines(clu);
  std::vector<int> out;
  std::optional<long long> expected;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto line = trim(lines[i]);
    if (line.empty()) continue;
    if (line.front() == '*') {
      auto tok = split_ws(line);
      if (tok.size() < 2) throw DataError("expected '*Vertices N'", i + 1);
      expected = parse_int(tok[1], i + 1);
      continue;
    }
    out.push_back(static_cast<int>(parse_int(std::string(line), i + 1)));
  }
  if (!expected || static_cast<long long>(out.size()) != *expected)
    throw DataError("partition length does not match its vertex count");
  return out;
}

std::map<std::string, int> region_partition(const CoauthorshipGraph& g) {
  std::map<std::string, int> out;
  for (const auto& n : g.nodes())
    out.emplace(n.code, n.region ? static_cast<int>(*n.region) + 1 : 0);
  return out;
}

// ---------------------------------------------------------------------------
// DOT

std::string write_dot(const CoauthorshipGraph& g, const std::optional<LayoutSpec>& layout) {
  std::string out = "graph coauthorship {\n";
  std::optional<RenderedLayout> placed;
  if (layout) placed = compute_layout(g, *layout);
  for (const auto& n : g.nodes()) {
    out += "  " + dot_quote(n.code);
    if (placed) {
      const auto& p = placed->positions.at(n.code);
      out += fmt::format(" [pos=\"{:.4f},{:.4f}!\", width={:.4f}]", p.x * 10.0, p.y * 10.0,
                         placed->radii.at(n.code) * 20.0);
    }
    out += ";\n";
  }
  for (const auto& e : g.edges()) {
    const auto& a = g.node(e.u).code;
    const auto& b = g.node(e.v).code;
    out += "  " + dot_quote(a) + " -- " + dot_quote(b) + fmt::format(" [weight={}", e.weight);
    if (placed) out += fmt::format(", penwidth={:.4f}", placed->edge_widths.at({a, b}) * 400.0);
    out += "];\n";
  }
  out += "}\n";
  return out;
}

namespace {

// Tokenizer for the DOT subset emitted above.
class DotLexer {
 public:
  explicit DotLexer(std::string_view text) : text_(text) {}

  std::optional<std::string> next() {
    skip();
    if (pos_ >= text_.size()) return std::nullopt;
    char c = text_[pos_];
    if (c == '"') {
      std::string out = "\"";
      ++pos_;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
        out.push_back(text_[pos_++]);
      }
      if (pos_ >= text_.size()) throw DataError("unterminated string in DOT", line_);
      ++pos_;
      return out;
    }
    if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
      pos_ += 2;
      return std::string("--");
    }
    if (std::string_view("{}[];=,").find(c) != std::string_view::npos) {
      ++pos_;
      return std::string(1, c);
    }
    std::string out;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                   text_[pos_] == '_' || text_[pos_] == '.' ||
                                   text_[pos_] == '-' || text_[pos_] == '!')) {
      out.push_back(text_[pos_++]);
    }
    if (out.empty()) throw DataError(std::string("unexpected character '") + c + "' in DOT", line_);
    return out;
  }

  std::size_t line() const { return line_; }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') ++line_;
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

bool is_id(const std::string& tok) {
  return !tok.empty() && (tok.front() == '"' || std::isalnum(static_cast<unsigned char>(tok.front())));
}

std::string id_value(const std::string& tok) {
  return tok.front() == '"' ? tok.substr(1) : tok;
}

}  // namespace

CoauthorshipGraph read_dot(std::string_view dot) {
  DotLexer lex(dot);
  auto expect = [&](const std::string& want) {
    auto t = lex.next();
    if (!t || *t != want) throw DataError("expected '" + want + "' in DOT", lex.line());
  };
  auto kw = lex.next();
  if (!kw || *kw != "graph") throw DataError("DOT document must start with 'graph'", lex.line());
  auto tok = lex.next();
  if (tok && *tok != "{") tok = lex.next();
  if (!tok || *tok != "{") throw DataError("expected '{' in DOT", lex.line());

  std::vector<std::string> order;
  std::set<std::string> seen;
  std::vector<EdgeTriple> edges;
  auto add_node = [&](const std::string& code) {
    if (seen.insert(code).second) order.push_back(code);
  };
  // Parses `[k=v, ...]` and returns the attributes.
  auto attributes = [&]() {
    std::map<std::string, std::string> attrs;
    for (;;) {
      auto key = lex.next();
      if (!key) throw DataError("unterminated attribute list", lex.line());
      if (*key == "]") break;
      if (*key == ",") continue;
      expect("=");
      auto value = lex.next();
      if (!value || !is_id(*value)) throw DataError("attribute without value", lex.line());
      attrs[id_value(*key)] = id_value(*value);
    }
    return attrs;
  };

  for (;;) {
    auto t = lex.next();
    if (!t) throw DataError("missing closing '}' in DOT", lex.line());
    if (*t == "}") break;
    if (*t == ";") continue;
    if (*t == "node" || *t == "edge" || (*t == "graph")) {
      auto br = lex.next();
      if (!br || *br != "[") throw DataError("expected '[' after " + *t, lex.line());
      attributes();
      continue;
    }
    if (!is_id(*t)) throw DataError("unexpected token '" + *t + "' in DOT", lex.line());
    auto a = id_value(*t);
    auto after = lex.next();
    if (after && *after == "--") {
      auto bt = lex.next();
      if (!bt || !is_id(*bt)) throw DataError("edge without second endpoint", lex.line());
      auto b = id_value(*bt);
      add_node(a);
      add_node(b);
      std::int64_t w = 1;
      auto end = lex.next();
      if (end && *end == "[") {
        auto attrs = attributes();
        if (auto it = attrs.find("weight"); it != attrs.end())
          w = parse_int(it->second, lex.line());
        end = lex.next();
      }
      if (!end || *end != ";") throw DataError("expected ';' after edge", lex.line());
      edges.emplace_back(a, b, w);
    } else {
      add_node(a);
      if (after && *after == "[") {
        attributes();
        after = lex.next();
      }
      if (!after || *after != ";") throw DataError("expected ';' after node", lex.line());
    }
  }

  std::vector<NodeAttr> nodes;
  for (auto& c : order) nodes.push_back({std::move(c), std::nullopt, std::nullopt, std::nullopt});
  try {
    return CoauthorshipGraph(std::move(nodes), std::move(edges));
  } catch (const UsageError& e) {
    throw DataError(std::string("invalid DOT graph: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Series

SeriesTable table_from_year_map(const std::map<std::string, std::map<int, std::int64_t>>& data) {
  SeriesTable t;
  t.label_headers = {"year"};
  std::set<int> years;
  for (const auto& [key, by_year] : data) {
    t.columns.push_back(key);
    for (const auto& [y, _] : by_year) years.insert(y);
  }
  for (int y : years) {
    t.labels.push_back({std::to_string(y)});
    t.x.push_back(y);
    std::vector<double> row;
    for (const auto& [key, by_year] : data) {
      auto it = by_year.find(y);
      row.push_back(it == by_year.end() ? 0.0 : static_cast<double>(it->second));
    }
    t.values.push_back(std::move(row));
  }
  return t;
}

SeriesTable table_from_first_years(const FirstYearSeries& series) {
  SeriesTable t;
  t.label_headers = {"year"};
  for (Region r : kAllRegions) t.columns.emplace_back(to_string(r));
  for (std::size_t i = 0; i < series.years.size(); ++i) {
    t.labels.push_back({std::to_string(series.years[i])});
    t.x.push_back(series.years[i]);
    std::vector<double> row;
    for (Region r : kAllRegions) {
      auto it = series.cumulative.find(r);
      row.push_back(it == series.cumulative.end() ? 0.0 : static_cast<double>(it->second[i]));
    }
    t.values.push_back(std::move(row));
  }
  return t;
}

SeriesTable table_from_window_series(const WindowSeries& series,
                                     const std::vector<std::string>& fields) {
  SeriesTable t;
  t.label_headers = {"start_year", "end_year"};
  t.columns = fields.empty() ? std::vector<std::string>{series.metric} : fields;
  for (std::size_t i = 0; i < series.windows.size(); ++i) {
    const auto& w = series.windows[i];
    t.labels.push_back({std::to_string(w.start_year), std::to_string(w.end_year)});
    t.x.push_back(w.end_year);
    std::vector<double> row;
    for (const auto& f : t.columns) row.push_back(summary_field(series.summaries[i], f));
    t.values.push_back(std::move(row));
  }
  return t;
}

ChartKind chart_kind_from_string(std::string_view s) {
  if (s == "none") return ChartKind::none;
  if (s == "line") return ChartKind::line;
  if (s == "bar") return ChartKind::bar;
  throw UsageError("unknown chart kind '" + std::string(s) + "'");
}

std::string series_csv(const SeriesTable& table) {
  std::vector<std::string> header = table.label_headers;
  header.insert(header.end(), table.columns.begin(), table.columns.end());
  std::string out = csv::join_row(header);
  for (std::size_t r = 0; r < table.values.size(); ++r) {
    std::vector<std::string> row = table.labels[r];
    for (double v : table.values[r]) row.push_back(format_number(v));
    out += csv::join_row(row);
  }
  return out;
}

SeriesOutput emit_series(const SeriesTable& table, ChartKind chart, const ChartOptions& options) {
  SeriesOutput out;
  out.csv = series_csv(table);
  if (chart != ChartKind::none) out.svg = render_chart_svg(table, chart, options);
  return out;
}

}  // namespace cnet
