#include "cnet/graph.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "cnet/errors.hpp"

namespace cnet {

using nlohmann::json;

TimeWindow make_window(int start_year, int end_year) {
  if (start_year > end_year)
    throw UsageError("window start " + std::to_string(start_year) + " is after end " +
                     std::to_string(end_year));
  return {start_year, end_year};
}

CoauthorshipGraph::CoauthorshipGraph(
    std::vector<NodeAttr> nodes,
    std::vector<std::tuple<std::string, std::string, std::int64_t>> edges,
    std::optional<TimeWindow> window)
    : nodes_(std::move(nodes)), window_(window) {
  if (window_ && window_->start_year > window_->end_year)
    throw UsageError("graph window start is after end");
  std::sort(nodes_.begin(), nodes_.end(),
            [](const NodeAttr& a, const NodeAttr& b) { return a.code < b.code; });
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].code.empty()) throw UsageError("node with empty code");
    if (!index_.emplace(nodes_[i].code, i).second)
      throw UsageError("duplicate node '" + nodes_[i].code + "'");
    if (nodes_[i].paper_count && *nodes_[i].paper_count < 1)
      throw UsageError("node '" + nodes_[i].code + "' has paper count < 1");
  }

  edges_.reserve(edges.size());
  for (auto& [a, b, w] : edges) {
    auto ia = index_of(a);
    auto ib = index_of(b);
    if (!ia || !ib) throw UsageError("edge " + a + "-" + b + " has an unknown endpoint");
    if (*ia == *ib) throw UsageError("self-loop on '" + a + "'");
    if (w < 1) throw UsageError("edge " + a + "-" + b + " has weight < 1");
    const auto& na = nodes_[*ia];
    const auto& nb = nodes_[*ib];
    if ((na.paper_count && w > *na.paper_count) || (nb.paper_count && w > *nb.paper_count))
      throw UsageError("edge " + a + "-" + b + " weight exceeds an endpoint's paper count");
    edges_.push_back({std::min(*ia, *ib), std::max(*ia, *ib), w});
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& x, const Edge& y) {
    return std::tie(x.u, x.v) < std::tie(y.u, y.v);
  });
  for (std::size_t i = 1; i < edges_.size(); ++i)
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v)
      throw UsageError("duplicate edge " + nodes_[edges_[i].u].code + "-" +
                       nodes_[edges_[i].v].code);

  adj_.assign(nodes_.size(), {});
  for (const auto& e : edges_) {
    adj_[e.u].push_back(e.v);
    adj_[e.v].push_back(e.u);
  }
  for (auto& list : adj_) std::sort(list.begin(), list.end());
}

std::optional<std::size_t> CoauthorshipGraph::index_of(std::string_view code) const {
  auto it = index_.find(std::string(code));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool CoauthorshipGraph::has_edge(std::size_t a, std::size_t b) const {
  const auto& list = adj_.at(a);
  return std::binary_search(list.begin(), list.end(), b);
}

std::int64_t CoauthorshipGraph::weight(std::size_t a, std::size_t b) const {
  Edge key{std::min(a, b), std::max(a, b), 0};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key, [](const Edge& x, const Edge& y) {
    return std::tie(x.u, x.v) < std::tie(y.u, y.v);
  });
  if (it == edges_.end() || it->u != key.u || it->v != key.v) return 0;
  return it->weight;
}

bool CoauthorshipGraph::has_paper_counts() const {
  return std::all_of(nodes_.begin(), nodes_.end(),
                     [](const NodeAttr& n) { return n.paper_count.has_value(); });
}

CoauthorshipGraph make_graph(const std::vector<std::string>& codes,
                             const std::vector<std::pair<std::string, std::string>>& edges) {
  std::vector<NodeAttr> nodes;
  nodes.reserve(codes.size());
  for (const auto& c : codes) nodes.push_back({c, std::nullopt, std::nullopt, std::nullopt});
  std::vector<std::tuple<std::string, std::string, std::int64_t>> e;
  e.reserve(edges.size());
  for (const auto& [a, b] : edges) e.emplace_back(a, b, 1);
  return CoauthorshipGraph(std::move(nodes), std::move(e));
}

std::optional<TimeWindow> corpus_window(const RecordSet& rs) {
  auto range = rs.year_range();
  if (!range) return std::nullopt;
  return TimeWindow{range->first, range->second};
}

CoauthorshipGraph build_network(const RecordSet& rs, const CountryRegistry& registry,
                                TimeWindow window) {
  window = make_window(window.start_year, window.end_year);

  std::map<std::string, int> first_year;
  std::map<std::string, NodeAttr> nodes;
  std::map<std::pair<std::string, std::string>, std::int64_t> weights;

  for (const auto& r : rs.records) {
    auto countries = resolve_countries(r, registry);
    for (const auto* c : countries) {
      auto [it, inserted] = first_year.emplace(c->code, r.year);
      if (!inserted) it->second = std::min(it->second, r.year);
    }
    if (!window.contains(r.year)) continue;
    for (const auto* c : countries) {
      auto [it, inserted] = nodes.try_emplace(c->code);
      if (inserted) {
        it->second.code = c->code;
        it->second.paper_count = 0;
        it->second.region = c->region;
      }
      ++*it->second.paper_count;
    }
    for (std::size_t i = 0; i < countries.size(); ++i)
      for (std::size_t j = i + 1; j < countries.size(); ++j) {
        auto a = countries[i]->code;
        auto b = countries[j]->code;
        if (b < a) std::swap(a, b);
        ++weights[{a, b}];
      }
  }

  std::vector<NodeAttr> node_list;
  node_list.reserve(nodes.size());
  for (auto& [code, attr] : nodes) {
    attr.first_year = first_year.at(code);
    node_list.push_back(std::move(attr));
  }
  std::vector<std::tuple<std::string, std::string, std::int64_t>> edge_list;
  edge_list.reserve(weights.size());
  for (const auto& [pair, w] : weights) edge_list.emplace_back(pair.first, pair.second, w);
  return CoauthorshipGraph(std::move(node_list), std::move(edge_list), window);
}

BasicStats basic_stats(const CoauthorshipGraph& g) {
  BasicStats s;
  s.n = g.node_count();
  s.m = g.edge_count();
  if (s.n >= 2)
    s.density = (2.0 * static_cast<double>(s.m)) /
                (static_cast<double>(s.n) * static_cast<double>(s.n - 1));
  if (s.n >= 1) s.mean_degree = 2.0 * static_cast<double>(s.m) / static_cast<double>(s.n);
  for (std::size_t i = 0; i < s.n; ++i) {
    const auto d = g.degree(i);
    s.degree.emplace(g.node(i).code, d);
    if (d > s.max_degree) {
      s.max_degree = d;
      s.max_degree_codes.clear();
    }
    if (d == s.max_degree) s.max_degree_codes.push_back(g.node(i).code);
  }
  return s;
}

CoauthorshipGraph induced_subgraph(const CoauthorshipGraph& g,
                                   const std::set<std::string>& keep) {
  std::vector<NodeAttr> nodes;
  std::vector<bool> kept(g.node_count(), false);
  for (const auto& code : keep) {
    auto idx = g.index_of(code);
    if (!idx) throw UsageError("'" + code + "' is not a node of the graph");
    kept[*idx] = true;
    nodes.push_back(g.node(*idx));
  }
  std::vector<std::tuple<std::string, std::string, std::int64_t>> edges;
  for (const auto& e : g.edges())
    if (kept[e.u] && kept[e.v]) edges.emplace_back(g.node(e.u).code, g.node(e.v).code, e.weight);
  return CoauthorshipGraph(std::move(nodes), std::move(edges), g.window());
}

std::string graph_to_json(const CoauthorshipGraph& g) {
  json doc = json::object();
  doc["format"] = "cnet-graph";
  doc["version"] = 1;
  if (g.window())
    doc["window"] = {{"start_year", g.window()->start_year}, {"end_year", g.window()->end_year}};
  else
    doc["window"] = nullptr;
  json nodes = json::array();
  for (const auto& n : g.nodes()) {
    json node = {{"code", n.code}};
    node["paper_count"] = n.paper_count ? json(*n.paper_count) : json(nullptr);
    node["first_year"] = n.first_year ? json(*n.first_year) : json(nullptr);
    node["region"] = n.region ? json(std::string(to_string(*n.region))) : json(nullptr);
    nodes.push_back(std::move(node));
  }
  doc["nodes"] = std::move(nodes);
  json edges = json::array();
  for (const auto& e : g.edges())
    edges.push_back(
        {{"source", g.node(e.u).code}, {"target", g.node(e.v).code}, {"weight", e.weight}});
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

CoauthorshipGraph graph_from_json(std::string_view text) {
  try {
    auto doc = json::parse(text);
    std::optional<TimeWindow> window;
    if (doc.contains("window") && !doc["window"].is_null())
      window = TimeWindow{doc["window"].at("start_year").get<int>(),
                          doc["window"].at("end_year").get<int>()};
    std::vector<NodeAttr> nodes;
    for (const auto& n : doc.at("nodes")) {
      NodeAttr a;
      a.code = n.at("code").get<std::string>();
      if (n.contains("paper_count") && !n["paper_count"].is_null())
        a.paper_count = n["paper_count"].get<std::int64_t>();
      if (n.contains("first_year") && !n["first_year"].is_null())
        a.first_year = n["first_year"].get<int>();
      if (n.contains("region") && !n["region"].is_null())
        a.region = region_from_string(n["region"].get<std::string>());
      nodes.push_back(std::move(a));
    }
    std::vector<std::tuple<std::string, std::string, std::int64_t>> edges;
    for (const auto& e : doc.at("edges"))
      edges.emplace_back(e.at("source").get<std::string>(), e.at("target").get<std::string>(),
                         e.at("weight").get<std::int64_t>());
    return CoauthorshipGraph(std::move(nodes), std::move(edges), window);
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed graph document: ") + e.what());
  } catch (const UsageError& e) {
    throw DataError(std::string("invalid graph document: ") + e.what());
  }
}

}  // namespace cnet
