#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cnet/ingest.hpp"

namespace cnet {

/// Inclusive range of publication years.
struct TimeWindow {
  int start_year = 0;
  int end_year = 0;

  bool contains(int year) const noexcept { return year >= start_year && year <= end_year; }
  bool operator==(const TimeWindow&) const = default;
};

/// Throws UsageError when start > end.
TimeWindow make_window(int start_year, int end_year);

struct NodeAttr {
  std::string code;
  // Attributes are absent on graphs read back from interchange formats.
  std::optional<std::int64_t> paper_count;
  std::optional<int> first_year;
  std::optional<Region> region;

  bool operator==(const NodeAttr&) const = default;
};

struct Edge {
  std::size_t u = 0;  // node index, u < v
  std::size_t v = 0;
  std::int64_t weight = 1;

  bool operator==(const Edge&) const = default;
};

/// Undirected, weighted, simple graph over country codes.
///
/// Nodes are kept sorted by code, so node index order is code order; edges
/// are sorted by (u, v) with u < v. Adjacency lists are sorted ascending.
/// Immutable once constructed.
class CoauthorshipGraph {
 public:
  CoauthorshipGraph() = default;

  /// Validates and canonicalizes. Throws UsageError on duplicate codes,
  /// self-loops, duplicate edges, unknown endpoints or non-positive weights.
  CoauthorshipGraph(std::vector<NodeAttr> nodes,
                    std::vector<std::tuple<std::string, std::string, std::int64_t>> edges,
                    std::optional<TimeWindow> window = std::nullopt);

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return nodes_.empty(); }

  const std::vector<NodeAttr>& nodes() const noexcept { return nodes_; }
  const NodeAttr& node(std::size_t i) const { return nodes_.at(i); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<std::size_t>& neighbors(std::size_t i) const { return adj_.at(i); }
  std::size_t degree(std::size_t i) const { return adj_.at(i).size(); }
  const std::optional<TimeWindow>& window() const noexcept { return window_; }

  std::optional<std::size_t> index_of(std::string_view code) const;
  bool has_edge(std::size_t a, std::size_t b) const;
  /// 0 when there is no edge.
  std::int64_t weight(std::size_t a, std::size_t b) const;

  /// True when every node carries a paper count.
  bool has_paper_counts() const;

  bool operator==(const CoauthorshipGraph& other) const {
    return nodes_ == other.nodes_ && edges_ == other.edges_ && window_ == other.window_;
  }

 private:
  std::vector<NodeAttr> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adj_;
  std::unordered_map<std::string, std::size_t> index_;
  std::optional<TimeWindow> window_;
};

/// Unweighted-topology convenience constructor for fixtures and tests.
/// Every listed code becomes a node; edges have weight 1 unless given.
CoauthorshipGraph make_graph(const std::vector<std::string>& codes,
                             const std::vector<std::pair<std::string, std::string>>& edges);

/// Country graph over the records inside `window`.
///
/// Nodes are the registry-resolved countries of in-window records; each pair
/// of distinct countries on one record adds 1 to that edge's weight. First
/// years come from the whole record set. Throws UsageError on start > end.
CoauthorshipGraph build_network(const RecordSet& rs, const CountryRegistry& registry,
                                TimeWindow window);

/// Window spanning the whole corpus, or nullopt on an empty corpus.
std::optional<TimeWindow> corpus_window(const RecordSet& rs);

struct BasicStats {
  std::size_t n = 0;
  std::size_t m = 0;
  double density = 0.0;
  double mean_degree = 0.0;
  std::size_t max_degree = 0;
  std::vector<std::string> max_degree_codes;  // ascending
  std::map<std::string, std::size_t> degree;
};

BasicStats basic_stats(const CoauthorshipGraph& g);

/// Keeps exactly `keep` and the edges among them; attributes are copied.
/// Throws UsageError when a code is not a node of `g`.
CoauthorshipGraph induced_subgraph(const CoauthorshipGraph& g,
                                   const std::set<std::string>& keep);

/// Canonical JSON document (sorted nodes, sorted edges).
std::string graph_to_json(const CoauthorshipGraph& g);
/// Throws DataError on a malformed document.
CoauthorshipGraph graph_from_json(std::string_view text);

}  // namespace cnet
