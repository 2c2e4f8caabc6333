#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cnet/graph.hpp"

namespace cnet {

// All metrics here are topological: edge weights are ignored.

/// Caps the worker threads used by the metrics and temporal modules;
/// 0 restores the hardware default. Results do not depend on the setting.
void set_max_threads(std::size_t n);

struct ComponentPartition {
  std::map<std::string, std::size_t> assignment;  // code -> component id
  std::vector<std::size_t> sizes;                 // descending
  std::size_t giant_size = 0;
  std::size_t isolated_count = 0;
  // Members of each component by id, ascending index. Component ids are
  // ordered by their smallest member code.
  std::vector<std::vector<std::size_t>> members;
};

/// Breadth-first component labelling.
ComponentPartition components(const CoauthorshipGraph& g);

/// Node indices of the largest component (ties: smallest id). Empty on an
/// empty graph.
std::vector<std::size_t> giant_component(const CoauthorshipGraph& g);

struct PathStats {
  std::size_t diameter = 0;
  std::vector<std::pair<std::string, std::string>> diameter_endpoints;  // sorted, first < second
  double mean_path_length = 0.0;
  std::size_t connected_pair_count = 0;
};

/// All-pairs BFS over unordered pairs of distinct, mutually reachable nodes.
PathStats path_stats(const CoauthorshipGraph& g);

/// BFS hop distances from `source`; unreachable nodes get -1.
std::vector<int> bfs_distances(const CoauthorshipGraph& g, std::size_t source);

/// Pairwise-dependency betweenness (Brandes accumulation) normalized by
/// (n-1)(n-2)/2 with the global node count. All zero when n < 3.
std::map<std::string, double> betweenness(const CoauthorshipGraph& g);
/// Same values indexed by node; `normalized = false` gives raw pair sums.
std::vector<double> betweenness_by_index(const CoauthorshipGraph& g, bool normalized = true);

/// 1 / (sum of distances within the node's component); 0 for isolated nodes.
std::map<std::string, double> closeness(const CoauthorshipGraph& g);
std::vector<double> closeness_by_index(const CoauthorshipGraph& g);

enum class ClusteringMode { exclude_low_degree, zero_low_degree };
std::string_view to_string(ClusteringMode mode);
ClusteringMode clustering_mode_from_string(std::string_view name);

struct ClusteringResult {
  // nullopt for nodes of degree < 2.
  std::map<std::string, std::optional<double>> local;
  double average = 0.0;
};

ClusteringResult clustering(const CoauthorshipGraph& g,
                            ClusteringMode mode = ClusteringMode::exclude_low_degree);
std::vector<std::optional<double>> local_clustering_by_index(const CoauthorshipGraph& g);
double average_clustering(const std::vector<std::optional<double>>& local, ClusteringMode mode);

struct DegreeHistogram {
  std::map<std::size_t, std::size_t> counts;
  std::map<std::size_t, double> probabilities;
};

DegreeHistogram degree_distribution(const CoauthorshipGraph& g);

/// True iff every pair of `codes` is linked. Throws UsageError on an
/// unknown code.
bool is_clique(const CoauthorshipGraph& g, const std::set<std::string>& codes);

/// Descending degree, ties by ascending code. Throws UsageError when k == 0.
std::vector<std::string> top_k_by_degree(const CoauthorshipGraph& g, std::size_t k);

struct CentralityRow {
  std::string code;
  std::size_t degree = 0;
  double betweenness = 0.0;
  double closeness = 0.0;
  std::optional<double> local_clustering;
};

/// One row per node, sorted by code.
std::vector<CentralityRow> centrality_table(const CoauthorshipGraph& g);

struct SmallWorldReport {
  double l_actual = 0.0;
  double c_actual = 0.0;
  double l_random_mean = 0.0;
  double c_random_mean = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  ClusteringMode clustering_mode = ClusteringMode::exclude_low_degree;
  // nullopt when any of the four inputs is zero.
  std::optional<double> sigma;
};

/// Compares the giant component's mean path length and average clustering
/// with `samples` uniform random graphs of the same node and edge count.
/// Reproducible from `seed` regardless of thread count.
/// Throws UsageError when the giant component has fewer than 3 nodes or
/// samples == 0.
SmallWorldReport small_world(const CoauthorshipGraph& g, std::size_t samples,
                             std::uint64_t seed,
                             ClusteringMode mode = ClusteringMode::exclude_low_degree);

/// Uniform draw from all simple graphs with n nodes and m edges. Node codes
/// are "R0000", "R0001", ... Throws UsageError when m > n(n-1)/2.
CoauthorshipGraph random_graph(std::size_t n, std::size_t m, std::uint64_t seed);

struct GraphSummary {
  bool empty = true;
  std::size_t n = 0;
  std::size_t m = 0;
  double density = 0.0;
  double mean_degree = 0.0;
  std::size_t max_degree = 0;
  std::vector<std::string> max_degree_codes;
  std::size_t diameter = 0;
  std::vector<std::pair<std::string, std::string>> diameter_endpoints;
  double mean_path_length = 0.0;
  double clustering = 0.0;
  ClusteringMode clustering_mode = ClusteringMode::exclude_low_degree;
  std::size_t isolated_count = 0;
  double isolated_percent = 0.0;
  std::size_t giant_size = 0;
  double giant_percent = 0.0;
  std::size_t component_count = 0;
};

GraphSummary summary(const CoauthorshipGraph& g,
                     ClusteringMode mode = ClusteringMode::exclude_low_degree);

/// Named numeric field of a summary, for time series. Names: n, m, density,
/// mean_degree, max_degree, diameter, mean_path_length, clustering,
/// isolated_count, isolated_percent, giant_size, giant_percent,
/// component_count. Throws UsageError on anything else.
double summary_field(const GraphSummary& s, std::string_view name);
const std::vector<std::string>& summary_field_names();

// JSON documents for the metric artifacts.
std::string summary_to_json(const GraphSummary& s);
std::string centrality_to_json(const std::vector<CentralityRow>& rows);
std::string histogram_to_json(const DegreeHistogram& h);
std::string small_world_to_json(const SmallWorldReport& r);

}  // namespace cnet
