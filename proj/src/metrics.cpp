#include "cnet/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "cnet/errors.hpp"
#include "parallel.hpp"
#include "random.hpp"

namespace cnet {

void set_max_threads(std::size_t n) { detail::thread_cap().store(n); }

using nlohmann::json;

namespace {

// Sources are reduced in fixed-size blocks so floating-point sums are the
// same for any number of worker threads.
constexpr std::size_t kSourceBlock = 32;

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

std::vector<int> bfs_distances(const CoauthorshipGraph& g, std::size_t source) {
  std::vector<int> dist(g.node_count(), -1);
  std::vector<std::size_t> queue;
  queue.reserve(g.node_count());
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto v = queue[head];
    for (auto w : g.neighbors(v))
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
  }
  return dist;
}

ComponentPartition components(const CoauthorshipGraph& g) {
  ComponentPartition p;
  const auto n = g.node_count();
  std::vector<std::size_t> label(n, n);
  for (std::size_t s = 0; s < n; ++s) {
    if (label[s] != n) continue;
    const auto id = p.members.size();
    std::vector<std::size_t> members{s};
    label[s] = id;
    for (std::size_t head = 0; head < members.size(); ++head)
      for (auto w : g.neighbors(members[head]))
        if (label[w] == n) {
          label[w] = id;
          members.push_back(w);
        }
    std::sort(members.begin(), members.end());
    p.members.push_back(std::move(members));
  }
  for (std::size_t i = 0; i < n; ++i) p.assignment.emplace(g.node(i).code, label[i]);
  for (const auto& m : p.members) {
    p.sizes.push_back(m.size());
    if (m.size() == 1) ++p.isolated_count;
  }
  std::sort(p.sizes.begin(), p.sizes.end(), std::greater<>());
  p.giant_size = p.sizes.empty() ? 0 : p.sizes.front();
  return p;
}

std::vector<std::size_t> giant_component(const CoauthorshipGraph& g) {
  auto p = components(g);
  const std::vector<std::size_t>* best = nullptr;
  for (const auto& m : p.members)
    if (!best || m.size() > best->size()) best = &m;
  return best ? *best : std::vector<std::size_t>{};
}

PathStats path_stats(const CoauthorshipGraph& g) {
  const auto n = g.node_count();
  struct SourceResult {
    std::uint64_t distance_sum = 0;
    std::size_t pairs = 0;
    int eccentricity = 0;
    std::vector<std::size_t> farthest;  // targets > source at eccentricity
  };
  std::vector<SourceResult> per(n);
  detail::parallel_for(n, [&](std::size_t s) {
    auto dist = bfs_distances(g, s);
    auto& r = per[s];
    for (std::size_t t = s + 1; t < n; ++t) {
      if (dist[t] <= 0) continue;
      r.distance_sum += static_cast<std::uint64_t>(dist[t]);
      ++r.pairs;
      if (dist[t] > r.eccentricity) {
        r.eccentricity = dist[t];
        r.farthest.clear();
      }
      if (dist[t] == r.eccentricity) r.farthest.push_back(t);
    }
  });

  PathStats ps;
  std::uint64_t total = 0;
  for (const auto& r : per) {
    total += r.distance_sum;
    ps.connected_pair_count += r.pairs;
    ps.diameter = std::max<std::size_t>(ps.diameter, static_cast<std::size_t>(r.eccentricity));
  }
  if (ps.connected_pair_count > 0)
    ps.mean_path_length =
        static_cast<double>(total) / static_cast<double>(ps.connected_pair_count);
  if (ps.diameter > 0) {
    for (std::size_t s = 0; s < n; ++s)
      if (static_cast<std::size_t>(per[s].eccentricity) == ps.diameter)
        for (auto t : per[s].farthest) ps.diameter_endpoints.emplace_back(g.node(s).code, g.node(t).code);
    std::sort(ps.diameter_endpoints.begin(), ps.diameter_endpoints.end());
  }
  return ps;
}

std::vector<double> betweenness_by_index(const CoauthorshipGraph& g, bool normalized) {
  const auto n = g.node_count();
  std::vector<double> result(n, 0.0);
  if (n == 0) return result;

  const std::size_t blocks = (n + kSourceBlock - 1) / kSourceBlock;
  std::vector<std::vector<double>> partial(blocks, std::vector<double>(n, 0.0));

  detail::parallel_for(blocks, [&](std::size_t b) {
    auto& acc = partial[b];
    std::vector<int> dist(n);
    std::vector<double> sigma(n);
    std::vector<double> delta(n);
    std::vector<std::size_t> order;
    order.reserve(n);
    const std::size_t end = std::min(n, (b + 1) * kSourceBlock);
    for (std::size_t s = b * kSourceBlock; s < end; ++s) {
      std::fill(dist.begin(), dist.end(), -1);
      std::fill(sigma.begin(), sigma.end(), 0.0);
      std::fill(delta.begin(), delta.end(), 0.0);
      order.clear();
      dist[s] = 0;
      sigma[s] = 1.0;
      order.push_back(s);
      for (std::size_t head = 0; head < order.size(); ++head) {
        const auto v = order[head];
        for (auto w : g.neighbors(v)) {
          if (dist[w] < 0) {
            dist[w] = dist[v] + 1;
            order.push_back(w);
          }
          if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
        }
      }
      // Predecessors of w are the neighbours one level closer to s.
      for (std::size_t i = order.size(); i-- > 1;) {
        const auto w = order[i];
        for (auto v : g.neighbors(w))
          if (dist[v] == dist[w] - 1) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
        acc[w] += delta[w];
      }
    }
  });

  for (const auto& block : partial)
    for (std::size_t v = 0; v < n; ++v) result[v] += block[v];
  // Each unordered pair was counted from both ends.
  for (auto& x : result) x /= 2.0;

  if (normalized) {
    if (n < 3) {
      std::fill(result.begin(), result.end(), 0.0);
    } else {
      const double norm = static_cast<double>(n - 1) * static_cast<double>(n - 2) / 2.0;
      for (auto& x : result) x /= norm;
    }
  }
  return result;
}

std::map<std::string, double> betweenness(const CoauthorshipGraph& g) {
  auto values = betweenness_by_index(g);
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < values.size(); ++i) out.emplace(g.node(i).code, values[i]);
  return out;
}

std::vector<double> closeness_by_index(const CoauthorshipGraph& g) {
  const auto n = g.node_count();
  std::vector<double> out(n, 0.0);
  detail::parallel_for(n, [&](std::size_t s) {
    auto dist = bfs_distances(g, s);
    std::uint64_t farness = 0;
    for (auto d : dist)
      if (d > 0) farness += static_cast<std::uint64_t>(d);
    out[s] = farness == 0 ? 0.0 : 1.0 / static_cast<double>(farness);
  });
  return out;
}

std::map<std::string, double> closeness(const CoauthorshipGraph& g) {
  auto values = closeness_by_index(g);
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < values.size(); ++i) out.emplace(g.node(i).code, values[i]);
  return out;
}

std::string_view to_string(ClusteringMode mode) {
  return mode == ClusteringMode::exclude_low_degree ? "exclude_low_degree" : "zero_low_degree";
}

ClusteringMode clustering_mode_from_string(std::string_view name) {
  if (name == "exclude_low_degree") return ClusteringMode::exclude_low_degree;
  if (name == "zero_low_degree") return ClusteringMode::zero_low_degree;
  throw UsageError("unknown clustering mode '" + std::string(name) +
                   "' (expected exclude_low_degree or zero_low_degree)");
}

std::vector<std::optional<double>> local_clustering_by_index(const CoauthorshipGraph& g) {
  const auto n = g.node_count();
  std::vector<std::optional<double>> out(n);
  for (std::size_t v = 0; v < n; ++v) {
    const auto& nb = g.neighbors(v);
    const auto k = nb.size();
    if (k < 2) continue;
    std::size_t links = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        if (g.has_edge(nb[i], nb[j])) ++links;
    out[v] = static_cast<double>(links) / (static_cast<double>(k) * static_cast<double>(k - 1) / 2.0);
  }
  return out;
}

double average_clustering(const std::vector<std::optional<double>>& local, ClusteringMode mode) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& c : local) {
    if (c) {
      sum += *c;
      ++count;
    } else if (mode == ClusteringMode::zero_low_degree) {
      ++count;
    }
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

ClusteringResult clustering(const CoauthorshipGraph& g, ClusteringMode mode) {
  auto local = local_clustering_by_index(g);
  ClusteringResult r;
  for (std::size_t i = 0; i < local.size(); ++i) r.local.emplace(g.node(i).code, local[i]);
  r.average = average_clustering(local, mode);
  return r;
}

DegreeHistogram degree_distribution(const CoauthorshipGraph& g) {
  DegreeHistogram h;
  for (std::size_t i = 0; i < g.node_count(); ++i) ++h.counts[g.degree(i)];
  for (const auto& [k, c] : h.counts) h.probabilities.emplace(k, ratio(c, g.node_count()));
  return h;
}

bool is_clique(const CoauthorshipGraph& g, const std::set<std::string>& codes) {
  std::vector<std::size_t> idx;
  for (const auto& c : codes) {
    auto i = g.index_of(c);
    if (!i) throw UsageError("'" + c + "' is not a node of the graph");
    idx.push_back(*i);
  }
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b)
      if (!g.has_edge(idx[a], idx[b])) return false;
  return true;
}

std::vector<std::string> top_k_by_degree(const CoauthorshipGraph& g, std::size_t k) {
  if (k == 0) throw UsageError("top-k needs k >= 1");
  std::vector<std::size_t> order(g.node_count());
  std::iota(order.begin(), order.end(), 0);
  // Index order is code order, so a stable sort on degree breaks ties by code.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return g.degree(a) > g.degree(b); });
  order.resize(std::min(k, order.size()));
  std::vector<std::string> out;
  out.reserve(order.size());
  for (auto i : order) out.push_back(g.node(i).code);
  return out;
}

std::vector<CentralityRow> centrality_table(const CoauthorshipGraph& g) {
  auto bc = betweenness_by_index(g);
  auto cc = closeness_by_index(g);
  auto lc = local_clustering_by_index(g);
  std::vector<CentralityRow> rows;
  rows.reserve(g.node_count());
  for (std::size_t i = 0; i < g.node_count(); ++i)
    rows.push_back({g.node(i).code, g.degree(i), bc[i], cc[i], lc[i]});
  return rows;
}

CoauthorshipGraph random_graph(std::size_t n, std::size_t m, std::uint64_t seed) {
  const std::uint64_t pairs = n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (m > pairs)
    throw UsageError("cannot place " + std::to_string(m) + " edges on " + std::to_string(n) +
                     " nodes");
  detail::Rng rng(seed);

  // Floyd's subset sampling over pair indices; uniform over m-subsets.
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(m * 2);
  for (std::uint64_t j = pairs - m; j < pairs; ++j) {
    const auto t = rng.below(j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::uint64_t> picked(chosen.begin(), chosen.end());
  std::sort(picked.begin(), picked.end());

  std::vector<std::string> codes(n);
  for (std::size_t i = 0; i < n; ++i) codes[i] = fmt::format("R{:04}", i);
  std::vector<NodeAttr> nodes;
  nodes.reserve(n);
  for (const auto& c : codes) nodes.push_back({c, std::nullopt, std::nullopt, std::nullopt});

  // Pair index p enumerates (0,1), (0,2), ..., (0,n-1), (1,2), ...
  std::vector<std::tuple<std::string, std::string, std::int64_t>> edges;
  edges.reserve(m);
  std::size_t row = 0;
  std::uint64_t row_start = 0;
  for (auto p : picked) {
    while (p >= row_start + (n - 1 - row)) {
      row_start += n - 1 - row;
      ++row;
    }
    const auto col = row + 1 + static_cast<std::size_t>(p - row_start);
    edges.emplace_back(codes[row], codes[col], 1);
  }
  return CoauthorshipGraph(std::move(nodes), std::move(edges));
}

namespace {

struct GiantMetrics {
  double path_length = 0.0;
  double clustering = 0.0;
};

GiantMetrics giant_metrics(const CoauthorshipGraph& g, ClusteringMode mode) {
  auto giant = giant_component(g);
  std::set<std::string> keep;
  for (auto i : giant) keep.insert(g.node(i).code);
  auto sub = induced_subgraph(g, keep);
  return {path_stats(sub).mean_path_length,
          average_clustering(local_clustering_by_index(sub), mode)};
}

}  // namespace

SmallWorldReport small_world(const CoauthorshipGraph& g, std::size_t samples,
                             std::uint64_t seed, ClusteringMode mode) {
  if (samples == 0) throw UsageError("small-world comparison needs at least one sample");
  if (giant_component(g).size() < 3)
    throw UsageError("small-world comparison needs a giant component of at least 3 nodes");

  SmallWorldReport r;
  r.samples = samples;
  r.seed = seed;
  r.clustering_mode = mode;
  const auto actual = giant_metrics(g, mode);
  r.l_actual = actual.path_length;
  r.c_actual = actual.clustering;

  std::vector<GiantMetrics> per(samples);
  detail::parallel_for(samples, [&](std::size_t i) {
    const auto sample_seed = detail::splitmix64(seed ^ detail::splitmix64(i + 1));
    per[i] = giant_metrics(random_graph(g.node_count(), g.edge_count(), sample_seed), mode);
  });
  double l_sum = 0.0;
  double c_sum = 0.0;
  for (const auto& p : per) {
    l_sum += p.path_length;
    c_sum += p.clustering;
  }
  r.l_random_mean = l_sum / static_cast<double>(samples);
  r.c_random_mean = c_sum / static_cast<double>(samples);
  if (r.l_actual > 0 && r.c_actual > 0 && r.l_random_mean > 0 && r.c_random_mean > 0)
    r.sigma = (r.c_actual / r.c_random_mean) / (r.l_actual / r.l_random_mean);
  return r;
}

GraphSummary summary(const CoauthorshipGraph& g, ClusteringMode mode) {
  GraphSummary s;
  s.clustering_mode = mode;
  s.empty = g.empty();
  if (s.empty) return s;
  auto basic = basic_stats(g);
  s.n = basic.n;
  s.m = basic.m;
  s.density = basic.density;
  s.mean_degree = basic.mean_degree;
  s.max_degree = basic.max_degree;
  s.max_degree_codes = basic.max_degree_codes;
  auto paths = path_stats(g);
  s.diameter = paths.diameter;
  s.diameter_endpoints = paths.diameter_endpoints;
  s.mean_path_length = paths.mean_path_length;
  s.clustering = average_clustering(local_clustering_by_index(g), mode);
  auto comp = components(g);
  s.isolated_count = comp.isolated_count;
  s.giant_size = comp.giant_size;
  s.component_count = comp.sizes.size();
  s.isolated_percent = 100.0 * ratio(s.isolated_count, s.n);
  s.giant_percent = 100.0 * ratio(s.giant_size, s.n);
  return s;
}

const std::vector<std::string>& summary_field_names() {
  static const std::vector<std::string> names{
      "n",          "m",          "density",        "mean_degree",      "max_degree",
      "diameter",   "mean_path_length", "clustering", "isolated_count", "isolated_percent",
      "giant_size", "giant_percent",    "component_count"};
  return names;
}

double summary_field(const GraphSummary& s, std::string_view name) {
  auto d = [](std::size_t x) { return static_cast<double>(x); };
  if (name == "n") return d(s.n);
  if (name == "m") return d(s.m);
  if (name == "density") return s.density;
  if (name == "mean_degree") return s.mean_degree;
  if (name == "max_degree") return d(s.max_degree);
  if (name == "diameter") return d(s.diameter);
  if (name == "mean_path_length") return s.mean_path_length;
  if (name == "clustering") return s.clustering;
  if (name == "isolated_count") return d(s.isolated_count);
  if (name == "isolated_percent") return s.isolated_percent;
  if (name == "giant_size") return d(s.giant_size);
  if (name == "giant_percent") return s.giant_percent;
  if (name == "component_count") return d(s.component_count);
  throw UsageError("unknown metric '" + std::string(name) + "'");
}

std::string summary_to_json(const GraphSummary& s) {
  json endpoints = json::array();
  for (const auto& [a, b] : s.diameter_endpoints) endpoints.push_back({a, b});
  json doc = {
      {"empty", s.empty},
      {"nodes", s.n},
      {"links", s.m},
      {"density", s.density},
      {"mean_degree", s.mean_degree},
      {"max_degree", s.max_degree},
      {"max_degree_codes", s.max_degree_codes},
      {"diameter", s.diameter},
      {"diameter_endpoints", endpoints},
      {"mean_path_length", s.mean_path_length},
      {"clustering", s.clustering},
      {"clustering_mode", std::string(to_string(s.clustering_mode))},
      {"isolated_count", s.isolated_count},
      {"isolated_percent", s.isolated_percent},
      {"giant_size", s.giant_size},
      {"giant_percent", s.giant_percent},
      {"component_count", s.component_count},
  };
  return doc.dump(2) + "\n";
}

std::string centrality_to_json(const std::vector<CentralityRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows)
    arr.push_back({{"code", r.code},
                   {"degree", r.degree},
                   {"betweenness", r.betweenness},
                   {"closeness", r.closeness},
                   {"local_clustering",
                    r.local_clustering ? json(*r.local_clustering) : json(nullptr)}});
  return arr.dump(2) + "\n";
}

std::string histogram_to_json(const DegreeHistogram& h) {
  json arr = json::array();
  for (const auto& [k, c] : h.counts)
    arr.push_back({{"k", k}, {"count", c}, {"probability", h.probabilities.at(k)}});
  return arr.dump(2) + "\n";
}

std::string small_world_to_json(const SmallWorldReport& r) {
  json doc = {{"l_actual", r.l_actual},
              {"c_actual", r.c_actual},
              {"l_random_mean", r.l_random_mean},
              {"c_random_mean", r.c_random_mean},
              {"samples", r.samples},
              {"seed", r.seed},
              {"clustering_mode", std::string(to_string(r.clustering_mode))},
              {"sigma", r.sigma ? json(*r.sigma) : json(nullptr)}};
  return doc.dump(2) + "\n";
}

}  // namespace cnet
