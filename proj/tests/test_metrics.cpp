#include <doctest.h>

#include <nlohmann/json.hpp>

#include "cnet/errors.hpp"
#include "cnet/metrics.hpp"
#include "support.hpp"

using namespace cnet;

namespace {

CoauthorshipGraph path(std::size_t n) {
  std::vector<std::string> codes;
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    codes.push_back(std::string(1, static_cast<char>('A' + i)));
    if (i) edges.emplace_back(codes[i - 1], codes[i]);
  }
  return make_graph(codes, edges);
}

CoauthorshipGraph complete(std::size_t n) {
  std::vector<std::string> codes;
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t i = 0; i < n; ++i) codes.push_back(fixture::code_name(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(codes[i], codes[j]);
  return make_graph(codes, edges);
}

CoauthorshipGraph cycle(std::size_t n) {
  std::vector<std::string> codes;
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t i = 0; i < n; ++i) codes.push_back(fixture::code_name(i));
  for (std::size_t i = 0; i < n; ++i) edges.emplace_back(codes[i], codes[(i + 1) % n]);
  return make_graph(codes, edges);
}

CoauthorshipGraph star3() { return make_graph({"C", "L1", "L2", "L3"}, {{"C", "L1"}, {"C", "L2"}, {"C", "L3"}}); }

CoauthorshipGraph ring_lattice(std::size_t n) {
  std::vector<std::string> codes;
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t i = 0; i < n; ++i) codes.push_back(fixture::code_name(i));
  for (std::size_t i = 0; i < n; ++i) {
    edges.emplace_back(codes[i], codes[(i + 1) % n]);
    edges.emplace_back(codes[i], codes[(i + 2) % n]);
  }
  return make_graph(codes, edges);
}

}  // namespace

TEST_CASE("components") {
  auto c = components(make_graph({"A", "B", "C"}, {{"A", "B"}}));
  CHECK(c.sizes == std::vector<std::size_t>{2, 1});
  CHECK(c.giant_size == 2);
  CHECK(c.isolated_count == 1);
  CHECK(c.assignment.at("A") == c.assignment.at("B"));

  auto fig = components(fixture::worked_example());
  CHECK(fig.sizes == std::vector<std::size_t>{8});
  CHECK(fig.isolated_count == 0);

  auto empty = components(CoauthorshipGraph{});
  CHECK(empty.sizes.empty());
  CHECK(empty.giant_size == 0);
}

TEST_CASE("component ids follow smallest member code") {
  auto g = make_graph({"A", "B", "C", "D", "E"}, {{"B", "E"}, {"A", "D"}});
  auto c = components(g);
  CHECK(c.assignment.at("A") == 0);
  CHECK(c.assignment.at("D") == 0);
  CHECK(c.assignment.at("B") == 1);
  CHECK(c.assignment.at("E") == 1);
  CHECK(c.assignment.at("C") == 2);
}

TEST_CASE("path statistics") {
  auto fig = path_stats(fixture::worked_example());
  CHECK(fig.diameter == 4);
  auto has = [&](const char* a, const char* b) {
    return std::find(fig.diameter_endpoints.begin(), fig.diameter_endpoints.end(),
                     std::pair<std::string, std::string>{a, b}) != fig.diameter_endpoints.end();
  };
  CHECK(has("F", "G"));
  CHECK(has("F", "H"));
  CHECK(std::is_sorted(fig.diameter_endpoints.begin(), fig.diameter_endpoints.end()));

  auto k4 = path_stats(complete(4));
  CHECK(k4.diameter == 1);
  CHECK(k4.mean_path_length == 1.0);

  auto p4 = path_stats(path(4));
  CHECK(p4.diameter == 3);
  CHECK(p4.mean_path_length == doctest::Approx(10.0 / 6.0).epsilon(1e-12));
  CHECK(p4.connected_pair_count == 6);

  auto none = path_stats(make_graph({"A", "B"}, {}));
  CHECK(none.diameter == 0);
  CHECK(none.mean_path_length == 0.0);
}

TEST_CASE("betweenness examples") {
  auto p3 = betweenness(path(3));
  CHECK(p3.at("B") == 1.0);
  CHECK(p3.at("A") == 0.0);
  CHECK(p3.at("C") == 0.0);

  auto s = betweenness(star3());
  CHECK(s.at("C") == doctest::Approx(1.0));
  CHECK(s.at("L1") == 0.0);

  auto c5 = betweenness(cycle(5));
  auto oracle_c5 = oracle::betweenness(oracle::plain(cycle(5)));
  for (const auto& [code, v] : c5) CHECK(v == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  for (double v : oracle_c5) CHECK(v == doctest::Approx(1.0 / 6.0).epsilon(1e-12));

  auto two = betweenness(make_graph({"A", "B"}, {{"A", "B"}}));
  CHECK(two.at("A") == 0.0);
}

TEST_CASE("betweenness normalizer uses global n") {
  // Path A-B-C plus an isolated node: n = 4, normalizer 3.
  auto g = make_graph({"A", "B", "C", "D"}, {{"A", "B"}, {"B", "C"}});
  CHECK(betweenness(g).at("B") == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("closeness examples") {
  auto p3 = closeness(path(3));
  CHECK(p3.at("B") == 0.5);
  CHECK(p3.at("A") == doctest::Approx(1.0 / 3.0));
  for (const auto& [code, v] : closeness(complete(4))) CHECK(v == doctest::Approx(1.0 / 3.0));
  for (const auto& [code, v] : closeness(make_graph({"A", "B", "C", "D"}, {{"A", "B"}, {"C", "D"}})))
    CHECK(v == 1.0);
  CHECK(closeness(make_graph({"A"}, {})).at("A") == 0.0);
}

TEST_CASE("clustering examples") {
  auto fig = clustering(fixture::worked_example());
  CHECK(*fig.local.at("A") == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  auto tri = complete(3);
  for (auto mode : {ClusteringMode::exclude_low_degree, ClusteringMode::zero_low_degree}) {
    auto r = clustering(tri, mode);
    CHECK(r.average == 1.0);
    for (const auto& [code, v] : r.local) CHECK(*v == 1.0);
  }

  auto s = clustering(star3());
  CHECK(*s.local.at("C") == 0.0);
  CHECK_FALSE(s.local.at("L1").has_value());
  CHECK(s.average == 0.0);

  // Triangle plus a pendant: exclusion versus zero-counting differ.
  auto g = make_graph({"A", "B", "C", "D"}, {{"A", "B"}, {"B", "C"}, {"A", "C"}, {"C", "D"}});
  auto ex = clustering(g, ClusteringMode::exclude_low_degree);
  auto zero = clustering(g, ClusteringMode::zero_low_degree);
  CHECK(ex.average == doctest::Approx((1.0 + 1.0 + 1.0 / 3.0) / 3.0));
  CHECK(zero.average == doctest::Approx((1.0 + 1.0 + 1.0 / 3.0) / 4.0));
  CHECK(clustering_mode_from_string("zero_low_degree") == ClusteringMode::zero_low_degree);
  CHECK_THROWS_AS(clustering_mode_from_string("mean"), UsageError);
}

TEST_CASE("degree distribution") {
  auto s = degree_distribution(star3());
  CHECK(s.counts.at(1) == 3);
  CHECK(s.probabilities.at(1) == 0.75);
  CHECK(s.probabilities.at(3) == 0.25);
  auto c5 = degree_distribution(cycle(5));
  CHECK(c5.probabilities.size() == 1);
  CHECK(c5.probabilities.at(2) == 1.0);
  auto fig = degree_distribution(fixture::worked_example());
  CHECK(fig.counts.count(3));
  CHECK(fig.counts.count(4));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto h = degree_distribution(fixture::random_weighted(seed));
    if (h.counts.empty()) continue;
    double sum = 0;
    for (const auto& [k, p] : h.probabilities) sum += p;
    CHECK(std::abs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("clique checks") {
  auto tri = make_graph({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}, {"A", "C"}});
  CHECK(is_clique(tri, {"A", "B", "C"}));
  CHECK_FALSE(is_clique(path(3), {"A", "B", "C"}));
  CHECK(is_clique(path(3), {"A"}));
  CHECK_THROWS_AS(is_clique(tri, {"Q"}), UsageError);
}

TEST_CASE("top-k by degree") {
  auto g = make_graph({"A", "B", "C", "D", "E", "F", "G"},
                      {{"A", "D"}, {"A", "E"}, {"A", "F"}, {"B", "D"}, {"B", "E"}, {"B", "F"},
                       {"B", "G"}, {"C", "D"}, {"C", "E"}, {"C", "G"}});
  CHECK(top_k_by_degree(g, 2) == std::vector<std::string>{"B", "A"});
  CHECK(top_k_by_degree(fixture::worked_example(), 1) == std::vector<std::string>{"B"});
  auto all = top_k_by_degree(g, 100);
  CHECK(all.size() == 7);
  CHECK(all.front() == "B");
  CHECK_THROWS_AS(top_k_by_degree(g, 0), UsageError);
}

TEST_CASE("top-k ignores input order") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto g = fixture::random_weighted(seed, 25);
    auto nodes = g.nodes();
    std::vector<std::tuple<std::string, std::string, std::int64_t>> edges;
    for (const auto& e : g.edges()) edges.emplace_back(g.node(e.v).code, g.node(e.u).code, e.weight);
    std::reverse(nodes.begin(), nodes.end());
    std::reverse(edges.begin(), edges.end());
    CoauthorshipGraph shuffled(nodes, edges);
    CHECK(top_k_by_degree(shuffled, 5) == top_k_by_degree(g, 5));
  }
}

TEST_CASE("production metrics agree with the brute-force oracle") {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    auto g = fixture::random_small(seed);
    auto p = oracle::plain(g);
    auto b = betweenness_by_index(g);
    auto ob = oracle::betweenness(p);
    auto c = closeness_by_index(g);
    auto oc = oracle::closeness(p);
    auto lc = local_clustering_by_index(g);
    auto olc = oracle::local_clustering(p);
    for (std::size_t i = 0; i < g.node_count(); ++i) {
      CHECK(std::abs(b[i] - ob[i]) <= 1e-9);
      CHECK(b[i] >= 0.0);
      CHECK(b[i] <= 1.0 + 1e-12);
      CHECK(std::abs(c[i] - oc[i]) <= 1e-9);
      REQUIRE(lc[i].has_value() == olc[i].has_value());
      if (lc[i]) CHECK(std::abs(*lc[i] - *olc[i]) <= 1e-9);
    }
    auto ps = path_stats(g);
    auto ops = oracle::paths(p);
    CHECK(ps.diameter == static_cast<std::size_t>(ops.diameter));
    CHECK(ps.diameter_endpoints == ops.endpoints);
    CHECK(std::abs(ps.mean_path_length - ops.mean) <= 1e-9);
    CHECK(ps.connected_pair_count == ops.pairs);
    CHECK(components(g).sizes == oracle::component_sizes(p));
    CHECK(std::abs(clustering(g).average - oracle::average_clustering(p, false)) <= 1e-9);
    CHECK(std::abs(clustering(g, ClusteringMode::zero_low_degree).average -
                   oracle::average_clustering(p, true)) <= 1e-9);
  }
}

TEST_CASE("unnormalized betweenness sums to interior geodesic incidences") {
  for (std::uint64_t seed = 500; seed < 560; ++seed) {
    auto g = fixture::random_small(seed, 8);
    auto p = oracle::plain(g);
    auto d = oracle::floyd(p);
    double incidences = 0;
    for (std::size_t s = 0; s < p.n; ++s)
      for (std::size_t t = s + 1; t < p.n; ++t) {
        if (d[s][t] >= oracle::kInf) continue;
        // Every geodesic of length L has L-1 interior nodes; weights 1/sigma sum to 1.
        incidences += static_cast<double>(d[s][t] - 1);
      }
    auto raw = betweenness_by_index(g, false);
    double sum = 0;
    for (double v : raw) sum += v;
    CHECK(sum == doctest::Approx(incidences).epsilon(1e-9));
  }
}

TEST_CASE("closeness never decreases when an edge joins a component") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto g = fixture::random_small(seed, 9);
    if (g.node_count() < 3) continue;
    auto comp = components(g);
    // Add a missing edge inside one component.
    std::optional<std::pair<std::size_t, std::size_t>> add;
    for (std::size_t i = 0; i < g.node_count() && !add; ++i)
      for (std::size_t j = i + 1; j < g.node_count() && !add; ++j)
        if (!g.has_edge(i, j) &&
            comp.assignment.at(g.node(i).code) == comp.assignment.at(g.node(j).code))
          add = {i, j};
    if (!add) continue;
    std::vector<std::tuple<std::string, std::string, std::int64_t>> edges;
    for (const auto& e : g.edges()) edges.emplace_back(g.node(e.u).code, g.node(e.v).code, 1);
    edges.emplace_back(g.node(add->first).code, g.node(add->second).code, 1);
    CoauthorshipGraph h(g.nodes(), edges);
    auto before = closeness_by_index(g);
    auto after = closeness_by_index(h);
    for (std::size_t i = 0; i < g.node_count(); ++i) CHECK(after[i] >= before[i]);
  }
}

TEST_CASE("results do not depend on the thread count") {
  auto g = fixture::random_weighted(77, 40);
  auto ring = ring_lattice(30);
  set_max_threads(1);
  auto b1 = betweenness_by_index(g);
  auto c1 = closeness_by_index(g);
  auto p1 = path_stats(g);
  auto s1 = small_world_to_json(small_world(ring, 40, 5));
  set_max_threads(4);
  auto b4 = betweenness_by_index(g);
  auto c4 = closeness_by_index(g);
  auto p4 = path_stats(g);
  auto s4 = small_world_to_json(small_world(ring, 40, 5));
  set_max_threads(0);
  CHECK(b1 == b4);
  CHECK(c1 == c4);
  CHECK(p1.mean_path_length == p4.mean_path_length);
  CHECK(p1.diameter_endpoints == p4.diameter_endpoints);
  CHECK(s1 == s4);
}

TEST_CASE("random baseline graph") {
  auto g = random_graph(30, 60, 4);
  CHECK(g.node_count() == 30);
  CHECK(g.edge_count() == 60);
  CHECK(random_graph(30, 60, 4) == g);
  CHECK_FALSE(random_graph(30, 60, 5) == g);
  CHECK(random_graph(5, 10, 1).edge_count() == 10);
  CHECK_THROWS_AS(random_graph(5, 11, 1), UsageError);
}

TEST_CASE("small-world comparison") {
  auto k10 = small_world(complete(10), 20, 0);
  REQUIRE(k10.sigma);
  CHECK(*k10.sigma == 1.0);

  auto ring = small_world(ring_lattice(20), 100, 0);
  REQUIRE(ring.sigma);
  CHECK(*ring.sigma > 1.0);

  auto a = small_world(ring_lattice(20), 30, 9);
  auto b = small_world(ring_lattice(20), 30, 9);
  CHECK(a.l_random_mean == b.l_random_mean);
  CHECK(a.c_random_mean == b.c_random_mean);
  CHECK(a.sigma == b.sigma);
  CHECK(small_world_to_json(a) == small_world_to_json(b));

  CHECK_THROWS_AS(small_world(path(2), 10, 0), UsageError);
  CHECK_THROWS_AS(small_world(ring_lattice(20), 0, 0), UsageError);

  // A tree has zero clustering, so sigma is undefined.
  auto tree = small_world(path(6), 10, 0);
  CHECK_FALSE(tree.sigma);
}

TEST_CASE("summary") {
  auto s = summary(fixture::worked_example());
  CHECK_FALSE(s.empty);
  CHECK(s.n == 8);
  CHECK(s.m == 11);
  CHECK(s.density == doctest::Approx(11.0 / 28.0));
  CHECK(s.diameter == 4);
  CHECK(s.isolated_count == 0);
  CHECK(s.isolated_percent == 0.0);
  CHECK(s.giant_size == 8);
  CHECK(s.giant_percent == 100.0);
  CHECK(s.max_degree_codes == std::vector<std::string>{"B", "E"});

  auto e = summary(CoauthorshipGraph{});
  CHECK(e.empty);
  CHECK(e.n == 0);
  CHECK(e.density == 0.0);
  CHECK(e.giant_percent == 0.0);

  CHECK(summary_field(s, "m") == 11.0);
  CHECK(summary_field(s, "mean_degree") == doctest::Approx(22.0 / 8.0));
  CHECK_THROWS_AS(summary_field(s, "nope"), UsageError);

  auto doc = nlohmann::json::parse(summary_to_json(s));
  CHECK(doc["nodes"] == 8);
  CHECK(doc["links"] == 11);
}

TEST_CASE("summary matches oracle on generated graphs") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto g = fixture::random_small(seed * 3 + 1);
    auto p = oracle::plain(g);
    auto s = summary(g);
    auto sizes = oracle::component_sizes(p);
    CHECK(s.giant_size == (sizes.empty() ? 0 : sizes.front()));
    CHECK(s.component_count == sizes.size());
    CHECK(s.isolated_count ==
          static_cast<std::size_t>(std::count(sizes.begin(), sizes.end(), std::size_t{1})));
    CHECK(s.diameter == static_cast<std::size_t>(oracle::paths(p).diameter));
    CHECK(std::abs(s.clustering - oracle::average_clustering(p, false)) <= 1e-9);
  }
}

TEST_CASE("centrality json is sorted by code") {
  auto rows = centrality_table(fixture::worked_example());
  auto doc = nlohmann::json::parse(centrality_to_json(rows));
  REQUIRE(doc.size() == 8);
  for (std::size_t i = 1; i < doc.size(); ++i)
    CHECK(doc[i - 1]["code"].get<std::string>() < doc[i]["code"].get<std::string>());
  auto h = nlohmann::json::parse(histogram_to_json(degree_distribution(fixture::worked_example())));
  for (std::size_t i = 1; i < h.size(); ++i) CHECK(h[i - 1]["k"] < h[i]["k"]);
}
