#pragma once

// Brute-force reference implementations and fixtures shared by the test
// binaries. Nothing here calls into the library's metric code.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cnet/graph.hpp"
#include "cnet/ingest.hpp"

namespace oracle {

inline constexpr int kInf = std::numeric_limits<int>::max() / 4;

struct Plain {
  std::size_t n = 0;
  std::vector<std::vector<bool>> adj;
  std::vector<std::string> codes;
};

inline Plain plain(const cnet::CoauthorshipGraph& g) {
  Plain p;
  p.n = g.node_count();
  p.adj.assign(p.n, std::vector<bool>(p.n, false));
  for (const auto& nd : g.nodes()) p.codes.push_back(nd.code);
  for (const auto& e : g.edges()) p.adj[e.u][e.v] = p.adj[e.v][e.u] = true;
  return p;
}

inline std::vector<std::vector<int>> floyd(const Plain& p) {
  std::vector<std::vector<int>> d(p.n, std::vector<int>(p.n, kInf));
  for (std::size_t i = 0; i < p.n; ++i) {
    d[i][i] = 0;
    for (std::size_t j = 0; j < p.n; ++j)
      if (p.adj[i][j]) d[i][j] = 1;
  }
  for (std::size_t k = 0; k < p.n; ++k)
    for (std::size_t i = 0; i < p.n; ++i)
      for (std::size_t j = 0; j < p.n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

// Enumerates every geodesic from s to t explicitly.
inline void geodesics(const Plain& p, const std::vector<std::vector<int>>& d, std::size_t s,
                      std::size_t t, std::vector<std::size_t>& path,
                      std::vector<std::vector<std::size_t>>& out) {
  const std::size_t cur = path.back();
  if (cur == t) {
    out.push_back(path);
    return;
  }
  for (std::size_t nxt = 0; nxt < p.n; ++nxt) {
    if (!p.adj[cur][nxt]) continue;
    if (d[s][nxt] != d[s][cur] + 1 || d[nxt][t] != d[cur][t] - 1) continue;
    path.push_back(nxt);
    geodesics(p, d, s, t, path, out);
    path.pop_back();
  }
}

inline std::vector<double> betweenness(const Plain& p) {
  auto d = floyd(p);
  std::vector<double> b(p.n, 0.0);
  for (std::size_t s = 0; s < p.n; ++s)
    for (std::size_t t = s + 1; t < p.n; ++t) {
      if (d[s][t] >= kInf) continue;
      std::vector<std::vector<std::size_t>> paths;
      std::vector<std::size_t> path{s};
      geodesics(p, d, s, t, path, paths);
      for (const auto& gp : paths)
        for (std::size_t i = 1; i + 1 < gp.size(); ++i)
          b[gp[i]] += 1.0 / static_cast<double>(paths.size());
    }
  if (p.n < 3) return std::vector<double>(p.n, 0.0);
  const double norm = static_cast<double>((p.n - 1) * (p.n - 2)) / 2.0;
  for (auto& x : b) x /= norm;
  return b;
}

inline std::vector<double> closeness(const Plain& p) {
  auto d = floyd(p);
  std::vector<double> c(p.n, 0.0);
  for (std::size_t i = 0; i < p.n; ++i) {
    long far = 0;
    for (std::size_t j = 0; j < p.n; ++j)
      if (j != i && d[i][j] < kInf) far += d[i][j];
    c[i] = far > 0 ? 1.0 / static_cast<double>(far) : 0.0;
  }
  return c;
}

inline std::vector<std::optional<double>> local_clustering(const Plain& p) {
  std::vector<std::optional<double>> c(p.n);
  for (std::size_t i = 0; i < p.n; ++i) {
    std::vector<std::size_t> nb;
    for (std::size_t j = 0; j < p.n; ++j)
      if (p.adj[i][j]) nb.push_back(j);
    if (nb.size() < 2) continue;
    std::size_t links = 0;
    for (std::size_t a = 0; a < nb.size(); ++a)
      for (std::size_t b = a + 1; b < nb.size(); ++b)
        if (p.adj[nb[a]][nb[b]]) ++links;
    c[i] = static_cast<double>(links) /
           (static_cast<double>(nb.size() * (nb.size() - 1)) / 2.0);
  }
  return c;
}

inline double average_clustering(const Plain& p, bool zero_low_degree) {
  auto c = local_clustering(p);
  double sum = 0;
  std::size_t count = 0;
  for (const auto& x : c) {
    if (x) {
      sum += *x;
      ++count;
    } else if (zero_low_degree) {
      ++count;
    }
  }
  return count ? sum / static_cast<double>(count) : 0.0;
}

struct Paths {
  int diameter = 0;
  std::vector<std::pair<std::string, std::string>> endpoints;
  double mean = 0;
  std::size_t pairs = 0;
};

inline Paths paths(const Plain& p) {
  auto d = floyd(p);
  Paths r;
  long total = 0;
  for (std::size_t i = 0; i < p.n; ++i)
    for (std::size_t j = i + 1; j < p.n; ++j) {
      if (d[i][j] >= kInf) continue;
      ++r.pairs;
      total += d[i][j];
      if (d[i][j] > r.diameter) {
        r.diameter = d[i][j];
        r.endpoints.clear();
      }
      if (d[i][j] == r.diameter) r.endpoints.emplace_back(p.codes[i], p.codes[j]);
    }
  r.mean = r.pairs ? static_cast<double>(total) / static_cast<double>(r.pairs) : 0.0;
  std::sort(r.endpoints.begin(), r.endpoints.end());
  return r;
}

// Union-find component sizes, descending.
inline std::vector<std::size_t> component_sizes(const Plain& p) {
  std::vector<std::size_t> parent(p.n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < p.n; ++i)
    for (std::size_t j = i + 1; j < p.n; ++j)
      if (p.adj[i][j]) parent[find(i)] = find(j);
  std::map<std::size_t, std::size_t> count;
  for (std::size_t i = 0; i < p.n; ++i) ++count[find(i)];
  std::vector<std::size_t> sizes;
  for (const auto& [root, c] : count) sizes.push_back(c);
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

}  // namespace oracle

namespace fixture {

// Worked example graph: 9 edges stated in prose plus B-D and D-E.
inline cnet::CoauthorshipGraph worked_example() {
  return cnet::make_graph({"A", "B", "C", "D", "E", "F", "G", "H"},
                          {{"A", "B"}, {"A", "G"}, {"A", "H"}, {"G", "H"}, {"F", "C"},
                           {"C", "B"}, {"B", "E"}, {"E", "G"}, {"E", "H"}, {"B", "D"},
                           {"D", "E"}});
}

inline std::string code_name(std::size_t i) {
  std::string s = "N";
  s += static_cast<char>('A' + i / 26);
  s += static_cast<char>('A' + i % 26);
  return s;
}

// Seeded G(n, p) style graph built without touching the library's sampler.
inline cnet::CoauthorshipGraph random_small(std::uint64_t seed, std::size_t max_n = 10) {
  std::mt19937 rng(static_cast<std::uint32_t>(seed * 2654435761u + 17));
  std::uniform_int_distribution<std::size_t> size(1, max_n);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t n = size(rng);
  const double p = unit(rng);
  std::vector<std::string> codes;
  for (std::size_t i = 0; i < n; ++i) codes.push_back(code_name(i));
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (unit(rng) < p) edges.emplace_back(codes[i], codes[j]);
  return cnet::make_graph(codes, edges);
}

inline cnet::CoauthorshipGraph random_weighted(std::uint64_t seed, std::size_t max_n = 40) {
  std::mt19937 rng(static_cast<std::uint32_t>(seed * 97 + 5));
  std::uniform_int_distribution<std::size_t> size(0, max_n);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::int64_t> w(1, 50);
  const std::size_t n = size(rng);
  std::vector<cnet::NodeAttr> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back({code_name(i), 1000, 1990, std::nullopt});
  std::vector<std::tuple<std::string, std::string, std::int64_t>> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (unit(rng) < 0.2) edges.emplace_back(code_name(i), code_name(j), w(rng));
  return cnet::CoauthorshipGraph(nodes, edges);
}

// Display names of the first `count` non-historic built-in countries.
inline std::vector<std::string> country_names(std::size_t count) {
  std::vector<std::string> out;
  for (const auto& e : cnet::builtin_registry().entries()) {
    if (e.historic) continue;
    out.push_back(e.display_name);
    if (out.size() == count) break;
  }
  return out;
}

inline std::string json_escape(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '"' || c == '\\') o += '\\';
    o += c;
  }
  return o;
}

inline std::string record_line(const std::string& id, int year, const std::string& text,
                               const std::vector<std::string>& countries,
                               const std::vector<std::string>& subjects) {
  std::ostringstream os;
  os << "{\"id\":\"" << json_escape(id) << "\",\"year\":" << year << ",\"text\":\"" << json_escape(text)
     << "\",\"countries\":[";
  for (std::size_t i = 0; i < countries.size(); ++i)
    os << (i ? "," : "") << '"' << json_escape(countries[i]) << '"';
  os << "],\"subjects\":[";
  for (std::size_t i = 0; i < subjects.size(); ++i)
    os << (i ? "," : "") << '"' << json_escape(subjects[i]) << '"';
  os << "]}\n";
  return os.str();
}

// A 30-year corpus (1986-2015) whose pool of active countries and yearly
// output both grow with time.
inline std::string densifying_corpus(std::uint64_t seed, std::size_t records_per_year_base = 6) {
  static const std::vector<std::string> subjects{"Physics", "Medicine", "Environmental Science",
                                                 "Agriculture", "Energy"};
  auto names = country_names(60);
  std::mt19937 rng(static_cast<std::uint32_t>(seed + 1));
  std::string out;
  std::size_t id = 0;
  for (int year = 1986; year <= 2015; ++year) {
    const std::size_t pool = std::min<std::size_t>(names.size(), 4 + 2 * (year - 1986));
    const std::size_t count = records_per_year_base + static_cast<std::size_t>(year - 1986);
    for (std::size_t r = 0; r < count; ++r) {
      std::uniform_int_distribution<std::size_t> k(0, 4);
      std::uniform_int_distribution<std::size_t> pick(0, pool - 1);
      std::set<std::string> cs;
      const std::size_t want = k(rng);
      while (cs.size() < want) cs.insert(names[pick(rng)]);
      std::vector<std::string> subj;
      std::uniform_int_distribution<std::size_t> s(0, subjects.size() - 1);
      if (rng() % 4 != 0) subj.push_back(subjects[s(rng)]);
      const char* text = rng() % 5 == 0 ? "Reactor safety review" : "Chernobyl fallout study";
      out += record_line("r" + std::to_string(id++), year, text, {cs.begin(), cs.end()}, subj);
    }
  }
  return out;
}

// `records` papers over `countries` countries spread across 1986-2015.
inline std::string scale_corpus(std::size_t records, std::size_t countries, std::uint64_t seed) {
  auto names = country_names(countries);
  std::mt19937 rng(static_cast<std::uint32_t>(seed + 7));
  std::uniform_int_distribution<int> year(1986, 2015);
  std::uniform_int_distribution<std::size_t> pick(0, names.size() - 1);
  std::uniform_int_distribution<std::size_t> k(0, 6);
  std::string out;
  for (std::size_t i = 0; i < records; ++i) {
    std::set<std::string> cs;
    const std::size_t want = k(rng);
    while (cs.size() < want) cs.insert(names[pick(rng)]);
    out += record_line("s" + std::to_string(i), year(rng), "Chornobyl study",
                       {cs.begin(), cs.end()}, {"Physics"});
  }
  return out;
}

// Registry plus corpus realizing the worked-example graph, one joint paper
// per edge.
inline std::string worked_example_registry_csv() {
  std::string csv = "code,display_name,region,historic,aliases\n";
  for (char c = 'A'; c <= 'H'; ++c)
    csv += std::string("N") + c + ",Node " + c + ",Europe,false,\n";
  return csv;
}

inline std::string worked_example_corpus() {
  const std::vector<std::pair<char, char>> edges{{'A', 'B'}, {'A', 'G'}, {'A', 'H'}, {'G', 'H'},
                                                 {'F', 'C'}, {'C', 'B'}, {'B', 'E'}, {'E', 'G'},
                                                 {'E', 'H'}, {'B', 'D'}, {'D', 'E'}};
  std::string out;
  int i = 0;
  for (const auto& [a, b] : edges)
    out += record_line("f" + std::to_string(i++), 1986, "Chernobyl",
                       {std::string("Node ") + a, std::string("Node ") + b}, {"Physics"});
  return out;
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("cnet_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace fixture
