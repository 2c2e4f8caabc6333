#include "cnet/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "cnet/errors.hpp"
#include "cnet/export.hpp"
#include "cnet/graph.hpp"
#include "cnet/ingest.hpp"
#include "cnet/metrics.hpp"
#include "cnet/temporal.hpp"

namespace cnet {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::string_view kUsage = R"(usage: cnet <command> [options]

commands:
  ingest    parse and topic-filter a record file   -> records.jsonl, coverage.json
  build     country coauthorship graph             -> graph.json
  metrics   summary, centralities, small-world     -> summary.json, centrality.json, ...
  slice     per-window series and yearly series    -> series.csv, disciplines.csv, ...
  densify   densification fit over snapshots       -> densification.json, densification.csv
  export    Pajek, DOT and SVG renderings          -> network.net, network.dot, network.svg
  report    run every stage and write report.md

options:
  --input PATH          record file (ingest, report) or stage input
  --format jsonl|csv    record file format (default jsonl)
  --variants PATH       topic variants, one per line (default: chernobyl, chornobyl)
  --no-filter           keep every record regardless of topic
  --registry PATH       country registry CSV (default: built-in)
  --window-length N     window length in years (default 5)
  --step N              window step in years (default 5)
  --mode MODE           sliding|cumulative (default: sliding for slice, cumulative for densify)
  --clustering-mode M   exclude_low_degree|zero_low_degree
  --sw-samples N        random graphs for the small-world comparison (default 100)
  --seed N              random seed (default 0)
  --layout KIND         circular|grouped_circles|center_top_k|year_bands
  --size-attr ATTR      paper_count|degree|none
  --gamma G             node/edge size exponent in (0,1] (default 0.5)
  --top-k K             inner-circle size for center_top_k (default 10)
  --out DIR             output directory (default out)
  --config PATH         start from a config.json written by an earlier run
)";

const std::vector<std::string> kCommands{"ingest", "build",  "metrics", "slice",
                                         "densify", "export", "report"};

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& p, std::string_view text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + p.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("error while writing " + p.string());
}

class Pipeline {
 public:
  Pipeline(RunConfig cfg, std::ostream& log) : cfg_(std::move(cfg)), log_(log) {
    // Validate enumerations up front so a bad flag fails before any work.
    input_format_from_string(cfg_.format);
    clustering_ = clustering_mode_from_string(cfg_.clustering_mode);
    if (!cfg_.mode.empty()) window_mode_from_string(cfg_.mode);
    layout_kind_from_string(cfg_.layout);
    size_attr_from_string(cfg_.size_attr);
    if (cfg_.window_length < 1) throw UsageError("--window-length must be >= 1");
    if (cfg_.step < 1) throw UsageError("--step must be >= 1");
    if (cfg_.out.empty()) throw UsageError("--out must not be empty");
    out_ = cfg_.out;
    if (!cfg_.registry.empty()) registry_ = CountryRegistry::load(cfg_.registry);
    std::error_code ec;
    fs::create_directories(out_, ec);
    if (ec) throw IoError("cannot create output directory " + out_.string());
  }

  const CountryRegistry& registry() const {
    return registry_ ? *registry_ : builtin_registry();
  }

  void echo_config() {
    write(out_ / "config.json", cfg_.to_json());
  }

  void ingest() {
    if (cfg_.input.empty()) throw UsageError("ingest needs --input");
    auto rs = parse_records(cfg_.input, input_format_from_string(cfg_.format), registry());
    if (!cfg_.no_filter) {
      auto variants =
          cfg_.variants.empty() ? default_topic_variants() : load_variants(cfg_.variants);
      rs = filter_topic(rs, variants, registry());
    }
    write(out_ / "records.jsonl", write_jsonl(rs));
    json unknown = json::array();
    for (const auto& [name, count] : rs.coverage.unknown_country_names)
      unknown.push_back({{"name", name}, {"count", count}});
    json cov = {{"total", rs.coverage.total},
                {"with_affiliation", rs.coverage.with_affiliation},
                {"affiliation_fraction", rs.coverage.affiliation_fraction},
                {"empty_corpus", rs.coverage.empty_corpus},
                {"unknown_country_names", unknown}};
    write(out_ / "coverage.json", cov.dump(2) + "\n");
  }

  void build(const std::string& records_path) {
    auto rs = load_records(records_path);
    CoauthorshipGraph g;
    if (auto window = corpus_window(rs)) g = build_network(rs, registry(), *window);
    write(out_ / "graph.json", graph_to_json(g));
  }

  void metrics(const std::string& graph_path) {
    auto g = load_graph(graph_path);
    write(out_ / "summary.json", summary_to_json(summary(g, clustering_)));
    write(out_ / "centrality.json", centrality_to_json(centrality_table(g)));
    write(out_ / "histogram.json", histogram_to_json(degree_distribution(g)));
    std::string sw;
    try {
      sw = small_world_to_json(small_world(g, cfg_.sw_samples, cfg_.seed, clustering_));
    } catch (const UsageError& e) {
      sw = json{{"skipped", e.what()}, {"samples", cfg_.sw_samples}, {"seed", cfg_.seed}}.dump(2) +
           "\n";
    }
    write(out_ / "small_world.json", sw);
  }

  void slice_series(const std::string& records_path) {
    auto rs = load_records(records_path);
    const auto mode = cfg_.mode.empty() ? WindowMode::sliding : window_mode_from_string(cfg_.mode);
    auto windows = slice(rs, cfg_.window_length, cfg_.step, mode);
    log_ << windows.size() << " " << to_string(mode) << " windows:";
    for (const auto& w : windows) log_ << " " << w.start_year << "-" << w.end_year;
    log_ << "\n";
    SeriesTable table;
    if (windows.empty()) {
      table.label_headers = {"start_year", "end_year"};
      table.columns = summary_field_names();
    } else {
      auto series = metric_series(rs, registry(), windows, "mean_degree", mode, clustering_);
      table = table_from_window_series(series, summary_field_names());
    }
    write(out_ / "series.csv", series_csv(table));
    SeriesTable mean_degree = table;
    keep_column(mean_degree, "mean_degree");
    write(out_ / "series_mean_degree.svg",
          render_chart_svg(mean_degree, ChartKind::line,
                           {"Mean degree per window (" + std::string(to_string(mode)) + ")",
                            "mean degree", false}));

    auto disciplines = emit_series(table_from_year_map(discipline_series(rs)), ChartKind::line,
                                   {"Papers per discipline and year", "papers", false});
    write(out_ / "disciplines.csv", disciplines.csv);
    write(out_ / "disciplines.svg", *disciplines.svg);

    auto firsts = first_year_series(rs, registry());
    auto regions = emit_series(table_from_first_years(firsts), ChartKind::line,
                               {"Cumulative countries per region", "countries", false});
    write(out_ / "regions_cumulative.csv", regions.csv);
    write(out_ / "regions_cumulative.svg", *regions.svg);
    std::string fy = "code,first_year,region\n";
    for (const auto& [code, year] : firsts.first_year)
      fy += fmt::format("{},{},{}\n", code, year, to_string(registry().by_code(code)->region));
    write(out_ / "first_years.csv", fy);
  }

  void densify(const std::string& records_path) {
    auto rs = load_records(records_path);
    const auto mode =
        cfg_.mode.empty() ? WindowMode::cumulative : window_mode_from_string(cfg_.mode);
    auto windows = slice(rs, cfg_.window_length, cfg_.step, mode);
    std::vector<Snapshot> snaps;
    std::string csv_text = "start_year,end_year,n,m,mean_degree,diameter\n";
    if (!windows.empty()) {
      auto series = metric_series(rs, registry(), windows, "m", mode, clustering_);
      for (std::size_t i = 0; i < series.windows.size(); ++i) {
        const auto& s = series.summaries[i];
        snaps.push_back({s.n, s.m});
        csv_text += fmt::format("{},{},{},{},{},{}\n", series.windows[i].start_year,
                                series.windows[i].end_year, s.n, s.m, format_number(s.mean_degree),
                                s.diameter);
      }
    }
    write(out_ / "densification.csv", csv_text);
    std::string doc;
    try {
      doc = densification_to_json(densification_fit(snaps));
    } catch (const UsageError& e) {
      json excluded = json::array();
      std::size_t usable = 0;
      for (const auto& s : snaps) {
        if (s.n >= 2 && s.m >= 1)
          ++usable;
        else
          excluded.push_back({{"n", s.n}, {"m", s.m}});
      }
      doc = json{{"alpha", nullptr},     {"c", nullptr},         {"r_squared", nullptr},
                 {"exact_fit", false},   {"points_used", usable}, {"excluded", excluded},
                 {"error", e.what()}}
                .dump(2) +
            "\n";
    }
    write(out_ / "densification.json", doc);
  }

  void export_files(const std::string& graph_path) {
    auto g = load_graph(graph_path);
    LayoutSpec spec;
    spec.kind = layout_kind_from_string(cfg_.layout);
    spec.size_attr = size_attr_from_string(cfg_.size_attr);
    spec.size_exponent = cfg_.gamma;
    spec.k = cfg_.top_k;
    validate(spec);
    auto pajek = write_pajek(g, region_partition(g));
    write(out_ / "network.net", pajek.net);
    write(out_ / "network.clu", *pajek.clu);
    write(out_ / "network.dot", write_dot(g, spec));
    write(out_ / "network.svg", render_network_svg(g, spec));
  }

  void report() {
    ingest();
    const auto records = (out_ / "records.jsonl").string();
    const auto graph = (out_ / "graph.json").string();
    build(records);
    metrics(graph);
    slice_series(records);
    densify(records);
    export_files(graph);
    write(out_ / "report.md", compose_report());
  }

  std::string default_records() const { return (out_ / "records.jsonl").string(); }
  std::string default_graph() const { return (out_ / "graph.json").string(); }

 private:
  RecordSet load_records(const std::string& path) {
    const auto fmt_name = path == default_records() ? std::string("jsonl") : cfg_.format;
    return parse_records(path, input_format_from_string(fmt_name), registry());
  }

  CoauthorshipGraph load_graph(const std::string& path) { return graph_from_json(read_text(path)); }

  void write(const fs::path& p, std::string_view text) {
    write_text(p, text);
    log_ << "wrote " << p.string() << "\n";
  }

  static void keep_column(SeriesTable& t, const std::string& name) {
    auto it = std::find(t.columns.begin(), t.columns.end(), name);
    const auto idx = static_cast<std::size_t>(it - t.columns.begin());
    t.columns = {name};
    for (auto& row : t.values) row = {row.at(idx)};
  }

  std::string compose_report() {
    auto cov = json::parse(read_text(out_ / "coverage.json"));
    auto sum = json::parse(read_text(out_ / "summary.json"));
    auto cent = json::parse(read_text(out_ / "centrality.json"));
    auto sw = json::parse(read_text(out_ / "small_world.json"));
    auto dens = json::parse(read_text(out_ / "densification.json"));

    std::string md;
    md += "# Coauthorship network report\n\n";
    md += fmt::format("Input: `{}`  \nSeed: {}  \nClustering average: {}\n\n", cfg_.input,
                      cfg_.seed, cfg_.clustering_mode);

    md += "## Corpus\n\n";
    md += fmt::format("- records: {}\n", cov["total"].get<std::size_t>());
    md += fmt::format("- records with affiliation: {} ({:.1f}%)\n",
                      cov["with_affiliation"].get<std::size_t>(),
                      100.0 * cov["affiliation_fraction"].get<double>());
    const auto& unknown = cov["unknown_country_names"];
    if (unknown.empty()) {
      md += "- unknown country names: none\n";
    } else {
      md += "- unknown country names:";
      for (const auto& u : unknown)
        md += fmt::format(" {} ({})", u["name"].get<std::string>(), u["count"].get<std::size_t>());
      md += "\n";
    }

    const auto n = sum["nodes"].get<std::size_t>();
    const auto m = sum["links"].get<std::size_t>();
    const auto max_codes = sum["max_degree_codes"].get<std::vector<std::string>>();
    std::string holders;
    for (const auto& c : max_codes) holders += (holders.empty() ? "" : ", ") + c;
    md += "\n## Network summary\n\n";
    md += "| Number of nodes | Number of links (density) | Average node degree | Max degree | "
          "The longest geodesic | Clustering coefficient | Number of isolated nodes (%) | "
          "Nodes in the largest component (%) |\n";
    md += "|---|---|---|---|---|---|---|---|\n";
    md += fmt::format("| {} | {} ({:.2f}) | {:.1f} | {} | {} | {:.2f} | {} ({:.1f}%) | {} ({:.1f}%) |\n\n",
                      n, m, sum["density"].get<double>(), sum["mean_degree"].get<double>(),
                      sum["max_degree"].get<std::size_t>(), sum["diameter"].get<std::size_t>(),
                      sum["clustering"].get<double>(), sum["isolated_count"].get<std::size_t>(),
                      sum["isolated_percent"].get<double>(), sum["giant_size"].get<std::size_t>(),
                      sum["giant_percent"].get<double>());
    md += fmt::format("- nodes: {}\n", n);
    md += fmt::format("- links: {}\n", m);
    md += fmt::format("- density: {:.2f}\n", sum["density"].get<double>());
    md += fmt::format("- links per node: {:.3f}\n", n ? static_cast<double>(m) / static_cast<double>(n) : 0.0);
    md += fmt::format("- mean degree: {:.1f}\n", sum["mean_degree"].get<double>());
    md += fmt::format("- max degree: {}{}\n", sum["max_degree"].get<std::size_t>(),
                      holders.empty() ? "" : " (" + holders + ")");
    std::string ends;
    const auto& endpoints = sum["diameter_endpoints"];
    for (std::size_t i = 0; i < endpoints.size() && i < 10; ++i)
      ends += (ends.empty() ? "" : ", ") + endpoints[i][0].get<std::string>() + "-" +
              endpoints[i][1].get<std::string>();
    if (endpoints.size() > 10) ends += fmt::format(" and {} more", endpoints.size() - 10);
    md += fmt::format("- diameter: {}{}\n", sum["diameter"].get<std::size_t>(),
                      ends.empty() ? "" : " (endpoints: " + ends + ")");
    md += fmt::format("- mean path length: {:.3f}\n", sum["mean_path_length"].get<double>());
    md += fmt::format("- clustering: {:.2f}\n", sum["clustering"].get<double>());
    md += fmt::format("- isolated nodes: {} ({:.1f}%)\n", sum["isolated_count"].get<std::size_t>(),
                      sum["isolated_percent"].get<double>());
    md += fmt::format("- giant component: {} ({:.1f}%)\n", sum["giant_size"].get<std::size_t>(),
                      sum["giant_percent"].get<double>());

    md += "\n## Most central countries\n\n";
    auto top_by = [&](const char* key) {
      std::vector<const json*> rows;
      for (const auto& r : cent) rows.push_back(&r);
      std::stable_sort(rows.begin(), rows.end(), [&](const json* a, const json* b) {
        return (*a)[key].get<double>() > (*b)[key].get<double>();
      });
      if (rows.size() > cfg_.top_k) rows.resize(cfg_.top_k);
      return rows;
    };
    md += "| Rank | Degree | Betweenness | Closeness |\n|---|---|---|---|\n";
    auto by_degree = top_by("degree");
    auto by_between = top_by("betweenness");
    auto by_close = top_by("closeness");
    for (std::size_t i = 0; i < by_degree.size(); ++i) {
      const auto& d = *by_degree[i];
      const auto& b = *by_between[i];
      const auto& c = *by_close[i];
      std::string mark = std::find(max_codes.begin(), max_codes.end(),
                                   d["code"].get<std::string>()) != max_codes.end()
                             ? " (max degree)"
                             : "";
      md += fmt::format("| {} | {} {}{} | {} {:.4f} | {} {:.4f} |\n", i + 1,
                        d["code"].get<std::string>(), d["degree"].get<std::size_t>(), mark,
                        b["code"].get<std::string>(), b["betweenness"].get<double>(),
                        c["code"].get<std::string>(), c["closeness"].get<double>());
    }

    md += "\n## Small-world comparison\n\n";
    if (sw.contains("skipped")) {
      md += fmt::format("Skipped: {}\n", sw["skipped"].get<std::string>());
    } else {
      md += fmt::format("- mean path length: {:.4f} (random: {:.4f})\n", sw["l_actual"].get<double>(),
                        sw["l_random_mean"].get<double>());
      md += fmt::format("- clustering: {:.4f} (random: {:.4f})\n", sw["c_actual"].get<double>(),
                        sw["c_random_mean"].get<double>());
      md += fmt::format("- sigma: {}\n", sw["sigma"].is_null()
                                             ? std::string("undefined")
                                             : fmt::format("{:.4f}", sw["sigma"].get<double>()));
      md += fmt::format("- samples: {}, seed: {}\n", sw["samples"].get<std::size_t>(),
                        sw["seed"].get<std::uint64_t>());
    }

    md += "\n## Densification\n\n";
    if (dens["alpha"].is_null()) {
      md += fmt::format("Fit unavailable: {}\n", dens.value("error", std::string("no data")));
    } else {
      md += fmt::format("- alpha: {:.4f}\n- c: {:.4f}\n", dens["alpha"].get<double>(),
                        dens["c"].get<double>());
      md += fmt::format("- r squared: {}\n",
                        dens["r_squared"].is_null()
                            ? std::string("exact two-point fit")
                            : fmt::format("{:.4f}", dens["r_squared"].get<double>()));
      md += fmt::format("- snapshots used: {}, excluded: {}\n",
                        dens["points_used"].get<std::size_t>(), dens["excluded"].size());
    }

    md += "\n## Files\n\n";
    for (const char* f :
         {"config.json", "records.jsonl", "coverage.json", "graph.json", "summary.json",
          "centrality.json", "histogram.json", "small_world.json", "series.csv",
          "series_mean_degree.svg", "disciplines.csv", "disciplines.svg", "regions_cumulative.csv",
          "regions_cumulative.svg", "first_years.csv", "densification.csv", "densification.json",
          "network.net", "network.clu", "network.dot", "network.svg"})
      md += fmt::format("- [{0}]({0})\n", f);
    return md;
  }

  RunConfig cfg_;
  std::ostream& log_;
  fs::path out_;
  std::optional<CountryRegistry> registry_;
  ClusteringMode clustering_ = ClusteringMode::exclude_low_degree;
};

}  // namespace

std::string RunConfig::to_json() const {
  json doc = {{"command", command},
              {"input", input},
              {"format", format},
              {"variants", variants},
              {"no_filter", no_filter},
              {"registry", registry},
              {"window_length", window_length},
              {"step", step},
              {"mode", mode},
              {"clustering_mode", clustering_mode},
              {"sw_samples", sw_samples},
              {"seed", seed},
              {"layout", layout},
              {"size_attr", size_attr},
              {"gamma", gamma},
              {"top_k", top_k},
              {"out", out}};
  return doc.dump(2) + "\n";
}

RunConfig RunConfig::from_json(const std::string& text) {
  RunConfig c;
  try {
    auto doc = json::parse(text);
    c.command = doc.value("command", c.command);
    c.input = doc.value("input", c.input);
    c.format = doc.value("format", c.format);
    c.variants = doc.value("variants", c.variants);
    c.no_filter = doc.value("no_filter", c.no_filter);
    c.registry = doc.value("registry", c.registry);
    c.window_length = doc.value("window_length", c.window_length);
    c.step = doc.value("step", c.step);
    c.mode = doc.value("mode", c.mode);
    c.clustering_mode = doc.value("clustering_mode", c.clustering_mode);
    c.sw_samples = doc.value("sw_samples", c.sw_samples);
    c.seed = doc.value("seed", c.seed);
    c.layout = doc.value("layout", c.layout);
    c.size_attr = doc.value("size_attr", c.size_attr);
    c.gamma = doc.value("gamma", c.gamma);
    c.top_k = doc.value("top_k", c.top_k);
    c.out = doc.value("out", c.out);
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed config file: ") + e.what());
  }
  return c;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.empty()) {
    err << kUsage;
    return kExitUsage;
  }
  const auto& command = args.front();
  if (command == "--help" || command == "-h" || command == "help") {
    out << kUsage;
    return kExitOk;
  }
  if (std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end()) {
    err << "error: unknown command '" << command << "'\n\n" << kUsage;
    return kExitUsage;
  }

  try {
    RunConfig cfg;
    for (std::size_t i = 1; i + 1 < args.size(); ++i)
      if (args[i] == "--config") cfg = RunConfig::from_json(read_text(args[i + 1]));
    cfg.command = command;

    CLI::App app{"cnet " + command};
    std::string config_path;
    app.add_option("--config", config_path);
    app.add_option("--input", cfg.input);
    app.add_option("--format", cfg.format);
    app.add_option("--variants", cfg.variants);
    app.add_flag("--no-filter", cfg.no_filter);
    app.add_option("--registry", cfg.registry);
    app.add_option("--window-length", cfg.window_length);
    app.add_option("--step", cfg.step);
    app.add_option("--mode", cfg.mode);
    app.add_option("--clustering-mode", cfg.clustering_mode);
    app.add_option("--sw-samples", cfg.sw_samples);
    app.add_option("--seed", cfg.seed);
    app.add_option("--layout", cfg.layout);
    app.add_option("--size-attr", cfg.size_attr);
    app.add_option("--gamma", cfg.gamma);
    app.add_option("--top-k", cfg.top_k);
    app.add_option("--out", cfg.out);
    std::vector<std::string> rest(args.rbegin(), args.rend() - 1);
    try {
      app.parse(rest);
    } catch (const CLI::ParseError& e) {
      err << "error: " << e.what() << "\n\n" << kUsage;
      return kExitUsage;
    }

    Pipeline p(cfg, out);
    p.echo_config();
    if (command == "ingest") {
      p.ingest();
    } else if (command == "build") {
      p.build(cfg.input.empty() ? p.default_records() : cfg.input);
    } else if (command == "metrics") {
      p.metrics(cfg.input.empty() ? p.default_graph() : cfg.input);
    } else if (command == "slice") {
      p.slice_series(cfg.input.empty() ? p.default_records() : cfg.input);
    } else if (command == "densify") {
      p.densify(cfg.input.empty() ? p.default_records() : cfg.input);
    } else if (command == "export") {
      p.export_files(cfg.input.empty() ? p.default_graph() : cfg.input);
    } else {
      p.report();
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace cnet
