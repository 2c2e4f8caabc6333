#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cnet {

/// Fully resolved pipeline configuration. Every run writes it to
/// `<out>/config.json`; passing that file back with `--config` reproduces
/// the run.
struct RunConfig {
  std::string command;
  std::string input;
  std::string format = "jsonl";
  std::string variants;  // file path, empty for the built-in list
  bool no_filter = false;
  std::string registry;  // file path, empty for the built-in registry
  int window_length = 5;
  int step = 5;
  std::string mode;  // empty: sliding for slice, cumulative for densify
  std::string clustering_mode = "exclude_low_degree";
  std::size_t sw_samples = 100;
  std::uint64_t seed = 0;
  std::string layout = "center_top_k";
  std::string size_attr = "paper_count";
  double gamma = 0.5;
  std::size_t top_k = 10;
  std::string out = "out";

  std::string to_json() const;
  static RunConfig from_json(const std::string& text);
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Entry point of the `cnet` tool; returns the process exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cnet
