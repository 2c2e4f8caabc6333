#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cnet {

enum class Region { Europe, Asia, NorthAmerica, SouthAmerica, Africa, Oceania };

inline constexpr std::array<Region, 6> kAllRegions = {
    Region::Europe, Region::Asia,    Region::NorthAmerica,
    Region::SouthAmerica, Region::Africa, Region::Oceania};

std::string_view to_string(Region r);
// Throws UsageError for an unrecognized name.
Region region_from_string(std::string_view name);

struct CountryEntry {
  std::string code;  // canonical, uppercase, 2-3 characters
  std::string display_name;
  Region region = Region::Europe;
  bool historic = false;  // entity no longer exists (USSR, Czechoslovakia, ...)

  bool operator==(const CountryEntry&) const = default;
};

/// Canonical country table plus a case-insensitive alias index.
///
/// Historic entities are ordinary entries with their own codes; an alias is
/// never remapped to a successor state.
class CountryRegistry {
 public:
  CountryRegistry() = default;

  /// Adds an entry; the code and display name are registered as aliases too.
  /// Throws DataError on a duplicate code or on an alias that already points
  /// to a different entry.
  void add(CountryEntry entry, const std::vector<std::string>& aliases = {});

  const CountryEntry* find(std::string_view raw) const;
  const CountryEntry* by_code(std::string_view code) const;

  const std::vector<CountryEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  /// Parses `code,display_name,region,historic,aliases` CSV text.
  static CountryRegistry from_csv(std::string_view text);
  static CountryRegistry load(const std::filesystem::path& path);

 private:
  std::vector<CountryEntry> entries_;
  std::unordered_map<std::string, std::size_t> by_code_;
  std::unordered_map<std::string, std::size_t> alias_;
};

/// Registry shipped with the library: current states, historic entities
/// (SUN, CSK, YUG, DDR) and dependent territories such as the Faroe Islands.
const CountryRegistry& builtin_registry();

/// Alias lookup, trimmed and ASCII case-insensitive. nullopt means unknown.
std::optional<CountryEntry> normalize_country(std::string_view raw,
                                              const CountryRegistry& registry);

struct PublicationRecord {
  std::string id;
  int year = 0;
  std::string text;
  std::vector<std::string> raw_countries;
  std::vector<std::string> subjects;

  bool operator==(const PublicationRecord&) const = default;
};

struct CoverageStats {
  std::size_t total = 0;
  std::size_t with_affiliation = 0;
  double affiliation_fraction = 0.0;
  bool empty_corpus = true;
  // Sorted by raw string; counts are per record occurrence.
  std::vector<std::pair<std::string, std::size_t>> unknown_country_names;

  bool operator==(const CoverageStats&) const = default;
};

struct RecordSet {
  std::vector<PublicationRecord> records;  // sorted by (year, id)
  CoverageStats coverage;

  bool operator==(const RecordSet&) const = default;
  bool empty() const noexcept { return records.empty(); }
  std::optional<std::pair<int, int>> year_range() const;
};

enum class InputFormat { jsonl, csv };
InputFormat input_format_from_string(std::string_view name);

/// Reads a record file. Rows are validated, per-record country lists are
/// deduplicated, and the result is sorted by (year, id).
/// Throws IoError when the file cannot be read and DataError (with the line
/// number) for malformed rows or duplicate ids.
RecordSet parse_records(const std::filesystem::path& path, InputFormat format,
                        const CountryRegistry& registry = builtin_registry());

RecordSet parse_records_text(std::string_view text, InputFormat format,
                             const CountryRegistry& registry = builtin_registry());

/// Serializes records in canonical JSONL (id, year, text, countries, subjects).
std::string write_jsonl(const RecordSet& rs);

/// Keeps records whose text contains any variant (case-insensitive
/// substring). Throws UsageError on an empty variant list.
RecordSet filter_topic(const RecordSet& rs, const std::vector<std::string>& variants,
                       const CountryRegistry& registry = builtin_registry());

std::vector<std::string> default_topic_variants();
/// One variant per non-empty line; lines starting with '#' are comments.
std::vector<std::string> load_variants(const std::filesystem::path& path);

CoverageStats coverage_stats(const RecordSet& rs,
                             const CountryRegistry& registry = builtin_registry());

/// Codes of the registry-resolved countries of one record, deduplicated,
/// in order of first appearance. Unknown names are skipped.
std::vector<const CountryEntry*> resolve_countries(const PublicationRecord& record,
                                                   const CountryRegistry& registry);

// ASCII helpers shared by the parsers.
std::string to_lower_ascii(std::string_view s);
std::string_view trim(std::string_view s);

}  // namespace cnet
