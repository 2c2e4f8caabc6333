#include "cnet/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "cnet/errors.hpp"
#include "csv.hpp"

namespace cnet {

using nlohmann::json;

namespace {

constexpr int kMinYear = 1900;
constexpr int kMaxYear = 2100;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading " + path.string());
  return ss.str();
}

// Trims and drops exact duplicates, keeping first-appearance order.
std::vector<std::string> dedupe(std::vector<std::string> items) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (auto& s : items) {
    std::string t(trim(s));
    if (t.empty()) continue;
    if (seen.insert(t).second) out.push_back(std::move(t));
  }
  return out;
}

void check_year(long long year, std::size_t line) {
  if (year < kMinYear || year > kMaxYear)
    throw DataError("year " + std::to_string(year) + " outside [1900, 2100]", line);
}

std::vector<std::string> string_array(const json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return {};
  if (!it->is_array()) throw DataError(std::string("'") + key + "' must be an array", line);
  std::vector<std::string> out;
  for (const auto& v : *it) {
    if (!v.is_string())
      throw DataError(std::string("'") + key + "' must contain only strings", line);
    out.push_back(v.get<std::string>());
  }
  return out;
}

PublicationRecord parse_json_line(std::string_view line_text, std::size_t line) {
  json obj;
  try {
    obj = json::parse(line_text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("invalid JSON: ") + e.what(), line);
  }
  if (!obj.is_object()) throw DataError("expected a JSON object", line);

  PublicationRecord r;
  auto id = obj.find("id");
  if (id == obj.end() || !id->is_string()) throw DataError("missing string field 'id'", line);
  r.id = std::string(trim(id->get<std::string>()));
  if (r.id.empty()) throw DataError("empty id", line);

  auto year = obj.find("year");
  if (year == obj.end() || !year->is_number_integer())
    throw DataError("missing integer field 'year'", line);
  check_year(year->get<long long>(), line);
  r.year = year->get<int>();

  if (auto text = obj.find("text"); text != obj.end() && !text->is_null()) {
    if (!text->is_string()) throw DataError("'text' must be a string", line);
    r.text = text->get<std::string>();
  }
  r.raw_countries = dedupe(string_array(obj, "countries", line));
  r.subjects = dedupe(string_array(obj, "subjects", line));
  return r;
}

std::vector<PublicationRecord> parse_jsonl(std::string_view text,
                                           std::vector<std::size_t>& lines) {
  std::vector<PublicationRecord> out;
  std::size_t line = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line;
    auto raw = trim(text.substr(pos, end - pos));
    if (!raw.empty()) {
      out.push_back(parse_json_line(raw, line));
      lines.push_back(line);
    }
    pos = end + 1;
  }
  return out;
}

std::vector<PublicationRecord> parse_csv(std::string_view text,
                                         std::vector<std::size_t>& lines) {
  auto rows = csv::read(text);
  if (rows.empty()) throw DataError("missing CSV header", 1);
  const auto& header = rows.front().fields;
  const std::vector<std::string> expected{"id", "year", "text", "countries", "subjects"};
  std::vector<std::string> got;
  for (const auto& h : header) got.push_back(to_lower_ascii(trim(h)));
  if (got != expected)
    throw DataError("CSV header must be id,year,text,countries,subjects", rows.front().line);

  std::vector<PublicationRecord> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.fields.size() != 5)
      throw DataError("expected 5 columns, got " + std::to_string(row.fields.size()),
                      row.line);
    PublicationRecord r;
    r.id = std::string(trim(row.fields[0]));
    if (r.id.empty()) throw DataError("empty id", row.line);
    auto year_text = std::string(trim(row.fields[1]));
    if (year_text.empty()) throw DataError("missing year", row.line);
    long long year = 0;
    std::size_t used = 0;
    try {
      year = std::stoll(year_text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != year_text.size())
      throw DataError("year '" + year_text + "' is not an integer", row.line);
    check_year(year, row.line);
    r.year = static_cast<int>(year);
    r.text = row.fields[2];
    r.raw_countries = dedupe(csv::split_list(row.fields[3]));
    r.subjects = dedupe(csv::split_list(row.fields[4]));
    out.push_back(std::move(r));
    lines.push_back(row.line);
  }
  return out;
}

void sort_records(std::vector<PublicationRecord>& records) {
  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return std::tie(a.year, a.id) < std::tie(b.year, b.id);
  });
}

}  // namespace

InputFormat input_format_from_string(std::string_view name) {
  if (name == "jsonl") return InputFormat::jsonl;
  if (name == "csv") return InputFormat::csv;
  throw UsageError("unknown input format '" + std::string(name) + "' (expected jsonl or csv)");
}

std::optional<std::pair<int, int>> RecordSet::year_range() const {
  if (records.empty()) return std::nullopt;
  // Sorted by year.
  return std::pair{records.front().year, records.back().year};
}

RecordSet parse_records_text(std::string_view text, InputFormat format,
                             const CountryRegistry& registry) {
  std::vector<std::size_t> lines;
  auto records = format == InputFormat::jsonl ? parse_jsonl(text, lines) : parse_csv(text, lines);

  std::unordered_set<std::string> ids;
  for (std::size_t i = 0; i < records.size(); ++i)
    if (!ids.insert(records[i].id).second)
      throw DataError("duplicate id '" + records[i].id + "'", lines[i]);

  RecordSet rs;
  rs.records = std::move(records);
  sort_records(rs.records);
  rs.coverage = coverage_stats(rs, registry);
  return rs;
}

RecordSet parse_records(const std::filesystem::path& path, InputFormat format,
                        const CountryRegistry& registry) {
  return parse_records_text(read_file(path), format, registry);
}

std::string write_jsonl(const RecordSet& rs) {
  std::string out;
  for (const auto& r : rs.records) {
    json obj = json::object();
    obj["id"] = r.id;
    obj["year"] = r.year;
    obj["text"] = r.text;
    obj["countries"] = r.raw_countries;
    obj["subjects"] = r.subjects;
    out += obj.dump();
    out.push_back('\n');
  }
  return out;
}

std::vector<std::string> default_topic_variants() { return {"chernobyl", "chornobyl"}; }

std::vector<std::string> load_variants(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    out.emplace_back(t);
  }
  if (out.empty()) throw UsageError("variants file " + path.string() + " lists no variants");
  return out;
}

RecordSet filter_topic(const RecordSet& rs, const std::vector<std::string>& variants,
                       const CountryRegistry& registry) {
  std::vector<std::string> needles;
  for (const auto& v : variants) {
    auto t = to_lower_ascii(trim(v));
    if (!t.empty()) needles.push_back(std::move(t));
  }
  if (needles.empty()) throw UsageError("topic filter needs at least one non-empty variant");

  RecordSet out;
  for (const auto& r : rs.records) {
    const auto hay = to_lower_ascii(r.text);
    bool hit = std::any_of(needles.begin(), needles.end(), [&](const std::string& n) {
      return hay.find(n) != std::string::npos;
    });
    if (hit) out.records.push_back(r);
  }
  out.coverage = coverage_stats(out, registry);
  return out;
}

CoverageStats coverage_stats(const RecordSet& rs, const CountryRegistry& registry) {
  CoverageStats c;
  c.total = rs.records.size();
  c.empty_corpus = c.total == 0;
  std::map<std::string, std::size_t> unknown;
  for (const auto& r : rs.records) {
    if (!r.raw_countries.empty()) ++c.with_affiliation;
    for (const auto& name : r.raw_countries)
      if (!registry.find(name)) ++unknown[name];
  }
  c.affiliation_fraction =
      c.total == 0 ? 0.0 : static_cast<double>(c.with_affiliation) / static_cast<double>(c.total);
  c.unknown_country_names.assign(unknown.begin(), unknown.end());
  return c;
}

std::vector<const CountryEntry*> resolve_countries(const PublicationRecord& record,
                                                   const CountryRegistry& registry) {
  std::vector<const CountryEntry*> out;
  for (const auto& name : record.raw_countries) {
    const auto* e = registry.find(name);
    if (e && std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
  }
  return out;
}

}  // namespace cnet
