#include <doctest.h>

#include "cnet/errors.hpp"
#include "cnet/ingest.hpp"
#include "support.hpp"

using namespace cnet;

namespace {

RecordSet jsonl(const std::string& text) { return parse_records_text(text, InputFormat::jsonl); }

}  // namespace

TEST_CASE("jsonl line maps fields directly") {
  auto rs = jsonl(
      R"({"id":"p1","year":1986,"text":"Chernobyl fallout","countries":["Ukraine","USSR"],"subjects":["Physics"]})"
      "\n");
  REQUIRE(rs.records.size() == 1);
  const auto& r = rs.records[0];
  CHECK(r.id == "p1");
  CHECK(r.year == 1986);
  CHECK(r.text == "Chernobyl fallout");
  CHECK(r.raw_countries == std::vector<std::string>{"Ukraine", "USSR"});
  CHECK(r.subjects == std::vector<std::string>{"Physics"});
}

TEST_CASE("duplicate countries within a record collapse") {
  auto rs = jsonl(R"({"id":"p1","year":1990,"countries":["Ukraine","Ukraine"]})"
                  "\n");
  CHECK(rs.records[0].raw_countries == std::vector<std::string>{"Ukraine"});
}

TEST_CASE("optional jsonl fields default to empty") {
  auto rs = jsonl("{\"id\":\"x\",\"year\":2000}\n\n");
  REQUIRE(rs.records.size() == 1);
  CHECK(rs.records[0].text.empty());
  CHECK(rs.records[0].raw_countries.empty());
  CHECK(rs.records[0].subjects.empty());
}

TEST_CASE("malformed jsonl rows carry their line number") {
  try {
    jsonl("{\"id\":\"a\",\"year\":1990}\n{\"id\":\"b\"}\n");
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(jsonl("{\"id\":\"a\",\"year\":1800}\n"), DataError);
  CHECK_THROWS_AS(jsonl("{\"id\":\"\",\"year\":1990}\n"), DataError);
  CHECK_THROWS_AS(jsonl("not json\n"), DataError);
}

TEST_CASE("duplicate ids are rejected") {
  try {
    jsonl("{\"id\":\"a\",\"year\":1990}\n{\"id\":\"a\",\"year\":1991}\n");
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("csv input with quoted list cells") {
  auto rs = parse_records_text(
      "id,year,text,countries,subjects\n"
      "b,1987,\"Chornobyl, zone\",\"Ukraine; Japan\",Physics;Medicine\n"
      "a,1986,plain,,\n",
      InputFormat::csv);
  REQUIRE(rs.records.size() == 2);
  CHECK(rs.records[0].id == "a");
  CHECK(rs.records[1].text == "Chornobyl, zone");
  CHECK(rs.records[1].raw_countries == std::vector<std::string>{"Ukraine", "Japan"});
  CHECK(rs.records[1].subjects == std::vector<std::string>{"Physics", "Medicine"});
}

TEST_CASE("csv row missing the year column names its line") {
  try {
    parse_records_text("id,year,text,countries,subjects\na,1990,t,,\nb,,t,,\n", InputFormat::csv);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_records_text("id,year,text,countries,subjects\nb,1990,t\n", InputFormat::csv),
                  DataError);
}

TEST_CASE("unreadable file is an I/O error") {
  CHECK_THROWS_AS(parse_records("/nonexistent/records.jsonl", InputFormat::jsonl), IoError);
}

TEST_CASE("records sort by year then id") {
  auto rs = jsonl(
      "{\"id\":\"c\",\"year\":1990}\n{\"id\":\"b\",\"year\":1986}\n{\"id\":\"a\",\"year\":1990}\n");
  CHECK(rs.records[0].id == "b");
  CHECK(rs.records[1].id == "a");
  CHECK(rs.records[2].id == "c");
}

TEST_CASE("topic filter keeps case-insensitive substring matches") {
  auto rs = jsonl(
      "{\"id\":\"a\",\"year\":1990,\"text\":\"Chornobyl exclusion zone\"}\n"
      "{\"id\":\"b\",\"year\":1990,\"text\":\"nuclear power safety\"}\n"
      "{\"id\":\"c\",\"year\":1990,\"text\":\"CHERNOBYL-137Cs\"}\n");
  auto kept = filter_topic(rs, {"chernobyl", "chornobyl"});
  REQUIRE(kept.records.size() == 2);
  CHECK(kept.records[0].id == "a");
  CHECK(kept.records[1].id == "c");
  CHECK(kept.coverage.total == 2);
  CHECK_THROWS_AS(filter_topic(rs, {}), UsageError);
  CHECK(default_topic_variants() == std::vector<std::string>{"chernobyl", "chornobyl"});
}

TEST_CASE("topic filter is idempotent") {
  auto rs = jsonl(fixture::densifying_corpus(3));
  auto once = filter_topic(rs, default_topic_variants());
  auto twice = filter_topic(once, default_topic_variants());
  CHECK(once == twice);
  CHECK(once.records.size() < rs.records.size());
}

TEST_CASE("country normalization") {
  const auto& reg = builtin_registry();
  auto ussr = normalize_country("USSR", reg);
  REQUIRE(ussr);
  CHECK(ussr->code == "SUN");
  CHECK(ussr->region == Region::Europe);
  CHECK(ussr->historic);
  auto us1 = normalize_country("United States", reg);
  auto us2 = normalize_country("USA", reg);
  REQUIRE(us1);
  REQUIRE(us2);
  CHECK(us1->code == "USA");
  CHECK(*us1 == *us2);
  CHECK_FALSE(normalize_country("Atlantis", reg));
  CHECK(normalize_country("  czechoslovakia ", reg)->code == "CSK");
  CHECK(normalize_country("Yugoslavia", reg)->code == "YUG");
  CHECK(normalize_country("Faroe Islands", reg)->code == "FRO");
}

TEST_CASE("normalization is invariant under trim and lowercase") {
  const auto& reg = builtin_registry();
  for (const auto& e : reg.entries()) {
    for (const std::string& raw : {e.display_name, e.code}) {
      auto a = normalize_country(raw, reg);
      auto b = normalize_country(to_lower_ascii(trim(raw)), reg);
      auto c = normalize_country("  " + raw + "\t", reg);
      REQUIRE(a);
      CHECK(a == b);
      CHECK(a == c);
      CHECK(a->code == e.code);
    }
  }
}

TEST_CASE("registry rejects duplicates and loads from csv") {
  CountryRegistry reg;
  reg.add({"AAA", "Alpha", Region::Asia, false}, {"Alfa"});
  CHECK_THROWS_AS(reg.add({"AAA", "Other", Region::Asia, false}), DataError);
  CHECK_THROWS_AS(reg.add({"BBB", "Beta", Region::Asia, false}, {"alfa"}), DataError);
  auto csv = CountryRegistry::from_csv(
      "code,display_name,region,historic,aliases\nXX,Exland,Africa,true,Ex;Old Ex\n");
  REQUIRE(csv.find("old ex"));
  CHECK(csv.find("old ex")->code == "XX");
  CHECK(csv.by_code("XX")->historic);
  CHECK(csv.by_code("XX")->region == Region::Africa);
  CHECK_THROWS_AS(CountryRegistry::from_csv("code,name\n"), DataError);
}

TEST_CASE("coverage statistics") {
  auto rs = jsonl(
      "{\"id\":\"a\",\"year\":1990,\"countries\":[\"Ukraine\"]}\n"
      "{\"id\":\"b\",\"year\":1990,\"countries\":[\"Atlantis\",\"Japan\"]}\n"
      "{\"id\":\"c\",\"year\":1990,\"countries\":[\"Atlantis\"]}\n"
      "{\"id\":\"d\",\"year\":1990}\n");
  CHECK(rs.coverage.total == 4);
  CHECK(rs.coverage.with_affiliation == 3);
  CHECK(rs.coverage.affiliation_fraction == 0.75);
  CHECK_FALSE(rs.coverage.empty_corpus);
  REQUIRE(rs.coverage.unknown_country_names.size() == 1);
  CHECK(rs.coverage.unknown_country_names[0] == std::pair<std::string, std::size_t>{"Atlantis", 2});

  auto empty = jsonl("");
  CHECK(empty.coverage.total == 0);
  CHECK(empty.coverage.affiliation_fraction == 0.0);
  CHECK(empty.coverage.empty_corpus);

  auto none = jsonl("{\"id\":\"a\",\"year\":1990}\n{\"id\":\"b\",\"year\":1991}\n");
  CHECK(none.coverage.affiliation_fraction == 0.0);
  CHECK_FALSE(none.coverage.empty_corpus);
}

TEST_CASE("with_affiliation matches a direct recount") {
  auto rs = jsonl(fixture::densifying_corpus(11));
  std::size_t count = 0;
  for (const auto& r : rs.records)
    if (!r.raw_countries.empty()) ++count;
  CHECK(rs.coverage.with_affiliation == count);
  CHECK(coverage_stats(rs) == rs.coverage);
}

TEST_CASE("jsonl round trip") {
  auto rs = jsonl(fixture::densifying_corpus(5) +
                  fixture::record_line("q\"uote", 2001, "with \\ backslash, \"quotes\"",
                                       {"Côte d'Ivoire", "Atlantis"}, {}));
  auto again = jsonl(write_jsonl(rs));
  CHECK(again == rs);
  CHECK(write_jsonl(again) == write_jsonl(rs));
}

TEST_CASE("resolve_countries drops unknowns and duplicates") {
  PublicationRecord r{"x", 1990, "", {"USA", "United States", "Atlantis", "Japan"}, {}};
  auto resolved = resolve_countries(r, builtin_registry());
  REQUIRE(resolved.size() == 2);
  CHECK(resolved[0]->code == "USA");
  CHECK(resolved[1]->code == "JPN");
}
