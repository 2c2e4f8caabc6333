#pragma once

// Minimal RFC 4180 reader/writer shared by the record, registry and series
// code paths.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace cnet::csv {

struct Row {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based line where the row starts
};

// Splits text into rows. Quoted fields may contain commas, doubled quotes
// and newlines. Blank lines are dropped. Throws DataError on an unterminated
// quote or stray characters after a closing quote.
std::vector<Row> read(std::string_view text);

std::string escape(std::string_view field);
std::string join_row(const std::vector<std::string>& fields);

// Semicolon-joined list cell helpers. Empty items are dropped, items trimmed.
std::vector<std::string> split_list(std::string_view cell);
std::string join_list(const std::vector<std::string>& items);

}  // namespace cnet::csv
