#include "csv.hpp"

#include "cnet/errors.hpp"
#include "cnet/ingest.hpp"

namespace cnet::csv {

std::vector<Row> read(std::string_view text) {
  std::vector<Row> rows;
  Row row;
  std::string field;
  std::size_t line = 1;
  std::size_t i = 0;
  bool row_has_content = false;
  bool field_quoted = false;
  row.line = 1;

  auto end_field = [&] {
    row.fields.push_back(std::move(field));
    field.clear();
    field_quoted = false;
  };
  auto end_row = [&] {
    if (row_has_content) {
      end_field();
      rows.push_back(std::move(row));
    }
    row = Row{};
    field.clear();
    field_quoted = false;
    row_has_content = false;
  };

  while (i < text.size()) {
    char c = text[i];
    if (c == '"' && field.empty() && !field_quoted) {
      std::size_t start_line = line;
      field_quoted = true;
      row_has_content = true;
      ++i;
      for (;;) {
        if (i >= text.size()) throw DataError("unterminated quoted field", start_line);
        char q = text[i];
        if (q == '"') {
          if (i + 1 < text.size() && text[i + 1] == '"') {
            field.push_back('"');
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        if (q == '\n') ++line;
        field.push_back(q);
        ++i;
      }
      if (i < text.size() && text[i] != ',' && text[i] != '\n' && text[i] != '\r')
        throw DataError("unexpected character after closing quote", line);
      continue;
    }
    if (c == ',') {
      row_has_content = true;
      end_field();
      ++i;
      continue;
    }
    if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      ++i;
      end_row();
      ++line;
      row.line = line;
      continue;
    }
    if (field_quoted) throw DataError("unexpected character after closing quote", line);
    if (c != ' ' && c != '\t') row_has_content = true;
    field.push_back(c);
    ++i;
  }
  end_row();
  return rows;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string join_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    out += escape(fields[i]);
  }
  out.push_back('\n');
  return out;
}

std::vector<std::string> split_list(std::string_view cell) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= cell.size()) {
    std::size_t end = cell.find(';', start);
    if (end == std::string_view::npos) end = cell.size();
    auto item = trim(cell.substr(start, end - start));
    if (!item.empty()) items.emplace_back(item);
    start = end + 1;
  }
  return items;
}

std::string join_list(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out.push_back(';');
    out += items[i];
  }
  return out;
}

}  // namespace cnet::csv
