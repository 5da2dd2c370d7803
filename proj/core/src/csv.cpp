#include "breachcost/csv.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

namespace breachcost {

std::optional<std::vector<std::string>> CsvReader::next() {
  int c = in_.get();
  while (c == '\n' || c == '\r') {
    if (c == '\n') ++current_line_;
    c = in_.get();
  }
  if (c == std::istream::traits_type::eof()) return std::nullopt;

  record_line_ = current_line_ + 1;
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;

  while (true) {
    if (c == std::istream::traits_type::eof()) {
      if (quoted) {
        throw CsvParseError(record_line_, "", "unterminated quoted field");
      }
      fields.push_back(std::move(field));
      ++current_line_;
      return fields;
    }
    const char ch = static_cast<char>(c);
    if (quoted) {
      if (ch == '"') {
        if (in_.peek() == '"') {
          in_.get();
          field.push_back('"');
        } else {
          quoted = false;
        }
      } else {
        if (ch == '\n') ++current_line_;
        if (ch != '\r') field.push_back(ch);
      }
    } else if (ch == '"') {
      if (!field.empty()) {
        throw CsvParseError(record_line_, "",
                            "quote inside an unquoted field");
      }
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (ch == '\n') {
      ++current_line_;
      fields.push_back(std::move(field));
      return fields;
    } else if (ch != '\r') {
      field.push_back(ch);
    }
    c = in_.get();
  }
}

std::vector<std::size_t> resolve_columns(
    const std::vector<std::string>& header,
    const std::vector<std::string>& required) {
  std::vector<std::size_t> positions;
  positions.reserve(required.size());
  for (const auto& name : required) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      throw CsvParseError(1, name, "missing required column");
    }
    positions.push_back(static_cast<std::size_t>(it - header.begin()));
  }
  return positions;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    const std::string& f = fields[i];
    const bool needs_quotes =
        f.find_first_of(",\"\n\r") != std::string::npos;
    if (needs_quotes) {
      out << '"';
      for (char ch : f) {
        if (ch == '"') out << '"';
        out << ch;
      }
      out << '"';
    } else {
      out << f;
    }
  }
  out << '\n';
}

}  // namespace breachcost
