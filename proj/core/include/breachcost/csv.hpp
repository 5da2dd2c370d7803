#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace breachcost {

class CsvParseError : public std::runtime_error {
 public:
  CsvParseError(std::size_t line, std::string field, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) +
                           (field.empty() ? "" : ", field '" + field + "'") +
                           ": " + what),
        line_(line),
        field_(std::move(field)) {}

  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

// RFC 4180 row reader: quoted fields may contain commas, doubled quotes and
// line breaks. Tolerates CRLF endings and a missing final newline.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  // Next record, or nullopt at end of input. Blank lines are skipped.
  std::optional<std::vector<std::string>> next();

  // 1-based physical line on which the most recent record started.
  std::size_t line() const { return record_line_; }

 private:
  std::istream& in_;
  std::size_t current_line_ = 0;
  std::size_t record_line_ = 0;
};

// Reads the header row and maps the named columns to their positions.
// Throws CsvParseError if a required column is absent.
std::vector<std::size_t> resolve_columns(
    const std::vector<std::string>& header,
    const std::vector<std::string>& required);

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace breachcost
