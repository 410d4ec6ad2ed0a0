#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace qchaos {

using Cell = std::variant<long long, double, std::string>;

// Shortest decimal that round-trips the value exactly.
std::string format_double(double value);

// One tabular result: named columns, value rows, and scalar metadata.
// CSV renders the header plus one line per row, with metadata in trailing
// "# key,value" comment lines; JSON renders {"meta": {...}, "rows": [{...}]}.
class Table {
public:
  explicit Table(std::vector<std::string> columns);

  void add_row(std::vector<Cell> cells);
  void set_meta(const std::string& key, Cell value);

  void write_csv(std::ostream& os) const;
  void write_json(std::ostream& os) const;
  // format is "csv" or "json"
  void write(std::ostream& os, const std::string& format) const;

private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<std::pair<std::string, Cell>> meta_;
};

// Writes to the path, or to stdout when path is empty. Throws on I/O failure
// with exit-code semantics handled by the caller.
struct OutputTarget {
  std::string path;
  void write(const Table& table, const std::string& format) const;
};

}  // namespace qchaos
