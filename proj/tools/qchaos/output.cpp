#include "output.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <ostream>
#include <stdexcept>
#include <system_error>

#include "json.hpp"

namespace qchaos {

std::string format_double(double value) {
  char buffer[64];
  const auto res = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, res.ptr);
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string cell_to_csv(const Cell& cell) {
  if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
  return csv_escape(std::get<std::string>(cell));
}

nlohmann::json cell_to_json(const Cell& cell) {
  if (const auto* i = std::get_if<long long>(&cell)) return *i;
  if (const auto* d = std::get_if<double>(&cell)) return *d;
  return std::get<std::string>(cell);
}

}  // namespace

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void Table::add_row(std::vector<Cell> cells) {
  if (cells.size() != columns_.size())
    throw std::logic_error("row width does not match the column count");
  rows_.push_back(std::move(cells));
}

void Table::set_meta(const std::string& key, Cell value) {
  meta_.emplace_back(key, std::move(value));
}

void Table::write_csv(std::ostream& os) const {
  for (std::size_t i = 0; i < columns_.size(); ++i)
    os << (i ? "," : "") << csv_escape(columns_[i]);
  os << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << cell_to_csv(row[i]);
    os << '\n';
  }
  for (const auto& [key, value] : meta_)
    os << "# " << csv_escape(key) << ',' << cell_to_csv(value) << '\n';
}

void Table::write_json(std::ostream& os) const {
  nlohmann::json doc;
  doc["meta"] = nlohmann::json::object();
  for (const auto& [key, value] : meta_) doc["meta"][key] = cell_to_json(value);
  doc["rows"] = nlohmann::json::array();
  for (const auto& row : rows_) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i)
      obj[columns_[i]] = cell_to_json(row[i]);
    doc["rows"].push_back(std::move(obj));
  }
  os << doc.dump(2) << '\n';
}

void Table::write(std::ostream& os, const std::string& format) const {
  if (format == "json")
    write_json(os);
  else
    write_csv(os);
}

void OutputTarget::write(const Table& table, const std::string& format) const {
  if (path.empty()) {
    table.write(std::cout, format);
    if (!std::cout) throw std::system_error(errno, std::generic_category(), "stdout");
    return;
  }
  std::ofstream os(path);
  if (!os) throw std::system_error(errno, std::generic_category(), path);
  table.write(os, format);
  os.flush();
  if (!os) throw std::system_error(errno, std::generic_category(), path);
}

}  // namespace qchaos
