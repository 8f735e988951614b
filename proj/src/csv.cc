#include "fragile_cpr/csv.h"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace fragile_cpr {

std::string FormatNumber(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

void CsvWriter::Comment(const std::string& text) {
  if (width_ != 0) throw std::logic_error("csv comment after header");
  out_ << "# " << text << '\n';
}

void CsvWriter::Meta(const std::string& key, const std::string& value) {
  Comment(key + "=" + value);
}

void CsvWriter::Meta(const std::string& key, double value) {
  Meta(key, FormatNumber(value));
}

void CsvWriter::Header(const std::vector<std::string>& columns) {
  if (width_ != 0) throw std::logic_error("csv header written twice");
  if (columns.empty()) throw std::logic_error("csv header is empty");
  width_ = columns.size();
  WriteLine(columns);
}

void CsvWriter::Row(const std::vector<std::string>& cells) {
  if (width_ == 0) throw std::logic_error("csv row before header");
  if (cells.size() != width_) {
    throw std::logic_error("csv row has " + std::to_string(cells.size()) +
                           " cells, header has " + std::to_string(width_));
  }
  WriteLine(cells);
}

void CsvWriter::Row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(FormatNumber(v));
  Row(cells);
}

void CsvWriter::WriteLine(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

}  // namespace fragile_cpr
