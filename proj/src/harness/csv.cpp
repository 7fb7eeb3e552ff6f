#include "csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace lml::harness {

std::string format_cell(const Cell& cell) {
  if (std::holds_alternative<std::monostate>(cell)) return "";
  if (const auto* text = std::get_if<std::string>(&cell)) return *text;
  if (const auto* integer = std::get_if<std::int64_t>(&cell)) return std::to_string(*integer);
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", std::get<double>(cell));
  return buffer;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns)
    : out_(path, std::ios::binary), n_columns_(columns.size()) {
  if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i > 0) out_ << ',';
    out_ << columns[i];
  }
  out_ << '\n';
}

void CsvWriter::row(const std::vector<Cell>& cells) {
  if (cells.size() != n_columns_) throw std::invalid_argument("csv row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out_ << ',';
    out_ << format_cell(cells[i]);
  }
  out_ << '\n';
}

}  // namespace lml::harness
