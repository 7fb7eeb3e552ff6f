#ifndef LMLKIT_HARNESS_CSV_HPP
#define LMLKIT_HARNESS_CSV_HPP

#include <filesystem>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

namespace lml::harness {

/// One CSV cell: text, integer, or real. Reals are printed with %.17g so a
/// rerun with the same seed reproduces the file byte for byte. An
/// empty-variant cell prints as an empty field (used together with an error
/// code column when a replicate failed numerically).
using Cell = std::variant<std::monostate, std::string, std::int64_t, double>;

/// Header-row CSV writer: UTF-8, '.' decimal separator, '\n'-terminated rows.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns);
  void row(const std::vector<Cell>& cells);

 private:
  std::ofstream out_;
  std::size_t n_columns_;
};

std::string format_cell(const Cell& cell);

}  // namespace lml::harness

#endif  // LMLKIT_HARNESS_CSV_HPP
