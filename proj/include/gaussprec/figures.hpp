#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace gaussprec {

struct CsvTable {
  std::string name;  // file stem, e.g. "fig2a"
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Index of a header entry; throws std::out_of_range if absent.
  std::size_t column(const std::string& title) const;
};

/// 17 significant digits (as %.17g), '.' separator, locale independent.
std::string format_double(double v);

std::string to_csv(const CsvTable& table);

/// The CSV text is complete before the file is opened. Throws
/// std::runtime_error when the file cannot be written.
void write_csv(const CsvTable& table, const std::filesystem::path& file);

/// The data behind figure n (2..6), one table per panel, all with gamma = 1:
///   a panels: bounds vs t in [0, 2] (201 points), N_e = 0.5, r = 0.4,
///             B_HD at phi = pi/4;
///   2b, 4b:   B_H_max vs r in [0, 2] for t in {0, 0.2, 0.4, 0.6};
///   2c, 3b, 4c, 5b: upper bound vs N_e in [0, 2] for t in {0, 0.5, 1, 2},
///             thermal probes with nbar = N_e;
///   6a, 6b:   probe comparison against the SQL.
std::vector<CsvTable> figure_tables(int figure);

}  // namespace gaussprec
