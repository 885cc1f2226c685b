#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ammkit::cli {

struct FigureOptions {
  int grid = 11;
  std::optional<int> level;  // per-figure default when unset
  std::uint64_t seed = 20240611;
  int threads = 0;           // 0: hardware concurrency
};

// Rows are already formatted; failed solves appear as "nan".
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write_csv(std::ostream& out) const;
  // Index of a header column; throws std::out_of_range.
  std::size_t column(const std::string& name) const;
};

const std::vector<std::string>& figure_names();

// Throws std::invalid_argument for an unknown name.
Table make_figure(const std::string& name, const FigureOptions& opts);

}  // namespace ammkit::cli
