#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace conelab {

/// One row of a reproduction table: index, named numeric columns, named
/// boolean checks and an overall pass flag. Column order is the output order.
struct GalleryRow {
  long n = 0;
  std::vector<std::pair<std::string, double>> values;
  std::vector<std::pair<std::string, bool>> flags;
  bool pass = true;

  void set(std::string name, double v) { values.emplace_back(std::move(name), v); }
  void check(std::string name, bool ok) {
    pass = pass && ok;
    flags.emplace_back(std::move(name), ok);
  }

  double value(std::string_view name) const;
  bool flag(std::string_view name) const;
};

}  // namespace conelab
