#pragma once

// Frozen reference values: CSV rows case_id,component,value,tolerance.

#include <iosfwd>
#include <string>
#include <vector>

namespace wallscale {

struct GoldenEntry {
  std::string case_id;
  std::string component;
  double value = 0.0;
  double tolerance = 0.0;  ///< relative
};

std::vector<GoldenEntry> read_golden_csv(std::istream& in);
void write_golden_csv(std::ostream& out, const std::vector<GoldenEntry>& rows);

/// $WALLSCALE_GOLDEN_DIR if set, else fallback.
std::string golden_dir(const std::string& fallback);

/// Reads <dir>/golden.csv and returns the matching row; InvalidArgument if absent.
GoldenEntry find_golden(const std::string& dir, const std::string& case_id, const std::string& component);

}  // namespace wallscale
