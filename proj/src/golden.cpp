#include "wallscale/golden.hpp"

#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "wallscale/error.hpp"
#include "wallscale/format.hpp"

namespace wallscale {

std::vector<GoldenEntry> read_golden_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("case_id,component,value,tolerance", 0) != 0)
    throw InvalidArgument("golden CSV must start with case_id,component,value,tolerance");
  std::vector<GoldenEntry> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string f[4];
    int k = 0;
    while (k < 4 && std::getline(ss, f[k], ',')) ++k;
    if (k != 4) throw InvalidArgument("golden CSV row needs 4 fields: " + line);
    rows.push_back({f[0], f[1], parse_double(f[2]), parse_double(f[3])});
  }
  return rows;
}

void write_golden_csv(std::ostream& out, const std::vector<GoldenEntry>& rows) {
  out << "case_id,component,value,tolerance\n";
  for (const auto& r : rows)
    out << r.case_id << ',' << r.component << ',' << format_double(r.value) << ',' << format_double(r.tolerance)
        << '\n';
}

std::string golden_dir(const std::string& fallback) {
  const char* env = std::getenv("WALLSCALE_GOLDEN_DIR");
  return (env != nullptr && *env != '\0') ? std::string(env) : fallback;
}

GoldenEntry find_golden(const std::string& dir, const std::string& case_id, const std::string& component) {
  const std::string path = dir + "/golden.csv";
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open golden file " + path);
  for (const auto& r : read_golden_csv(in))
    if (r.case_id == case_id && r.component == component) return r;
  throw InvalidArgument("no golden value for " + case_id + "/" + component + " in " + path);
}

}  // namespace wallscale
