#include "wallscale/lab.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "wallscale/error.hpp"
#include "wallscale/format.hpp"

namespace wallscale {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

// RFC 4180 record splitter; quoted fields may contain commas, quotes, newlines.
bool read_csv_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  std::string field;
  bool quoted = false;
  bool any = false;
  char ch;
  while (in.get(ch)) {
    any = true;
    if (quoted) {
      if (ch == '"') {
        if (in.peek() == '"') {
          in.get(ch);
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(field);
      field.clear();
    } else if (ch == '\n') {
      break;
    } else if (ch != '\r') {
      field += ch;
    }
  }
  if (!any) return false;
  fields.push_back(field);
  return true;
}

nlohmann::json number(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }
double number(const nlohmann::json& j) { return j.is_null() ? nan : j.get<double>(); }

bool parse_bool(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw InvalidArgument("expected true or false, got '" + s + "'");
}

const char* bool_text(bool b) { return b ? "true" : "false"; }

}  // namespace

double gamma_limit() { return 16.0 / std::sqrt(std::numbers::pi); }

double rate_rhs(const CrossSection& cs) { return 200.0 / std::sqrt(std::abs(std::log(cs.c()))) + 20.0 * cs.l(); }

SweepRecord make_sweep_record(const CrossSection& cs, double rescaled_min_upper) {
  const RescalingParams r = RescalingParams::of(cs);
  SweepRecord s;
  s.l = cs.l();
  s.d = cs.d();
  s.c = cs.c();
  s.lambda = r.lambda;
  s.mu = r.mu;
  s.rescaled_min_upper = rescaled_min_upper;
  s.gamma_limit = gamma_limit();
  s.gap = rescaled_min_upper - s.gamma_limit;
  s.rate_rhs = rate_rhs(cs);
  s.pass = s.gap <= s.rate_rhs && rescaled_min_upper >= s.gamma_limit - s.rate_rhs;
  s.vacuous_bound = s.rate_rhs > s.gamma_limit;
  return s;
}

std::vector<SweepRecord> rate_sweep(const std::vector<CrossSection>& cases, const SweepConfig& cfg) {
  for (const CrossSection& cs : cases)
    if (!(cs.c() < 1.0)) throw InvalidArgument("rate sweep needs c < 1 for every case");
  std::vector<SweepRecord> out(cases.size());
  const auto n = static_cast<std::ptrdiff_t>(cases.size());
#pragma omp parallel for schedule(dynamic) if (cfg.exec == Execution::parallel)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const CrossSection& cs = cases[static_cast<std::size_t>(i)];
    SweepRecord& rec = out[static_cast<std::size_t>(i)];
    try {
      rec = make_sweep_record(cs, minimize_full_ansatz(cs, {}, cfg.ansatz).energy);
    } catch (const std::exception& e) {
      rec = make_sweep_record(cs, nan);
      rec.pass = false;
      rec.error = e.what();
    }
  }
  return out;
}

std::vector<CrossSection> default_sweep_cases() {
  std::vector<CrossSection> cases;
  for (double l : {1e-3, 1e-2})
    for (double c : {1e-2, 1e-4, 1e-6, 1e-8}) cases.emplace_back(l, c * l);
  return cases;
}

CorollaryReport corollary33_report(const std::vector<double>& c_grid, const quad::QuadratureConfig& cfg) {
  CorollaryReport report;
  std::string failures;
  for (double c : c_grid) {
    if (!(c > 0.0 && c < 1.0)) throw InvalidArgument("corollary grid must lie in (0, 1)");
    CorollaryRow row;
    row.c = c;
    row.ratio = a_c_scaling_ratio(c, cfg);
    const double lc = std::abs(std::log(c));
    row.lower = 0.5 * (1.0 - 5.0 / std::sqrt(lc));
    row.upper = (3.0 + lc) / (2.0 * lc);
    row.in_bracket = row.lower <= row.ratio && row.ratio <= row.upper;
    if (!row.in_bracket) failures += " c = " + format_double(c) + " (ratio " + format_double(row.ratio) + ")";
    report.rows.push_back(row);
  }
  if (!failures.empty()) throw VerificationFailure("scaling ratio outside its bracket:" + failures);

  std::vector<CorollaryRow> ordered = report.rows;
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) { return a.c > b.c; });
  report.gap_decreasing = true;
  for (std::size_t i = 1; i < ordered.size(); ++i)
    if (!(std::abs(ordered[i].ratio - 0.5) < std::abs(ordered[i - 1].ratio - 0.5))) report.gap_decreasing = false;
  return report;
}

ReportFormat parse_report_format(const std::string& s) {
  if (s == "csv") return ReportFormat::csv;
  if (s == "json") return ReportFormat::json;
  throw InvalidArgument("unknown format '" + s + "' (expected csv or json)");
}

const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> cols{"l",   "d",        "c",    "lambda", "mu",
                                             "rescaled_min_upper", "gamma_limit", "gap", "rate_rhs",
                                             "pass", "vacuous_bound", "error"};
  return cols;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
  const auto& cols = sweep_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto& r : records) {
    for (double v : {r.l, r.d, r.c, r.lambda, r.mu, r.rescaled_min_upper, r.gamma_limit, r.gap, r.rate_rhs})
      out << format_double(v) << ',';
    out << bool_text(r.pass) << ',' << bool_text(r.vacuous_bound) << ',' << csv_field(r.error) << '\n';
  }
}

void write_sweep_json(std::ostream& out, const std::vector<SweepRecord>& records) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json o;
    o["l"] = number(r.l);
    o["d"] = number(r.d);
    o["c"] = number(r.c);
    o["lambda"] = number(r.lambda);
    o["mu"] = number(r.mu);
    o["rescaled_min_upper"] = number(r.rescaled_min_upper);
    o["gamma_limit"] = number(r.gamma_limit);
    o["gap"] = number(r.gap);
    o["rate_rhs"] = number(r.rate_rhs);
    o["pass"] = r.pass;
    o["vacuous_bound"] = r.vacuous_bound;
    o["error"] = r.error;
    arr.push_back(o);
  }
  out << arr.dump(2) << '\n';
}

void write_sweep_plot(std::ostream& out, const std::vector<SweepRecord>& records) {
  out << "# abs_ln_c gap rate_rhs\n";
  for (const auto& r : records)
    out << format_double(std::abs(std::log(r.c))) << ' ' << format_double(r.gap) << ' ' << format_double(r.rate_rhs)
        << '\n';
}

std::vector<SweepRecord> read_sweep_json(std::istream& in) {
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed sweep JSON: ") + e.what());
  }
  if (!arr.is_array()) throw InvalidArgument("sweep JSON must be an array");
  std::vector<SweepRecord> out;
  try {
    for (const auto& o : arr) {
      SweepRecord r;
      r.l = number(o.at("l"));
      r.d = number(o.at("d"));
      r.c = number(o.at("c"));
      r.lambda = number(o.at("lambda"));
      r.mu = number(o.at("mu"));
      r.rescaled_min_upper = number(o.at("rescaled_min_upper"));
      r.gamma_limit = number(o.at("gamma_limit"));
      r.gap = number(o.at("gap"));
      r.rate_rhs = number(o.at("rate_rhs"));
      r.pass = o.at("pass").get<bool>();
      r.vacuous_bound = o.at("vacuous_bound").get<bool>();
      r.error = o.at("error").get<std::string>();
      out.push_back(r);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed sweep record: ") + e.what());
  }
  return out;
}

std::vector<SweepRecord> read_sweep_csv(std::istream& in) {
  std::vector<std::string> f;
  if (!read_csv_record(in, f) || f != sweep_columns()) throw InvalidArgument("sweep CSV header mismatch");
  std::vector<SweepRecord> out;
  while (read_csv_record(in, f)) {
    if (f.size() == 1 && f[0].empty()) continue;
    if (f.size() != sweep_columns().size()) throw InvalidArgument("sweep CSV row has the wrong number of fields");
    SweepRecord r;
    double* nums[] = {&r.l, &r.d, &r.c, &r.lambda, &r.mu, &r.rescaled_min_upper, &r.gamma_limit, &r.gap, &r.rate_rhs};
    for (std::size_t i = 0; i < 9; ++i) *nums[i] = parse_double(f[i]);
    r.pass = parse_bool(f[9]);
    r.vacuous_bound = parse_bool(f[10]);
    r.error = f[11];
    out.push_back(r);
  }
  return out;
}

void write_corollary_csv(std::ostream& out, const CorollaryReport& report) {
  out << "c,ratio,lower,upper,in_bracket\n";
  for (const auto& r : report.rows)
    out << format_double(r.c) << ',' << format_double(r.ratio) << ',' << format_double(r.lower) << ','
        << format_double(r.upper) << ',' << bool_text(r.in_bracket) << '\n';
  out << "# gap_decreasing," << bool_text(report.gap_decreasing) << '\n';
}

void write_corollary_json(std::ostream& out, const CorollaryReport& report) {
  nlohmann::ordered_json j;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : report.rows)
    j["rows"].push_back({{"c", r.c}, {"ratio", r.ratio}, {"lower", r.lower}, {"upper", r.upper},
                         {"in_bracket", r.in_bracket}});
  j["gap_decreasing"] = report.gap_decreasing;
  out << j.dump(2) << '\n';
}

void emit_report(const std::vector<SweepRecord>& records, ReportFormat format, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  if (format == ReportFormat::csv)
    write_sweep_csv(out, records);
  else
    write_sweep_json(out, records);
  std::ofstream plot(path + ".plot");
  if (!plot) throw InvalidArgument("cannot write " + path + ".plot");
  write_sweep_plot(plot, records);
  out.close();
  plot.close();
  if (!out || !plot) throw InvalidArgument("write to " + path + " failed");
}

}  // namespace wallscale
