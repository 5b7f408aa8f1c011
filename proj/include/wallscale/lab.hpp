#pragma once

// Parameter sweeps over cross-sections and the reports they produce.

#include <iosfwd>
#include <string>
#include <vector>

#include "wallscale/kernels.hpp"
#include "wallscale/minimize.hpp"

namespace wallscale {

/// min E_0 = 16 / sqrt(pi).
double gamma_limit();

/// 200 / sqrt|ln c| + 20 l.
double rate_rhs(const CrossSection& cs);

struct SweepRecord {
  double l = 0.0;
  double d = 0.0;
  double c = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
  double rescaled_min_upper = 0.0;
  double gamma_limit = 0.0;
  double gap = 0.0;
  double rate_rhs = 0.0;
  bool pass = false;
  /// rate_rhs exceeds the limit itself, so the check carries no information.
  bool vacuous_bound = false;
  /// Empty unless the case failed; numeric results are then NaN.
  std::string error;

  bool operator==(const SweepRecord&) const = default;
};

/// Fills every field from the geometry and the rescaled upper energy.
SweepRecord make_sweep_record(const CrossSection& cs, double rescaled_min_upper);

struct SweepConfig {
  AnsatzConfig ansatz;
  /// Cases run concurrently; records come back in input order.
  Execution exec = Execution::parallel;
};

/// One ansatz search per case. Failures of a case are recorded in its error
/// field and the sweep continues. InvalidArgument if some case has c >= 1.
std::vector<SweepRecord> rate_sweep(const std::vector<CrossSection>& cases, const SweepConfig& cfg = {});

/// c in {1e-2, 1e-4, 1e-6, 1e-8} at l in {1e-3, 1e-2}.
std::vector<CrossSection> default_sweep_cases();

struct CorollaryRow {
  double c = 0.0;
  double ratio = 0.0;  ///< a_c / (c |ln c|)
  double lower = 0.0;  ///< (1 - 5 / sqrt|ln c|) / 2
  double upper = 0.0;  ///< (3 + |ln c|) / (2 |ln c|)
  bool in_bracket = false;
};

struct CorollaryReport {
  std::vector<CorollaryRow> rows;
  /// |ratio - 1/2| strictly decreasing along the grid ordered toward c = 0.
  bool gap_decreasing = false;
};

/// Throws VerificationFailure when a ratio leaves its bracket.
CorollaryReport corollary33_report(const std::vector<double>& c_grid, const quad::QuadratureConfig& cfg = {});

enum class ReportFormat { csv, json };

ReportFormat parse_report_format(const std::string& s);

/// Column names in declared order.
const std::vector<std::string>& sweep_columns();

void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records);
void write_sweep_json(std::ostream& out, const std::vector<SweepRecord>& records);
/// Whitespace columns: |ln c|, gap, rate_rhs.
void write_sweep_plot(std::ostream& out, const std::vector<SweepRecord>& records);
std::vector<SweepRecord> read_sweep_json(std::istream& in);
std::vector<SweepRecord> read_sweep_csv(std::istream& in);

void write_corollary_csv(std::ostream& out, const CorollaryReport& report);
void write_corollary_json(std::ostream& out, const CorollaryReport& report);

/// Writes path in the given format plus the plot file path + ".plot".
void emit_report(const std::vector<SweepRecord>& records, ReportFormat format, const std::string& path);

}  // namespace wallscale
