#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "medialcorr/estimator.hpp"
#include "medialcorr/sampler.hpp"

namespace medialcorr {

/// File-level failures (unreadable path, malformed cells, ragged rows).
/// Distinct from std::invalid_argument so the CLI can map it to its own
/// exit code.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Column picked by zero-based index or by header name.
using ColumnSelector = std::variant<int, std::string>;

struct CsvSpec {
  char delimiter = ',';  // ',' or ';'
  bool has_header = true;
  std::vector<ColumnSelector> columns;  // at least 2, distinct
};

/// Loads the selected columns in the requested order. Decimal separator is
/// "." only; fields may be wrapped in double quotes. Errors name the exact
/// 1-based row and column of the offending cell.
DataMatrix load_csv(const std::string& path, const CsvSpec& spec);

/// Full-precision CSV (round-trips through load_csv bit-exactly).
void write_matrix_csv(const Eigen::MatrixXd& values, const std::vector<std::string>& labels,
                      const std::string& path);

void write_batch_csv(const SampleBatch& batch, const std::string& path);

enum class ReportFormat { json, table };

/// Stable JSON form: field set and order are fixed, doubles serialized
/// shortest-round-trip, so identical reports produce identical bytes.
nlohmann::ordered_json report_to_json(const CoefficientsReport& report,
                                      const BootstrapResult* ci = nullptr);

CoefficientsReport report_from_json(const nlohmann::json& j);

/// Per-coordinate component rows plus the overall coefficient, rounded to
/// 3 decimals.
std::string format_report_table(const CoefficientsReport& report);

/// Writes the report to `out` in the requested format.
void write_report(const CoefficientsReport& report, std::ostream& out, ReportFormat format,
                  const BootstrapResult* ci = nullptr);

/// Writes to a file path instead (IoError if unwritable).
void write_report(const CoefficientsReport& report, const std::string& path, ReportFormat format,
                  const BootstrapResult* ci = nullptr);

}  // namespace medialcorr
