#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kh {

struct ReportRow {
  std::string suite;
  std::string check_id;
  std::string params_hash;
  double bound = 0.0;
  double actual = 0.0;
  double ratio = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;
  double wall_ms = 0.0;
};

std::string fnv1a_hex(const std::string& payload);
std::string format_double(double v);  // deterministic %.17g

std::string rows_to_csv(const std::vector<ReportRow>& rows);
std::vector<ReportRow> rows_from_csv(const std::string& text);

struct DriftEntry {
  std::string suite;
  std::string check_id;
  double old_ratio = 0.0;
  double new_ratio = 0.0;
  double drift = 0.0;  // |new/old - 1|
};

struct DiffResult {
  std::vector<DriftEntry> flagged;
  int compared = 0;
  bool schema_ok = true;
};

/// Flags rows whose ratio drifted more than `threshold` between two reports.
/// Rows are matched on (suite, check_id, params_hash); wall time is ignored.
DiffResult report_diff(const std::vector<ReportRow>& older, const std::vector<ReportRow>& newer,
                       double threshold = 0.15);

}  // namespace kh
