#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rdlab {

// One inequality / identity check. pass means lhs <= rhs + tolerance.
// For the exponential bounds lhs and rhs are logarithms (check names carry a
// "_log" suffix); everything else is in linear scale.
struct VerificationReport {
  enum class Status { Pass, Fail, Skip };

  std::string check;
  std::string algebra;
  std::string params;  // deterministic fingerprint: stage, n, N, t, sample, seed
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  double tolerance = 0.0;
  Status status = Status::Pass;
  bool approx_grid = false;  // grid-sampled norms on at least one side
  std::string note;

  static VerificationReport bound(std::string check, std::string algebra,
                                  std::string params, double lhs, double rhs,
                                  double tolerance, bool approx_grid = false,
                                  std::string note = {});
  static VerificationReport skip(std::string check, std::string algebra,
                                 std::string reason);
  // Informational row (always pass): lhs carries the value.
  static VerificationReport info(std::string check, std::string algebra,
                                 std::string params, double value,
                                 std::string note = {});
};

struct ReportSummary {
  int pass = 0;
  int fail = 0;
  int skip = 0;
  double worst_margin = 0.0;  // most negative margin over non-skipped checks
  std::vector<std::pair<std::string, double>> slopes;
};

struct ReportBundle {
  std::string config_echo;  // canonical config text the run used
  std::string algebra;
  std::string verb;
  std::uint64_t seed = 0;
  std::vector<VerificationReport> reports;
  std::string version;
  double wall_ms = 0.0;

  ReportSummary summarize() const;
  bool all_passed() const;
};

std::string status_name(VerificationReport::Status s);

// Byte-stable CSV: one row per report, %.17g doubles, no timestamps.
void write_csv(std::ostream& os, const ReportBundle& bundle);

// JSON with the same payload plus summary; wall time and timestamp live in
// fields excluded from determinism comparisons.
void write_json(std::ostream& os, const ReportBundle& bundle);

// Writes <prefix>.csv / <prefix>.json under out_dir per format
// ("csv" | "json" | "both"); returns the written paths.
std::vector<std::string> emit(const ReportBundle& bundle, const std::string& out_dir,
                              const std::string& format, const std::string& prefix);

}  // namespace rdlab
