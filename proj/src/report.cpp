#include "rdlab/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace rdlab {

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

}  // namespace

VerificationReport VerificationReport::bound(std::string check, std::string algebra,
                                             std::string params, double lhs, double rhs,
                                             double tolerance, bool approx_grid,
                                             std::string note) {
  VerificationReport r;
  r.check = std::move(check);
  r.algebra = std::move(algebra);
  r.params = std::move(params);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.tolerance = tolerance;
  r.status = lhs <= rhs + tolerance ? Status::Pass : Status::Fail;
  r.approx_grid = approx_grid;
  r.note = std::move(note);
  return r;
}

VerificationReport VerificationReport::skip(std::string check, std::string algebra,
                                            std::string reason) {
  VerificationReport r;
  r.check = std::move(check);
  r.algebra = std::move(algebra);
  r.status = Status::Skip;
  r.note = std::move(reason);
  return r;
}

VerificationReport VerificationReport::info(std::string check, std::string algebra,
                                            std::string params, double value,
                                            std::string note) {
  VerificationReport r;
  r.check = std::move(check);
  r.algebra = std::move(algebra);
  r.params = std::move(params);
  r.lhs = value;
  r.rhs = value;
  r.status = Status::Pass;
  r.note = std::move(note);
  return r;
}

std::string status_name(VerificationReport::Status s) {
  switch (s) {
    case VerificationReport::Status::Pass: return "pass";
    case VerificationReport::Status::Fail: return "fail";
    case VerificationReport::Status::Skip: return "skip";
  }
  return "unknown";
}

ReportSummary ReportBundle::summarize() const {
  ReportSummary s;
  bool first = true;
  for (const auto& r : reports) {
    switch (r.status) {
      case VerificationReport::Status::Pass: ++s.pass; break;
      case VerificationReport::Status::Fail: ++s.fail; break;
      case VerificationReport::Status::Skip: ++s.skip; continue;
    }
    if (first || r.margin < s.worst_margin) {
      s.worst_margin = r.margin;
      first = false;
    }
    if (r.check == "pbe_slope") s.slopes.emplace_back(r.params, r.lhs);
  }
  return s;
}

bool ReportBundle::all_passed() const {
  for (const auto& r : reports) {
    if (r.status == VerificationReport::Status::Fail) return false;
  }
  return true;
}

void write_csv(std::ostream& os, const ReportBundle& bundle) {
  os << "check,algebra,params,lhs,rhs,margin,tolerance,status,approx,note\n";
  for (const auto& r : bundle.reports) {
    os << csv_escape(r.check) << ',' << csv_escape(r.algebra) << ','
       << csv_escape(r.params) << ',' << g17(r.lhs) << ',' << g17(r.rhs) << ','
       << g17(r.margin) << ',' << g17(r.tolerance) << ',' << status_name(r.status) << ','
       << (r.approx_grid ? "grid" : "exact") << ',' << csv_escape(r.note) << '\n';
  }
}

void write_json(std::ostream& os, const ReportBundle& bundle) {
  nlohmann::ordered_json j;
  j["verb"] = bundle.verb;
  j["algebra"] = bundle.algebra;
  j["seed"] = bundle.seed;
  j["version"] = bundle.version;
  j["config"] = bundle.config_echo;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : bundle.reports) {
    nlohmann::ordered_json row;
    row["check"] = r.check;
    row["algebra"] = r.algebra;
    row["params"] = r.params;
    row["lhs"] = g17(r.lhs);
    row["rhs"] = g17(r.rhs);
    row["margin"] = g17(r.margin);
    row["tolerance"] = g17(r.tolerance);
    row["status"] = status_name(r.status);
    row["approx"] = r.approx_grid ? "grid" : "exact";
    row["note"] = r.note;
    rows.push_back(std::move(row));
  }
  j["reports"] = std::move(rows);
  const auto s = bundle.summarize();
  j["summary"]["pass"] = s.pass;
  j["summary"]["fail"] = s.fail;
  j["summary"]["skip"] = s.skip;
  j["summary"]["worst_margin"] = g17(s.worst_margin);
  auto slopes = nlohmann::ordered_json::array();
  for (const auto& [params, slope] : s.slopes) {
    slopes.push_back({{"params", params}, {"slope", g17(slope)}});
  }
  j["summary"]["pbe_slopes"] = std::move(slopes);
  // Excluded from determinism comparisons.
  j["wall_ms"] = bundle.wall_ms;
  os << j.dump(2) << '\n';
}

std::vector<std::string> emit(const ReportBundle& bundle, const std::string& out_dir,
                              const std::string& format, const std::string& prefix) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  std::vector<std::string> written;
  const bool want_csv = format == "csv" || format == "both";
  const bool want_json = format == "json" || format == "both";
  if (!want_csv && !want_json) {
    throw std::invalid_argument("emit: format must be csv, json or both");
  }
  if (want_csv) {
    const auto path = (fs::path(out_dir) / (prefix + ".csv")).string();
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("emit: cannot open " + path);
    write_csv(os, bundle);
    written.push_back(path);
  }
  if (want_json) {
    const auto path = (fs::path(out_dir) / (prefix + ".json")).string();
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("emit: cannot open " + path);
    write_json(os, bundle);
    written.push_back(path);
  }
  return written;
}

}  // namespace rdlab
