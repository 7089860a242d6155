#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "curvebound/rational.hpp"

namespace curvebound {

struct RunConfig {
  std::string command;
  std::string source;
  Rational laziness = half();
  std::string envelope = "empirical";  // curvature | empirical | constant | file:<path>
  std::string sigma = "auto";          // auto | middle-slice | sphere:<x>,<r> | <file>
  std::string format = "json";         // json | csv | human
  std::uint64_t seed = 0;
  int max_dense = 1500;
  bool interior_only = false;
  std::string kind = "outer";  // cheeger: edge | inner | outer
  int order = 1;               // cheeger: h_out(n) when > 1

  nlohmann::json to_json() const;
};

struct Verdict {
  std::string id;
  std::string description;
  std::string status;  // pass | fail | skipped | error
  std::string detail;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// Deterministic for a fixed configuration: object keys are sorted,
/// rationals are "p/q" strings and floats use shortest round-trip form.
struct ReportDocument {
  std::string tool_version;
  std::string command;
  nlohmann::json config;
  nlohmann::json sections = nlohmann::json::object();
  /// Plot-ready table for CSV output.
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<Verdict> verdicts;
  /// 0 all asserted statements hold, 1 violation, 2 usage or guard error.
  int exit_code = 0;

  nlohmann::json to_json() const;
  static ReportDocument from_json(const nlohmann::json& j);
  friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

std::string tool_version();

ReportDocument cmd_curvature(const RunConfig& config);
ReportDocument cmd_cheeger(const RunConfig& config);
ReportDocument cmd_shells(const RunConfig& config);
ReportDocument cmd_bound(const RunConfig& config);
ReportDocument cmd_spectrum(const RunConfig& config);
ReportDocument cmd_verify(const RunConfig& config);

/// Dispatches on config.command. Library errors become exit code 2 with the
/// message recorded under sections["error"].
ReportDocument run_command(const RunConfig& config);

std::string render(const ReportDocument& doc, const std::string& format);

}  // namespace curvebound
