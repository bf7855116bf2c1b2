#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "steer/steering.hpp"

namespace steer {

inline constexpr const char* kVersion = "0.1.0";

struct VerdictSummary {
  std::string name;
  std::string status;
  nlohmann::json detail = nlohmann::json::object();
  friend bool operator==(const VerdictSummary&, const VerdictSummary&) = default;
};

/// Everything a command produced. `table` holds plot-ready rows for --csv.
struct RunReport {
  std::string command;
  nlohmann::json inputs = nlohmann::json::object();
  std::vector<VerdictSummary> verdicts;
  std::map<std::string, double> witness_values;
  double timing_ms = 0.0;
  std::vector<std::string> messages;
  /// Command-specific structured results (contexts, brackets, exact values).
  nlohmann::json findings = nlohmann::json::object();
  nlohmann::json metadata = nlohmann::json::object();
  std::vector<std::string> table_columns;
  std::vector<std::vector<std::string>> table_rows;

  /// Finite values only: JSON has no representation for inf or NaN.
  void add_witness(const std::string& name, double value);
  const VerdictSummary* find_verdict(const std::string& name) const;
  friend bool operator==(const RunReport&, const RunReport&) = default;
};

nlohmann::json to_json(const RunReport& report);
RunReport report_from_json(const nlohmann::json& j);
std::string to_csv(const RunReport& report);

nlohmann::json verdict_detail(const QubitVerdict& v);
nlohmann::json verdict_detail(const BoxVerdict& v);

/// Shortest decimal that parses back to the same double.
std::string format_real(double v);

}  // namespace steer
