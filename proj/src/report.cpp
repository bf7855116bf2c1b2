#include "steer/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace steer {

using nlohmann::json;

void RunReport::add_witness(const std::string& name, double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("RunReport: witness '" + name + "' is not finite");
  witness_values[name] = value;
}

const VerdictSummary* RunReport::find_verdict(const std::string& name) const {
  for (const auto& v : verdicts)
    if (v.name == name) return &v;
  return nullptr;
}

json to_json(const RunReport& r) {
  json verdicts = json::array();
  for (const auto& v : r.verdicts) verdicts.push_back({{"name", v.name}, {"status", v.status}, {"detail", v.detail}});
  json out{{"command", r.command},   {"inputs", r.inputs},     {"verdicts", verdicts},
           {"witness_values", r.witness_values}, {"timing_ms", r.timing_ms}, {"messages", r.messages},
           {"findings", r.findings}, {"metadata", r.metadata}};
  if (!r.table_columns.empty()) out["table"] = {{"columns", r.table_columns}, {"rows", r.table_rows}};
  return out;
}

RunReport report_from_json(const json& j) {
  RunReport r;
  r.command = j.at("command").get<std::string>();
  r.inputs = j.at("inputs");
  for (const auto& v : j.at("verdicts"))
    r.verdicts.push_back({v.at("name").get<std::string>(), v.at("status").get<std::string>(), v.at("detail")});
  r.witness_values = j.at("witness_values").get<std::map<std::string, double>>();
  r.timing_ms = j.at("timing_ms").get<double>();
  r.messages = j.at("messages").get<std::vector<std::string>>();
  r.findings = j.at("findings");
  r.metadata = j.at("metadata");
  if (j.contains("table")) {
    r.table_columns = j.at("table").at("columns").get<std::vector<std::string>>();
    r.table_rows = j.at("table").at("rows").get<std::vector<std::vector<std::string>>>();
  }
  return r;
}

std::string to_csv(const RunReport& r) {
  std::ostringstream out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(r.table_columns);
  for (const auto& row : r.table_rows) line(row);
  return out.str();
}

std::string format_real(double v) {
  char buf[32];
  for (int prec = 6; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

namespace {

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json verdict_detail(const QubitVerdict& v) {
  json model = json::array();
  for (const auto& h : v.model)
    model.push_back({{"weight", h.weight}, {"responses", h.responses}, {"bloch", {h.bloch[0], h.bloch[1], h.bloch[2]}}});
  return {{"status", to_string(v.status)},
          {"decided_by", v.decided_by},
          {"mesh", v.mesh_size},
          {"tol", v.tol},
          {"inner_residual", v.inner_residual},
          {"outer_residual", v.outer_residual},
          {"columns", v.columns},
          {"witness_value", finite_or_null(v.witness_value)},
          {"witness_bound", finite_or_null(v.witness_bound)},
          {"model", model},
          {"certificate", v.certificate}};
}

json verdict_detail(const BoxVerdict& v) {
  json model = json::array();
  for (const auto& h : v.model)
    model.push_back({{"weight", to_string(h.weight)}, {"alice", h.alice_responses}, {"bob", h.bob_responses}});
  json cert = json::array();
  for (const auto& c : v.certificate) cert.push_back(to_string(c));
  json out{{"status", to_string(v.status)}, {"mode", "exact"}, {"columns", v.columns}, {"model", model},
           {"certificate", cert}};
  if (v.status == FeasibilityStatus::Infeasible) {
    out["witness_value"] = to_string(v.witness_value);
    out["witness_bound"] = to_string(v.witness_bound);
  }
  return out;
}

}  // namespace steer
