#include "cotype/report.hpp"

namespace cotype {

bool SuiteReport::all_ok() const {
  for (const Check& c : checks)
    if (!c.ok) return false;
  for (const SuiteReport& sub : subreports)
    if (!sub.all_ok()) return false;
  return true;
}

nlohmann::ordered_json identity_report_json(const IdentityReport& report) {
  nlohmann::ordered_json j;
  j["identity"] = report.identity;
  j["domain"] = report.domain;
  j["mode"] = report.mode;
  j["checked"] = report.checked;
  j["failure_count"] = report.failure_count;
  j["failures"] = report.failures;
  return j;
}

nlohmann::ordered_json SuiteReport::to_json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["params"] = params;
  if (tolerance) j["tolerance"] = *tolerance;
  j["quantities"] = quantities;
  if (has_identity_reports) {
    auto arr = nlohmann::ordered_json::array();
    for (const IdentityReport& r : identity_reports) arr.push_back(identity_report_json(r));
    j["identity_reports"] = std::move(arr);
  }
  if (!subreports.empty()) {
    auto arr = nlohmann::ordered_json::array();
    for (const SuiteReport& sub : subreports) arr.push_back(sub.to_json());
    j["reports"] = std::move(arr);
  }
  auto checks_json = nlohmann::ordered_json::array();
  for (const Check& c : checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["ok"] = c.ok;
    if (!c.detail.empty()) cj["detail"] = c.detail;
    checks_json.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks_json);
  j["timing_ms"] = timing_ms;
  return j;
}

void add_quantity(SuiteReport& report, const std::string& name, const Rational& value) {
  report.quantities[name] = to_fraction_string(value);
}

void add_quantity(SuiteReport& report, const std::string& name, double value) {
  report.quantities[name] = value;
}

void add_quantity(SuiteReport& report, const std::string& name, const std::string& value) {
  report.quantities[name] = value;
}

void add_check(SuiteReport& report, const std::string& name, bool ok, const std::string& detail) {
  report.checks.push_back({name, ok, detail});
}

void add_identity_report(SuiteReport& report, const IdentityReport& identity) {
  report.has_identity_reports = true;
  report.identity_reports.push_back(identity);
}

std::string render_report(const SuiteReport& report) { return report.to_json().dump(2) + "\n"; }

}  // namespace cotype
