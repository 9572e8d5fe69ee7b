#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cotype/identities.hpp"
#include "cotype/rational.hpp"

namespace cotype {

struct Check {
  std::string name;
  bool ok = false;
  std::string detail;
};

// One suite run. JSON keys, in order: suite, params, [tolerance], quantities,
// [identity_reports], checks, timing_ms. Everything except timing_ms is a
// deterministic function of the run configuration.
struct SuiteReport {
  std::string suite;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::optional<double> tolerance;
  nlohmann::ordered_json quantities = nlohmann::ordered_json::object();
  std::vector<IdentityReport> identity_reports;
  bool has_identity_reports = false;
  std::vector<Check> checks;
  std::vector<SuiteReport> subreports;  // only the combined "all" run has these
  double timing_ms = 0.0;

  bool all_ok() const;
  nlohmann::ordered_json to_json() const;
};

void add_quantity(SuiteReport& report, const std::string& name, const Rational& value);
void add_quantity(SuiteReport& report, const std::string& name, double value);
void add_quantity(SuiteReport& report, const std::string& name, const std::string& value);
void add_check(SuiteReport& report, const std::string& name, bool ok, const std::string& detail = "");
void add_identity_report(SuiteReport& report, const IdentityReport& identity);

nlohmann::ordered_json identity_report_json(const IdentityReport& report);

// dump(2) with a trailing newline.
std::string render_report(const SuiteReport& report);

}  // namespace cotype
