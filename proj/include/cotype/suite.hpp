#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cotype/report.hpp"

namespace cotype {

// One run of the benchmark driver. `n == 0` means "suite default": 2 for the
// torus suites, table size 12 for the bernoulli suite.
struct RunConfig {
  std::string suite = "all";
  int n = 0;
  long m = 8;
  long k = 3;
  double q = 2.0;
  std::string p = "2";  // "1" | "2" | "inf"
  int d = 1;
  std::uint64_t seed = 1;
  std::string mode = "exact";  // "exact" | "float"
  std::uint64_t budget = 1000000;
  std::string out;      // report path; empty -> stdout
  std::string csv_out;  // bernoulli table CSV path (optional)
  std::string function = "torus-abs";  // "torus-abs" | "random" | "file:<path>"
  int functions = 5;    // family size when function == "random"
};

extern const std::vector<std::string> kSuiteNames;  // the six runnable suites

// Throws std::invalid_argument / std::domain_error on unusable configurations.
SuiteReport build_suite_report(const RunConfig& config);

// Builds the report, writes it to config.out (or stdout), returns 0 when every
// check passed and 1 otherwise. Configuration errors propagate as exceptions.
int run_suite(const RunConfig& config);

}  // namespace cotype
