#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nldist/box.hpp"

namespace nldist {

struct VerifyOptions {
  std::vector<std::string> suites{"all"};
  std::uint64_t seed = 20240101;
  double oracle_tol = kOracleTol;
  double invariant_tol = kInvariantTol;
  int samples = 1000;
};

struct CheckResult {
  std::string suite;
  std::string name;
  double measured = 0.0;   // residual or margin, depending on the check
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

const std::vector<std::string>& verify_suite_names();

// Runs the oracle-vs-closed-form checks of the selected suites in a fixed
// order. Throws std::invalid_argument for an unknown suite name.
std::vector<CheckResult> run_verify(const VerifyOptions& options);

}  // namespace nldist
