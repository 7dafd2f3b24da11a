#pragma once

#include <string>
#include <vector>

namespace dtfe {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;
  bool passed() const;
};

// Suites: mass, unbiased1d, variance1d, constants2d, kernels, specialfn.
std::vector<std::string> verify_suite_names();

// Runs one suite; throws std::invalid_argument for an unknown name.
SuiteResult run_verify_suite(const std::string& name);

}  // namespace dtfe
