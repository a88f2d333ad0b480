#pragma once

// Named invariant suites run by `cho-spectra verify`. Each check reports a
// pass/fail and a short detail string with the measured quantity.

#include <string>
#include <string_view>
#include <vector>

namespace cho {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
};

/// algebra, basis, hamiltonian, eigensolve, perturbation.
const std::vector<std::string>& suite_names();

/// Runs one suite ("all" runs every suite). Throws std::invalid_argument for
/// an unknown name.
std::vector<CheckResult> run_suite(std::string_view name);

}  // namespace cho
