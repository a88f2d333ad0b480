#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cho/eigensolve.hpp"
#include "cho/hamiltonian.hpp"

namespace cho::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 2,
  kSizeBudget = 3,
  kSolverFailure = 4,
  kVerificationFailure = 5,
};

struct RunConfig {
  std::uint32_t d = 1;
  std::vector<std::uint32_t> n_values{40};  // converge takes several, other commands one
  double lambda = 0.0;
  std::optional<PhysicalUnits> physical;
  std::string solver = "dense";
  std::size_t k = 5;
  double tol = 1e-10;
  std::size_t max_iter = 100000;
  std::uint64_t seed = LanczosOptions{}.seed;
  bool matrix_free = false;
  std::size_t levels = 6;
  std::string suite = "all";
  std::string output;
  std::string format;
  std::uint64_t dense_cap = AssemblyLimits{}.dense_cap;
  std::uint64_t memory_budget_bytes = AssemblyLimits{}.memory_budget_bytes;
  bool timestamp = true;

  std::uint32_t n() const { return n_values.front(); }
  double effective_lambda() const { return physical ? physical->lambda() : lambda; }
  AssemblyLimits limits() const { return {dense_cap, memory_budget_bytes}; }
};

/// "hbar=1,m=1,L=1,omega=2" -> PhysicalUnits. Throws std::invalid_argument.
PhysicalUnits parse_physical(const std::string& spec);

nlohmann::ordered_json spectrum_to_json(const Spectrum& spectrum, const OscillatorConfig& cfg,
                                        const RunConfig& run);

int cmd_eigs(const RunConfig& run, std::ostream& out, std::ostream& err);
int cmd_perturb(const RunConfig& run, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& run, std::ostream& out, std::ostream& err);
int cmd_converge(const RunConfig& run, std::ostream& out, std::ostream& err);
int cmd_export(const RunConfig& run, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cho::cli
