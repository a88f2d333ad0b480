#pragma once

#include <stdexcept>
#include <string>

namespace cho {

/// A requested matrix or allocation would exceed a configured cap or budget.
class size_error : public std::length_error {
 public:
  explicit size_error(const std::string& what) : std::length_error(what) {}
};

/// A caller broke an operation's precondition (e.g. asked for the differing
/// axis of two labels that do not differ in exactly one coordinate).
class contract_error : public std::logic_error {
 public:
  explicit contract_error(const std::string& what) : std::logic_error(what) {}
};

/// An iterative or dense eigensolver failed to converge.
class convergence_error : public std::runtime_error {
 public:
  explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cho
