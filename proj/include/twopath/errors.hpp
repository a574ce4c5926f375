#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace twopath {

/// Four terminals that are not pairwise distinct or not present in the graph.
struct InvalidTerminals : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An edge references a node outside the node set.
struct InvalidGraph : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ParseError : std::runtime_error {
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
  std::size_t line;
};

struct MissingTerminals : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// tr(A R_k) not divisible by k. Mathematically impossible, so it flags a bug.
struct DivisibilityViolation : std::logic_error {
  using std::logic_error::logic_error;
};

/// An enumeration exceeded its configured cap; the Mason oracle does not apply.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The brute-force path search exhausted its node-expansion budget.
struct SearchBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A self-check of the algebra failed (resolvent identity, certificate, ...).
struct InvariantViolation : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace twopath
