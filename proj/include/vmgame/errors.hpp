#pragma once

#include <stdexcept>
#include <string>

namespace vmgame {

// Input or precondition violations (CLI exit code 2).
struct validation_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// File read/write failures (CLI exit code 3).
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An iterative solver exhausted its budget without meeting its tolerance
// (CLI exit code 4). Best-found payloads are still reported by callers.
struct convergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A requested computation exceeds the configured resource budget
// (CLI exit code 5).
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace vmgame
