#pragma once

#include <stdexcept>
#include <string>

namespace biphoton {

// Invalid user-facing configuration: scenario files, CLI values, coefficient
// files, or parameters that violate a documented precondition.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure at runtime: calibration brackets that do not contain a
// root, analysis on degenerate data, or out-of-range model evaluation.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace biphoton
