#pragma once

#include <stdexcept>
#include <string>

namespace kppdr {

// Malformed topology specification or invalid argument combination.
class InvalidSpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A probability assignment that drives some holding probability (or edge
// probability) below zero. Carries the worst offending node.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& msg, int set, int pos, double holding)
      : std::runtime_error(msg), set(set), pos(pos), holding(holding) {}

  int set;
  int pos;
  double holding;
};

// An iterative routine exhausted its budget; carries the final residual.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& msg, double residual)
      : std::runtime_error(msg), residual(residual) {}

  double residual;
};

}  // namespace kppdr
