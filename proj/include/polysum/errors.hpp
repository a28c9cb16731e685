#pragma once

#include <stdexcept>
#include <string>

namespace polysum {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when an evaluation point coincides bit-exactly with a root of a
// factored polynomial (the derivative ratio p'/p is undefined there).
struct EvalAtRootError : std::runtime_error {
  EvalAtRootError() : std::runtime_error("evaluation at root") {}
};

struct DerivativeVanishedError : std::runtime_error {
  DerivativeVanishedError() : std::runtime_error("derivative vanished") {}
};

struct GridCoverageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace polysum
