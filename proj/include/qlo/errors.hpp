#pragma once

#include <stdexcept>
#include <string>

namespace qlo {

// Invalid input: malformed graphs, configs, traces from another graph.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A well-formed request that cannot be computed (divergent series, missing root, ...).
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qlo
