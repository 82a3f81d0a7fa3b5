#pragma once

#include <stdexcept>
#include <string>

namespace decaysched {

// Malformed instance, state, action or configuration.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured resource budget (e.g. number of memoized DP states) was hit.
class ResourceExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace decaysched
