#pragma once

#include <stdexcept>
#include <string>

namespace anderson {

/// Invalid or inconsistent configuration (bad parameters, sizes that overflow).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured workload cap was exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iteration limit hit, factorization breakdown, or an unmet accuracy budget.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace anderson
