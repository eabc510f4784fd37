#pragma once

#include <stdexcept>
#include <string>

namespace cva {

/// Invalid user-supplied configuration (unknown type, bad rank, bad flag value).
class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A constructed object failed one of its own integrity checks.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands of incompatible shape were combined.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested computation is not defined for this input.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Random sampling produced only degenerate points.
class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A bracket table is missing an entry the computation needs.
class UndefinedBracket : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A rule table violates its registration invariants.
class RuleSetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two independent evaluation paths disagreed.
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Jacobi defects left the expected span of unknowns.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Closed forms requested outside their domain of validity.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace cva
