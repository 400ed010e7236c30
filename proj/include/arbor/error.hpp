#pragma once

#include <stdexcept>
#include <string>

namespace arbor {

/// Malformed or inconsistent user input (unknown names, broken documents,
/// violated preconditions that the caller could have checked).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal invariant does not hold. Seeing one of these is a bug.
class IntegrityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The instance is outside what a pipeline stage can handle
/// (e.g. a strategy enumeration exceeding its budget).
class UnsupportedInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace arbor
