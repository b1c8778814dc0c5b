#pragma once

#include <stdexcept>
#include <string>

namespace essrad {

/// Operands whose shapes or band structures cannot be combined.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A value outside the domain of an operation (negative entry, t <= 0, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Symbolic closure of an operator family exceeded its complexity cap.
class ClosureOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed JSON input; the message names the offending field.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration (set product, word tree, ...) would exceed its size cap.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace essrad
