#pragma once

#include <stdexcept>
#include <string>

namespace evoalg {

/// Malformed input or a violated precondition. The CLI maps it to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration would exceed the desk-scale budget. The CLI maps it to exit code 3.
class BudgetError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace evoalg
