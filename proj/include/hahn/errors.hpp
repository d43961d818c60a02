#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hahn {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inconsistent field data: mismatched spines, unknown spine labels,
/// malformed configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A mathematical operation is undefined on its input (division by zero,
/// logarithm of a non-positive series, partial coefficient hooks, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The input has no asymptotic integral (its valuation is the supremum of
/// the logarithmic-derivative valuations).
class NoAsymptoticIntegral : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A hard budget (tower depth, iteration count) was exceeded.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant failed; indicates a bug or an unsupported field.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(message + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace hahn
