#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tpsctl {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input violates a structural or probabilistic invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Conditioning on an event of probability zero.
class ZeroProbabilityError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive computation would exceed its enumeration budget.
class BudgetError : public Error {
 public:
  BudgetError(const std::string& what, std::uint64_t required)
      : Error(what), required_(required) {}

  /// Estimated amount of work the refused computation needs.
  std::uint64_t required() const noexcept { return required_; }

 private:
  std::uint64_t required_;
};

/// Network file syntax or content error, carrying the 1-based line number
/// (0 when the problem is not tied to a single line).
class ParseError : public ValidationError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : ValidationError(line == 0 ? what
                                  : "line " + std::to_string(line) + ": " + what),
        line_(line),
        detail_(what) {}

  std::size_t line() const noexcept { return line_; }
  /// Message without the line prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

}  // namespace tpsctl
