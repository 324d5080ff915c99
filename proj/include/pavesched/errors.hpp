#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pavesched {

/// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A segment id could not be resolved.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// A segment has no cost entry for a requested fiscal year.
class MissingCostError : public Error {
 public:
  using Error::Error;
};

/// Precondition violation on an operation's arguments.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed input text. Row and column are 1-based; 0 means "not applicable".
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t row = 0, std::string column = {})
      : Error(format(what, row, column)), row_(row), column_(std::move(column)) {}

  std::size_t row() const noexcept { return row_; }
  const std::string& column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t row, const std::string& column) {
    std::string out;
    if (row != 0) out += "row " + std::to_string(row) + ": ";
    if (!column.empty()) out += "column '" + column + "': ";
    return out + what;
  }

  std::size_t row_;
  std::string column_;
};

}  // namespace pavesched
