#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace frlstsvm {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file. `line` is 1-based, 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(what), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Data violating a domain invariant (single class, non-finite values, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Shape mismatch between operands.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Invalid parameter or configuration value.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Threshold removed every majority instance.
class EmptySelectionError : public ConfigError {
 public:
  EmptySelectionError(const std::string& what, double tau) : ConfigError(what), tau_(tau) {}
  double tau() const noexcept { return tau_; }

 private:
  double tau_;
};

}  // namespace frlstsvm
