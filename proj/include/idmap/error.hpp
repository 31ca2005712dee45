#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace idmap {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (XML, ground truth). Carries a 1-based location.
class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t line, std::size_t column)
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

/// Well-formed XML that does not follow the code-model schema.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& element, const std::string& message)
      : Error("<" + element + ">: " + message), element_(element) {}

  const std::string& element() const noexcept { return element_; }

 private:
  std::string element_;
};

/// A value that breaks a data-model invariant.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Bad arguments to an operation (too few variants, duplicate names, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace idmap
