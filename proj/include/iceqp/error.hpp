#pragma once

#include <stdexcept>
#include <string>

namespace iceqp {

/// Base class of every error thrown by the library. The kind determines the
/// command-line exit code.
class Error : public std::runtime_error {
 public:
  enum class Kind { Validation = 1, Parse = 2, Precondition = 3 };

  Error(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }
  int exit_code() const { return static_cast<int>(kind_); }

 private:
  Kind kind_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message) : Error(Kind::Validation, message) {}
};

/// Malformed input. `where` is a byte offset or a JSON pointer into the
/// offending document, empty when unknown.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message, std::string where = {})
      : Error(Kind::Parse, where.empty() ? message : message + " at " + where), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& message) : Error(Kind::Precondition, message) {}
};

}  // namespace iceqp
