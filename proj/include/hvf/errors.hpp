#pragma once

#include <stdexcept>
#include <string>

namespace hvf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand dimensions do not agree (number of variables, exponents, fields).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text or JSON. `where` names the field or offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : Error(where.empty() ? what : where + ": " + what), where_(where) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

/// Derivatives were requested at a point where a profile node is not smooth.
class NonSmoothPointError : public Error {
 public:
  using Error::Error;
};

/// A constructor precondition failed (unsorted exponents, dependent fields...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace hvf
