#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jck {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A term or formula violates the sort discipline.
class SortError : public Error {
 public:
  SortError(std::string subterm, std::string rule)
      : Error("sort error in `" + subterm + "`: " + rule),
        subterm_(std::move(subterm)),
        rule_(std::move(rule)) {}

  const std::string& subterm() const noexcept { return subterm_; }
  const std::string& rule() const noexcept { return rule_; }

 private:
  std::string subterm_;
  std::string rule_;
};

/// Malformed concrete syntax. `position` is a byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error("parse error at " + std::to_string(position) + ": " + message),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A configured size cap was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Precondition violation on a caller-supplied object.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class UnknownWorld : public Error {
 public:
  using Error::Error;
};

}  // namespace jck
