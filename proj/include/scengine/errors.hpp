#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scengine {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed group-spec text. `position()` is a 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error("parse error at position " + std::to_string(position) + ": " + message),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A configured size limit (group order, class count, orbit count) was exceeded.
class BoundError : public Error {
 public:
  using Error::Error;
};

/// Caller supplied input that violates an operation's precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed (orthogonality, axiom verification).
class VerificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace scengine
