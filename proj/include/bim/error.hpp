#pragma once

#include <stdexcept>
#include <string>

namespace bim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structure failed one of its defining laws (groupoid tables, carrier closure).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual or JSON input.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A Cuntz computation produced a word longer than the configured cap.
class DepthCapError : public Error {
 public:
  using Error::Error;
};

}  // namespace bim
