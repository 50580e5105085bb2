#pragma once

#include <stdexcept>
#include <string>

namespace slicerank {

// Base of every error raised by the library. The CLI maps all of these to
// exit status 2; verification verdicts are returned as values, never thrown.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Input violates a documented precondition (shape mismatch, bad domain, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A size guard (dense tensor cap, exhaustive search cap, ...) was exceeded.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

// An operation that requires verified input received input that fails its
// verifier.
class UnverifiedInput : public Error {
 public:
  using Error::Error;
};

}  // namespace slicerank
