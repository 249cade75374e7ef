#pragma once

#include <stdexcept>
#include <string>

namespace wamen {

/// Base for every error the library reports. The CLI maps all of them to
/// exit code 1 except InfeasibleError.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input (graph, weight, cover or report files, words, fractions).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input parsed but breaks a structural invariant.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Operation called outside its domain, e.g. a translate leaving the window.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A valid run that did not produce the requested object (no compression,
/// no accepted trial, no even partition).
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace wamen
