#pragma once

#include <stdexcept>
#include <string>

namespace vilenkin {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violates a structural precondition (digit out of range,
/// mismatched groups, index beyond the resolution).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A number system or experiment cannot be set up (overflow, memory cap,
/// malformed config).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A real parameter lies outside the domain where the quantity is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The call is well-formed but not meaningful for the chosen strategy.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace vilenkin
