#pragma once

#include <stdexcept>
#include <string>

namespace smeared {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A constants file is missing something or has a value of the wrong type.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// An input violates a documented invariant (negative length, bad quantum numbers, ...).
class ValidationError : public Error {
public:
  using Error::Error;
};

/// A file could not be parsed. Carries the 1-based line of the failure.
class FormatError : public Error {
public:
  FormatError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// The request is outside what the implementation supports (e.g. n above the guard).
class CapabilityError : public Error {
public:
  using Error::Error;
};

/// A numerical oracle failed to resolve or converge.
class OracleError : public Error {
public:
  using Error::Error;
};

/// Bad command line.
class UsageError : public Error {
public:
  using Error::Error;
};

} // namespace smeared
