#pragma once

#include <stdexcept>
#include <string>

namespace qmix {

// Base of every error thrown by the library. `kind()` is a stable short tag
// used in machine-readable CLI error output.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain_error"; }
};

class PreconditionError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "precondition"; }
};

class ConfigError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "config"; }
};

class IntegrationError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "integration"; }
};

class SteadyStateError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "no_steady_state"; }
};

class ExtractionError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "extraction"; }
};

class ForbiddenIndexError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "forbidden_index"; }
};

class NoOracleError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "no_oracle"; }
};

}  // namespace qmix
