#pragma once

#include <stdexcept>
#include <string>

namespace pliable {

// Base for every error raised by the library. Callers that only care about
// "something in pliable failed" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Linear system A_sub * b = x has no solution: the transmissions are corrupt.
class InconsistentSystem : public Error {
 public:
  using Error::Error;
};

// The requested unknown is not pinned down by the system.
class NotDetermined : public Error {
 public:
  using Error::Error;
};

// No capacitated assignment of clients to requested messages exists.
class Infeasible : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// A solver produced a scheme that fails verification. Always a bug.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace pliable
