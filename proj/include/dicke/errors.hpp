#pragma once

#include <stdexcept>
#include <string>

namespace dicke {

// Base class for computational failures. Invalid user input is reported
// through std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class NotHermitianError : public Error {
 public:
  using Error::Error;
};

// Input lies outside the domain where a formula is defined
// (e.g. superradiant parameters passed to the normal-phase partition ratio).
class DomainError : public Error {
 public:
  using Error::Error;
};

class PoleProximityError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace dicke
