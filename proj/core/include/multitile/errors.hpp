#pragma once

#include <stdexcept>
#include <string>

namespace multitile {

// Base of every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Interval refinement reached the precision cap without separating a value
// from zero.
class SignIndeterminate : public Error {
 public:
  using Error::Error;
};

// A symbolic generator cannot be enclosed as tightly as requested.
class PrecisionUnreachable : public Error {
 public:
  using Error::Error;
};

// Multiplication or division would leave the single-quadratic-field tier.
class FieldClosureViolation : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class DimensionUnsupported : public Error {
 public:
  using Error::Error;
};

// The requested verification mode cannot run on this input.
class ModeUnavailable : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input data.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

}  // namespace multitile
