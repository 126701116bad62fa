#pragma once

#include <stdexcept>
#include <string>

namespace fibwalk {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input rejected before any computation. The CLI maps these to exit code 1.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class BoundsError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ShapeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Time window reaches the lattice boundary (T >= N/2).
class BoundaryContaminationError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Failures discovered while computing. The CLI maps these to exit code 2.
class ComputationError : public Error {
 public:
  using Error::Error;
};

class SolverError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

class PoleOnContourError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

// f vanishes on the whole contour; the winding number is undefined.
class NoReflectionError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

// A polynomial root sits too close to the unit circle to be counted.
class IndeterminateError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

}  // namespace fibwalk
