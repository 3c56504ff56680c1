#pragma once

#include <stdexcept>
#include <string>

namespace speclab {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input / configuration problems.
class InvalidConfig : public Error {
 public:
  using Error::Error;
};
class NonPositiveRadius : public Error {
 public:
  using Error::Error;
};
class FNormViolation : public Error {
 public:
  using Error::Error;
};
class EmptyDictionary : public Error {
 public:
  using Error::Error;
};
class NotNormalized : public Error {
 public:
  using Error::Error;
};
class ClusterMismatch : public Error {
 public:
  using Error::Error;
};

// Numerical failures.
class SolverError : public Error {
 public:
  using Error::Error;
};
class DegenerateMesh : public SolverError {
 public:
  using SolverError::SolverError;
};
class SingularSystem : public SolverError {
 public:
  using SolverError::SolverError;
};
class EigenNoConvergence : public SolverError {
 public:
  using SolverError::SolverError;
};
class NoConvergence : public SolverError {
 public:
  using SolverError::SolverError;
};
class DegenerateGradient : public SolverError {
 public:
  using SolverError::SolverError;
};
class LineSearchFailure : public SolverError {
 public:
  using SolverError::SolverError;
};

}  // namespace speclab
