#pragma once

#include <stdexcept>
#include <string>

namespace ergopt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad file contents, symbols out of range, inadmissible words.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Errors raised by a solver once its inputs were accepted.
class SolverError : public Error {
 public:
  using Error::Error;
};

class NotPrimitive : public SolverError {
 public:
  using SolverError::SolverError;
};

class EmptyGraph : public SolverError {
 public:
  using SolverError::SolverError;
};

class NonPositiveRoof : public SolverError {
 public:
  using SolverError::SolverError;
};

class BudgetExceeded : public SolverError {
 public:
  using SolverError::SolverError;
};

class WindowTooShort : public SolverError {
 public:
  using SolverError::SolverError;
};

class SingularInput : public SolverError {
 public:
  using SolverError::SolverError;
};

class QuadratureNotConverged : public SolverError {
 public:
  using SolverError::SolverError;
};

class EmptyFamily : public SolverError {
 public:
  using SolverError::SolverError;
};

}  // namespace ergopt
