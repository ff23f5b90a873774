#pragma once

#include <stdexcept>
#include <string>

namespace sigenum {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input value violates a documented precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

class NonFiniteInput : public DomainError {
 public:
  using DomainError::DomainError;
};

class NegativeEigenvalue : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Requested field (beta) is not supported by the operation, e.g. quaternion snapshots.
class UnsupportedField : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An iterative eigensolver exhausted its iteration budget.
class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace sigenum
