#pragma once

#include <stdexcept>
#include <string>

namespace oscphase {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Evaluation point hits a pole of the Gamma function.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Result magnitude not representable in double precision.
class OverflowError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Amplitude class A^tau_delta incompatible with the phase power (delta >= p-1).
class ClassError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Requested derivative order exceeds what an oracle supplies.
class OrderError : public DomainError {
 public:
  using DomainError::DomainError;
};

class UnknownAmplitude : public DomainError {
 public:
  using DomainError::DomainError;
};

// Quadrature exceeded its node budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// A limiting process (extrapolation, adaptive refinement) did not settle.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Too few remainder samples above the noise floor to fit an exponent.
class NoiseFloorError : public Error {
 public:
  using Error::Error;
};

}  // namespace oscphase
