#pragma once

#include <stdexcept>
#include <string>

namespace normforge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative decomposition failed or produced non-finite output.
class DecompositionError : public Error {
 public:
  using Error::Error;
};

/// Incompatible shapes (ragged block grid, congruence mismatch, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A matrix does not belong to the class an operation requires.
class ClassError : public Error {
 public:
  using Error::Error;
};

/// An instance fails the hypotheses of the statement it is checked against.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A registry function's declared flags disagree with the measured ones.
class RegistryIntegrityError : public Error {
 public:
  using Error::Error;
};

/// Unknown statement id, malformed function id, bad JSON document.
class LookupError : public Error {
 public:
  using Error::Error;
};

}  // namespace normforge
