#pragma once

#include <stdexcept>
#include <string>

namespace locfrac {

  /// Base of every exception thrown by the library.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  /// A caller violated the precondition of an operation (non-composable
  /// pair, endpoint mismatch, membership requirement, ...).
  class DomainError : public Error {
   public:
    using Error::Error;
  };

  /// A relation handed to the quotient machinery relates non-parallel arrows.
  class CongruenceError : public Error {
   public:
    using Error::Error;
  };

  /// Input document could not be read; `what()` carries the location.
  class LoadError : public Error {
   public:
    using Error::Error;
  };

  /// The denominator data does not satisfy the axioms required by a
  /// construction; `what()` names the failed axiom.
  class AxiomError : public Error {
   public:
    using Error::Error;
  };

  /// Something the theory guarantees did not happen. Always a bug, either in
  /// this library or in a witness cache that was tampered with.
  class InvariantError : public Error {
   public:
    using Error::Error;
  };

}  // namespace locfrac
