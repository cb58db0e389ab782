#pragma once

#include <stdexcept>
#include <string>

namespace ambra {

enum class ErrorKind {
  ReduciblePolynomial,
  ZeroElement,
  NonSquare,
  DimensionMismatch,
  NotInvariant,
  Singular,
  NotSteady,
  InvalidDecomposition,
  SearchBudgetExceeded,
  Irreducible,
  NotMonomial,
  UnknownLetter,
  AlphabetMismatch,
  InvalidCertificate,
  NotInvertible,
  NotMinimal,
  OutOfScope,
  TargetUnreachable,
  ParseError,
  FieldMismatch,
  Internal,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace ambra
