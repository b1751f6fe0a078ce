#pragma once

#include <stdexcept>
#include <string>

namespace qdiv {

enum class ErrorKind {
  InvalidArgument,
  Parse,
  Io,
  NotCptp,           // fails trace preservation or complete positivity
  NoRealLog,         // spectrum violates the real-logarithm existence conditions
  Singular,          // a zero eigenvalue / singular value where an inverse is needed
  Defective,         // not diagonalizable within tolerance
  LorentzUnavailable,
  Truncation,        // Fock truncation too small for the requested state
};

const char* to_string(ErrorKind kind);

// Every failure raised by the library. `witness` carries the scalar that
// triggered the failure (a residual, an eigenvalue, a condition number).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, double witness = 0.0)
      : std::runtime_error(message), kind_(kind), witness_(witness) {}

  ErrorKind kind() const noexcept { return kind_; }
  double witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  double witness_;
};

}  // namespace qdiv
