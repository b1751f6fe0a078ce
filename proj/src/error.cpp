#include "qdiv/error.hpp"

namespace qdiv {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Io: return "I/O error";
    case ErrorKind::NotCptp: return "not CPTP";
    case ErrorKind::NoRealLog: return "no real logarithm";
    case ErrorKind::Singular: return "singular";
    case ErrorKind::Defective: return "defective matrix";
    case ErrorKind::LorentzUnavailable: return "Lorentz normal form unavailable";
    case ErrorKind::Truncation: return "Fock truncation inadequate";
  }
  return "unknown";
}

}  // namespace qdiv
