#include "msr/error.hpp"

namespace msr {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotAPrimePower: return "NotAPrimePower";
    case ErrorKind::ReducibleModulus: return "ReducibleModulus";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NotAFrame: return "NotAFrame";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::IncompleteWitnessSet: return "IncompleteWitnessSet";
    case ErrorKind::NotDisjoint: return "NotDisjoint";
    case ErrorKind::AmbiguousFit: return "AmbiguousFit";
    case ErrorKind::InvalidIntersectionSize: return "InvalidIntersectionSize";
    case ErrorKind::InvalidAlpha: return "InvalidAlpha";
    case ErrorKind::UnverifiedInput: return "UnverifiedInput";
    case ErrorKind::NoDisjointTriple: return "NoDisjointTriple";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace msr
