#include "padicdyn/errors.hpp"

namespace padicdyn {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::ZeroB: return "ZeroB";
    case ErrorKind::OddValuation: return "OddValuation";
    case ErrorKind::NonSquareUnit: return "NonSquareUnit";
    case ErrorKind::NonUnit: return "NonUnit";
    case ErrorKind::InvalidMap: return "InvalidMap";
    case ErrorKind::TripleRoot: return "TripleRoot";
    case ErrorKind::ThreeDistinctRoots: return "ThreeDistinctRoots";
    case ErrorKind::IrrationalFixedPoints: return "IrrationalFixedPoints";
    case ErrorKind::PoleCoincidesWithFixedPoint: return "PoleCoincidesWithFixedPoint";
    case ErrorKind::DegenerateCanonical: return "DegenerateCanonical";
    case ErrorKind::PoleHit: return "PoleHit";
    case ErrorKind::WrongCase: return "WrongCase";
    case ErrorKind::UnhandledBoundary: return "UnhandledBoundary";
    case ErrorKind::ExceptionalRadius: return "ExceptionalRadius";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::BallExceedsSphere: return "BallExceedsSphere";
    case ErrorKind::NotSelfMap: return "NotSelfMap";
    case ErrorKind::NormBoundViolated: return "NormBoundViolated";
    case ErrorKind::WrongPrime: return "WrongPrime";
  }
  return "Unknown";
}

DomainError::DomainError(ErrorKind kind, const std::string& detail,
                         std::optional<std::size_t> step)
    : std::runtime_error(std::string(error_name(kind)) + ": " + detail),
      kind_(kind),
      step_(step) {}

}  // namespace padicdyn
