#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace padicdyn {

/// Typed failure reasons. The CLI reports these by name.
enum class ErrorKind {
  InvalidArgument,
  ParseError,
  NotPrime,
  ZeroB,
  OddValuation,
  NonSquareUnit,
  NonUnit,
  InvalidMap,
  TripleRoot,
  ThreeDistinctRoots,
  IrrationalFixedPoints,
  PoleCoincidesWithFixedPoint,
  DegenerateCanonical,
  PoleHit,
  WrongCase,
  UnhandledBoundary,
  ExceptionalRadius,
  NotInvariant,
  BallExceedsSphere,
  NotSelfMap,
  NormBoundViolated,
  WrongPrime,
};

std::string_view error_name(ErrorKind kind);

class DomainError : public std::runtime_error {
 public:
  DomainError(ErrorKind kind, const std::string& detail,
              std::optional<std::size_t> step = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }
  /// Orbit step at which the failure occurred, when it belongs to an orbit.
  std::optional<std::size_t> step() const noexcept { return step_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> step_;
};

}  // namespace padicdyn
