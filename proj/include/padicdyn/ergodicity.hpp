#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "padicdyn/classifier.hpp"

namespace padicdyn {

/// Normalized Haar measure on the sphere S_r(0).
struct SphereMeasureContext {
  Prime p;
  LogRadius r;
};

/// mu(V_rho(c)) = p rho / ((p - 1) r). Throws BallExceedsSphere above 1 and
/// InvalidArgument unless rho / r is an integral power of p.
Rational haar_measure(const SphereMeasureContext& ctx, const LogRadius& rho);

/// An invariant ball of measure strictly between 0 and 1 on S_r(0), p odd.
struct NonErgodicWitness {
  Rational center;
  LogRadius r;
  LogRadius rho;
  Rational measure;
  Rational bound;  // 1/(p-1)
  std::string row;
};

/// Throws WrongPrime for p = 2, plus the rho_r errors. Throws
/// BallExceedsSphere when the minimal ball would have measure above 1: this
/// happens for alpha < r < |a-d| = beta, where rho_r = r. Maps in that band
/// can be ergodic, e.g. (-11,-1620,-319) over Q_3 on S_{1/3}(0).
NonErgodicWitness not_ergodic_p_odd(const CanonicalMap& f, const LogRadius& r);

struct Mod4Signature {
  int A1, A2, B1, B2;
  friend bool operator==(const Mod4Signature&, const Mod4Signature&) = default;
};

struct Mod4Result {
  bool ergodic;
  Mod4Signature signature;
  int condition;  // 1..4, 0 when none holds
  bool swapped;   // condition met with numerator and denominator interchanged
};

/// Ergodicity of R = num/den on 1 + 2Z_2 from coefficient sums mod 4.
/// Coefficients are low degree first and must be 2-adic integers.
/// Throws NotSelfMap when either polynomial takes an even value on an odd t.
Mod4Result mod4_criterion(const std::vector<Rational>& numerator,
                          const std::vector<Rational>& denominator);

/// x = p^(-l) t turns f on S_{p^l}(0) into
/// (A t^2 + t) / (C t^2 + D t + 1) on the unit sphere.
struct UnitSphereConjugate {
  Prime p;
  long l;
  Rational A, C, D;  // p^-l a / b, p^-2l / b, p^-l d / b
  /// Both polynomials scaled by p^-scale to have integral coefficients with a
  /// unit among them; low degree first.
  long scale;
  std::vector<Rational> numerator;
  std::vector<Rational> denominator;
};

/// Throws NormBoundViolated when the conjugate does not map units to units
/// (r outside I) or, for r in I1, when the coefficient bounds p^-2, p^-2, p^-1
/// fail. Throws InvalidArgument unless r is an integral power of p.
UnitSphereConjugate conjugate_to_unit_sphere(const CanonicalMap& f, const LogRadius& r);

struct ErgodicityVerdict {
  bool ergodic;
  int condition;  // 1..3 when ergodic, else 0
  std::string reason;
  Mod4Result mod4;
  bool mod4_agrees;
  /// Whether d^2 - 4b is a square in Q_2; the criterion assumes it.
  bool sqrt_assumption_holds;
};

/// The three-condition verdict for p = 2, with the mod-4 criterion on the
/// unit-sphere conjugate alongside. The two differ for condition (2) when
/// alpha < beta; `mod4_agrees` flags it.
/// p = 2 only (WrongPrime otherwise); r must be in I (NotInvariant otherwise).
ErgodicityVerdict erg2_verdict(const CanonicalMap& f, const LogRadius& r);

struct EquidistributionReport {
  unsigned depth;
  std::size_t steps;
  std::map<Integer, std::size_t> counts;  // every unit residue mod p^depth
  std::vector<Integer> unvisited;
  double max_relative_deviation;
  bool within(double tolerance) const { return max_relative_deviation <= tolerance; }
};

/// Iterates of the unit-sphere conjugate modulo p^precision.
std::vector<TruncatedPadicInt> simulate_conjugate(const UnitSphereConjugate& g,
                                                  const TruncatedPadicInt& t0, std::size_t steps);

/// Bins the orbit of a start point (given on S_r(0), or drawn from the seed)
/// by unit residue mod p^depth.
EquidistributionReport empirical_equidistribution(const CanonicalMap& f, const LogRadius& r,
                                                  unsigned depth, std::size_t steps,
                                                  unsigned precision, std::uint64_t seed,
                                                  std::optional<Rational> start = std::nullopt);

}  // namespace padicdyn
