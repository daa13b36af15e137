#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "padicdyn/norm_dynamics.hpp"

namespace padicdyn {

enum class FixedPointKind { Indifferent, Attractor, Repeller };

std::string_view kind_name(FixedPointKind k);

struct FixedPointCharacter {
  std::string which;  // "x1" or "x2"
  Rational point;
  FixedPointKind kind;
  Valuation derivative_valuation;
};

/// Where x2 sits relative to the Siegel disk of 0.
struct X2Geometry {
  enum class Kind {
    SiegelEqualsX1,      // SI(x2) = SI(x1)
    SiegelDisjointBall,  // SI(x2) = U_R(x2), disjoint from SI(x1)
    BasinBall,           // attractor with basin U_R(x2)
    BasinComplement,     // attractor with basin C_p minus V_R(0) and pre-poles
    RepellingBall,       // |f(x) - x2| > |x - x2| on U_R(x2)
  };
  Kind kind;
  LogRadius radius;   // R; the x1 Siegel radius for SiegelEqualsX1
  std::string form;   // R in terms of alpha, beta, |a|, ...
};

std::string_view geometry_name(X2Geometry::Kind k);

struct ClassificationReport {
  NormCase norm_case;
  Rational x2;
  FixedPointCharacter x1_character;
  FixedPointCharacter x2_character;
  LogRadius siegel_x1_radius;
  std::string siegel_x1_form;
  X2Geometry x2_geometry;
  std::string branch;  // the deciding condition, in words
};

/// Throws UnhandledBoundary where no branch applies and
/// PoleCoincidesWithFixedPoint when x2 is a pole.
ClassificationReport classify(const CanonicalMap& f);

/// Radius of the open ball around 0 forming SI(x1).
LogRadius siegel_radius(const NormCase& nc);

/// Norm of the k-th pre-images of the poles in the C3 case:
/// alpha (alpha / |a|)^((2^k - 1) / 2^k). Throws WrongCase.
LogRadius pk_radius(const CanonicalMap& f, unsigned k);

/// |f(c) - c| for c on S_r(0), r invariant and r != |a - d|.
/// Throws ExceptionalRadius or NotInvariant.
LogRadius rho_r(const CanonicalMap& f, const LogRadius& r);

/// The formula row used by rho_r, for reports.
std::string rho_r_row(const CanonicalMap& f, const LogRadius& r);

struct MinimalBallRecord {
  Rational center;
  LogRadius r;
  LogRadius rho;
  std::vector<LogRadius> displacements;  // |f^{n+1}(c) - f^n(c)|, n = 0..depth-1
  bool displacements_constant;
};

/// Smallest invariant ball around c, with the displacement check along the orbit.
MinimalBallRecord minimal_invariant_ball(const CanonicalMap& f, const Rational& c,
                                         std::size_t check_depth = 4);

struct PeriodicOrbit {
  std::size_t period;
  std::vector<Rational> points;
  /// val_p of (f^k)' at each orbit point.
  std::vector<Valuation> multiplier_valuations;
  bool indifferent;
};

/// Smallest k <= kmax with f^k(x) = x. Throws PoleHit with the step index.
std::optional<PeriodicOrbit> find_periodic(const CanonicalMap& f, const Rational& x,
                                           std::size_t kmax);

}  // namespace padicdyn
