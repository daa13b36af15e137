#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "padicdyn/rational_map.hpp"

namespace padicdyn {

/// The eight orderings of |a|, alpha, beta.
enum class CaseId { C1, C2, C3, C4, C5, C6, C7, C8 };

std::string_view case_name(CaseId id);

struct NormCase {
  CaseId id;
  LogRadius a_norm, alpha, beta;
};

NormCase detect_case(const CanonicalMap& f);

/// Radii where the norm of the image depends on the point, not only on its norm.
enum class Marker {
  C1_alpha_star,
  C1_a_star,
  C2_alpha_hat,
  C3_a_prime,
  C3_alpha_prime,
  C4_alpha_check,
  C4_beta_check,
  C4_a_check,
  C5_alpha_tilde,
  C5_beta_tilde,
  C6_alpha_breve,
  C6_a_breve,
  C6_beta_breve,
  C7_alpha_acute,
  C7_beta_acute,
  C8_a_grave,
  C8_alpha_grave,
  C8_beta_grave,
};

/// "C1:alpha_star" and so on.
std::string marker_name(Marker m);

/// The radius at which the marker arises.
LogRadius marker_radius(const NormCase& nc, Marker m);

/// Known one-sided limits on the value a marker can take.
struct MarkerBounds {
  std::optional<LogRadius> lower;
  std::optional<LogRadius> upper;

  bool admits(const LogRadius& r) const {
    return (!lower || r >= *lower) && (!upper || r <= *upper);
  }
};

MarkerBounds marker_bounds(const NormCase& nc, Marker m);

struct StepOutcome {
  std::optional<LogRadius> radius;  // set when determined
  std::optional<Marker> marker;     // set when data-dependent
  std::size_t step = 0;             // iteration index of the marker

  bool determined() const { return radius.has_value(); }
  static StepOutcome of(LogRadius r) { return {std::move(r), std::nullopt, 0}; }
  static StepOutcome blocked(Marker m, std::size_t step) { return {std::nullopt, m, step}; }
};

/// Norm of f(x) for |x| = r, or the marker when r is exceptional.
StepOutcome predict_step(const NormCase& nc, const LogRadius& r);

/// Norm of f^n(x), stopping at the first exceptional radius.
StepOutcome predict_n(const NormCase& nc, const LogRadius& r, std::size_t n);

/// Radii r, f(r), ... for up to n steps, ending early at a marker.
struct NormTrace {
  std::vector<LogRadius> radii;  // starts with r
  std::optional<Marker> marker;  // blocking marker, if any
};

NormTrace predict_trace(const NormCase& nc, const LogRadius& r, std::size_t n);

struct LimitBehavior {
  enum class Kind { FixedAt, ConvergesTo, ReachesAfter, Blocked };
  Kind kind;
  LogRadius radius;              // limit radius (unset meaning for Blocked)
  std::size_t steps = 0;         // steps until the limit or the marker
  std::optional<Marker> marker;  // marker met on the way
};

std::string_view limit_kind_name(LimitBehavior::Kind k);

LimitBehavior limit_behavior(const NormCase& nc, const LogRadius& r);

/// Whether r lies in the set of radii that reach alpha beta / |a| (only for C6).
/// Throws WrongCase otherwise.
bool in_B(const NormCase& nc, const LogRadius& r);

/// The radii r with S_r(0) invariant: (0, alpha) when |a| < beta,
/// (0, alpha) u (alpha, beta) when |a| = beta, (0, alpha beta / |a|) when |a| > beta.
struct InvariantRadiusSet {
  enum class Kind { I1, I2, I3 };
  Kind kind;
  LogRadius alpha, beta, a_norm;

  bool contains(const LogRadius& r) const;
  /// Supremum of the set.
  LogRadius upper() const;
  std::string_view name() const;
};

InvariantRadiusSet invariant_radii(const NormCase& nc);
bool invariant_radii_contains(const CanonicalMap& f, const LogRadius& r);

struct Lf2Step {
  std::size_t k;                     // f^k
  Rational value;                    // exact iterate
  LogRadius observed;                // its norm
  std::optional<LogRadius> predicted;
  std::optional<Marker> marker;      // when the step was data-dependent
  bool ok;                           // prediction matched, or marker within bounds
};

struct Lf2Report {
  LogRadius start;
  std::vector<Lf2Step> steps;
  bool all_ok() const;
  std::size_t determined_count() const;
};

/// Iterates x exactly for n steps and checks each norm against the prediction.
/// Data-dependent steps are resolved with the observed norm and checked against
/// the marker's bounds. Throws PoleHit carrying the step index.
Lf2Report verify_lf2(const CanonicalMap& f, const Rational& x, std::size_t n);

}  // namespace padicdyn
