#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "padicdyn/padic.hpp"

namespace padicdyn {

/// f(x) = (a x^2 + b x + c) / (x^2 + d x + e) over Q_p.
struct GeneralMap {
  Rational a, b, c, d, e;
  Prime p;

  /// Throws InvalidMap unless a != 0 and (b - a d, c - a e) != (0, 0).
  GeneralMap(Rational a, Rational b, Rational c, Rational d, Rational e, Prime p);

  /// Throws PoleHit when the denominator vanishes.
  Rational eval(const Rational& x) const;
};

/// f(x) = (a x^2 + b x) / (x^2 + d x + b): double fixed point 0, simple fixed
/// point a - d.
class CanonicalMap {
 public:
  /// Throws InvalidMap unless a b != 0 and a != d.
  CanonicalMap(Rational a, Rational b, Rational d, Prime p);

  const Rational& a() const noexcept { return a_; }
  const Rational& b() const noexcept { return b_; }
  const Rational& d() const noexcept { return d_; }
  const Prime& p() const noexcept { return p_; }
  /// Smaller and larger pole norm.
  const LogRadius& alpha() const noexcept { return alpha_; }
  const LogRadius& beta() const noexcept { return beta_; }
  LogRadius a_norm() const { return norm(a_, p_); }
  /// The second fixed point a - d.
  Rational x2() const { return a_ - d_; }

  std::string to_string() const;

 private:
  Rational a_, b_, d_;
  Prime p_;
  LogRadius alpha_, beta_;
};

struct ConjugacyRecord {
  Rational shift;  // double fixed point of the general map
  CanonicalMap canonical;
};

struct PoleData {
  LogRadius alpha, beta;
  /// Present when d^2 - 4b is a square in Q.
  std::optional<std::pair<Rational, Rational>> exact_poles;
};

PoleData poles(const CanonicalMap& f);

/// Conjugates a map with a double fixed point to canonical form by x = t + shift.
ConjugacyRecord canonicalize(const GeneralMap& g);

/// Throws PoleHit at a pole.
Rational eval(const CanonicalMap& f, const Rational& x);
/// f'(x), exactly. Throws PoleHit.
Rational derivative(const CanonicalMap& f, const Rational& x);
/// val_p f'(x). Throws PoleHit.
Valuation derivative_norm(const CanonicalMap& f, const Rational& x);
/// val_p (f(c) - c). Throws PoleHit.
Valuation displacement_norm(const CanonicalMap& f, const Rational& c);
/// f'(x2) = (b + (a-d) d) / (b + (a-d) a). Throws PoleCoincidesWithFixedPoint
/// if x2 is a pole.
Rational fixed_point_multiplier(const CanonicalMap& f);

struct PreimageRoot {
  enum class Kind { Rational, Padic, NotInField };
  Kind kind;
  LogRadius norm;
  std::optional<Rational> exact;
  std::optional<PadicNumber> lifted;
};

/// Solutions of f(x) = y. Roots outside Q_p are listed as NotInField with
/// their norm in C_p.
std::vector<PreimageRoot> solve_preimage(const CanonicalMap& f, const Rational& y,
                                         unsigned precision = kDefaultPrecision);

}  // namespace padicdyn
