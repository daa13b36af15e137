#pragma once

#include <compare>
#include <string>
#include <string_view>

#include "padicdyn/rational.hpp"

namespace padicdyn {

/// A p-adic valuation: a rational number, or +infinity for the valuation of 0.
/// The prime is implied by context.
class Valuation {
 public:
  Valuation() = default;
  Valuation(Rational v) : value_(std::move(v)) {}  // NOLINT: implicit on purpose
  Valuation(long v) : value_(v) {}                 // NOLINT

  static Valuation infinity() {
    Valuation v;
    v.infinite_ = true;
    return v;
  }

  bool is_infinite() const noexcept { return infinite_; }
  bool is_finite() const noexcept { return !infinite_; }
  /// Precondition: finite.
  const Rational& value() const;

  friend Valuation operator+(const Valuation& x, const Valuation& y);
  friend bool operator==(const Valuation& x, const Valuation& y);
  friend std::strong_ordering operator<=>(const Valuation& x, const Valuation& y);

  /// "inf" or the rational value.
  std::string to_string() const;

 private:
  Rational value_{0};
  bool infinite_ = false;
};

/// A nonnegative real radius p^e with e rational, stored as the valuation
/// v = -e so that the norm of x is LogRadius::of(valuation(x)). The zero
/// radius has v = +infinity. Ordered by radius, not by exponent.
class LogRadius {
 public:
  LogRadius() = default;  // radius 1

  static LogRadius zero() { return LogRadius(Valuation::infinity()); }
  static LogRadius one() { return LogRadius(); }
  /// The radius p^exponent.
  static LogRadius power(Rational exponent) {
    return LogRadius(Valuation(Rational(-exponent)));
  }
  /// The norm p^(-v) attached to a valuation.
  static LogRadius of(const Valuation& v) { return LogRadius(v); }

  bool is_zero() const noexcept { return v_.is_infinite(); }
  const Valuation& valuation() const noexcept { return v_; }
  /// Exponent e with radius p^e. Precondition: nonzero.
  Rational exponent() const { return -v_.value(); }

  friend LogRadius operator*(const LogRadius& x, const LogRadius& y) {
    return LogRadius(x.v_ + y.v_);
  }
  /// Precondition: y nonzero.
  friend LogRadius operator/(const LogRadius& x, const LogRadius& y);
  /// radius^q for rational q > 0.
  LogRadius pow(const Rational& q) const;

  friend bool operator==(const LogRadius& x, const LogRadius& y) { return x.v_ == y.v_; }
  friend std::strong_ordering operator<=>(const LogRadius& x, const LogRadius& y) {
    return y.v_ <=> x.v_;
  }

  /// True when the radius is p^k with k an integer.
  bool is_integral_power() const;

  /// "p^(e)" or "0".
  std::string to_string(unsigned long p) const;

 private:
  explicit LogRadius(Valuation v) : v_(std::move(v)) {}
  Valuation v_{0};
};

/// Accepts "0", "p^(e)", "p^e" (e a rational, sign optional) or a plain
/// rational equal to an integral power of p. Throws DomainError(ParseError).
LogRadius parse_radius(std::string_view text, unsigned long p);

}  // namespace padicdyn
