#pragma once

#include <optional>
#include <string>
#include <utility>

#include "padicdyn/rational.hpp"
#include "padicdyn/valuation.hpp"

namespace padicdyn {

inline constexpr unsigned kDefaultPrecision = 64;

/// val_p(x); infinity iff x == 0.
Valuation valuation(const Rational& x, const Prime& p);
/// val_p(n) for a nonzero integer.
unsigned long integer_valuation(const Integer& n, const Prime& p);
/// |x|_p as a radius.
LogRadius norm(const Rational& x, const Prime& p);

/// Valuations of the two roots (in C_p) of c2 x^2 + c1 x + c0, c2 != 0, read
/// off the Newton polygon. Sorted with the larger valuation (smaller norm)
/// first. Zero roots have infinite valuation.
std::pair<Valuation, Valuation> quadratic_root_valuations(const Rational& c2, const Rational& c1,
                                                          const Rational& c0, const Prime& p);

/// Norms of the roots of x^2 + d x + b.
struct RootNorms {
  LogRadius alpha;  // smaller norm
  LogRadius beta;   // larger norm
};

/// Pole norms (alpha <= beta) of x^2 + d x + b without extension arithmetic.
/// Throws ZeroB when b == 0.
RootNorms quad_root_norms(const Rational& d, const Rational& b, const Prime& p);

/// Residue class mod p^N. Exact ring arithmetic in Z/p^N Z.
class TruncatedPadicInt {
 public:
  TruncatedPadicInt(Integer residue, const Prime& p, unsigned precision = kDefaultPrecision);

  /// Image of a p-integral rational. Throws InvalidArgument if val_p(x) < 0.
  static TruncatedPadicInt from_rational(const Rational& x, const Prime& p,
                                         unsigned precision = kDefaultPrecision);

  const Integer& residue() const noexcept { return residue_; }
  unsigned precision() const noexcept { return precision_; }
  const Prime& prime() const noexcept { return p_; }
  const Integer& modulus() const noexcept { return modulus_; }

  bool is_unit() const;
  /// Residue mod p^k, k <= precision.
  Integer residue_mod(unsigned k) const;

  TruncatedPadicInt operator+(const TruncatedPadicInt& o) const;
  TruncatedPadicInt operator-(const TruncatedPadicInt& o) const;
  TruncatedPadicInt operator*(const TruncatedPadicInt& o) const;
  TruncatedPadicInt operator-() const;

  friend bool operator==(const TruncatedPadicInt& x, const TruncatedPadicInt& y) {
    return x.p_ == y.p_ && x.precision_ == y.precision_ && x.residue_ == y.residue_;
  }

  std::string to_string() const;

 private:
  void check_compatible(const TruncatedPadicInt& o) const;

  Integer residue_;
  Prime p_;
  unsigned precision_;
  Integer modulus_;
};

/// Inverse of a unit mod p^N. Throws NonUnit when p divides the residue.
TruncatedPadicInt invert_unit(const TruncatedPadicInt& u);

/// x = p^(2 * half_valuation) * unit_root^2 (to precision N).
struct SquareRoot {
  long half_valuation;
  TruncatedPadicInt unit_root;
};

/// Square root in Q_p by Hensel lifting. Throws OddValuation or NonSquareUnit
/// when the root lies outside Q_p, InvalidArgument for x == 0.
SquareRoot hensel_sqrt(const Rational& x, const Prime& p, unsigned precision = kDefaultPrecision);

/// Whether nonzero x is a square in Q_p.
bool is_square_in_qp(const Rational& x, const Prime& p);

/// Exact square root in Q, if any.
std::optional<Rational> rational_sqrt(const Rational& x);

/// A nonzero element of Q_p known as p^valuation * unit, the unit to
/// `unit.precision()` digits.
class PadicNumber {
 public:
  PadicNumber(long valuation, TruncatedPadicInt unit);

  static PadicNumber from_rational(const Rational& x, const Prime& p,
                                   unsigned precision = kDefaultPrecision);

  long valuation() const noexcept { return valuation_; }
  const TruncatedPadicInt& unit() const noexcept { return unit_; }
  const Prime& prime() const noexcept { return unit_.prime(); }
  LogRadius norm() const { return LogRadius::of(Valuation(valuation_)); }

  /// Sum; relative precision shrinks by any cancellation. Throws
  /// InvalidArgument if the sum vanishes to the available precision.
  PadicNumber operator+(const PadicNumber& o) const;
  PadicNumber operator-() const;
  PadicNumber operator*(const PadicNumber& o) const;
  PadicNumber inverse() const;
  PadicNumber operator*(const Rational& q) const;
  PadicNumber operator/(const Rational& q) const;

  /// The rational p^valuation * residue, within p^(valuation + precision).
  Rational approximation() const;

  std::string to_string() const;

 private:
  long valuation_;
  TruncatedPadicInt unit_;
};

}  // namespace padicdyn
