#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace padicdyn {

/// Exact rational, always kept in lowest terms with a positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "n", "n/d" or "-n/d". Throws DomainError(ParseError).
Rational parse_rational(std::string_view text);

/// "n" for integers, "n/d" otherwise. Re-parses to an equal value.
std::string format_rational(const Rational& q);

/// A rational prime, verified at construction.
class Prime {
 public:
  explicit Prime(unsigned long p);

  unsigned long value() const noexcept { return p_; }
  operator unsigned long() const noexcept { return p_; }

  friend bool operator==(const Prime&, const Prime&) = default;

 private:
  unsigned long p_;
};

/// p^k for k >= 0.
Integer pow_integer(const Prime& p, unsigned long k);

/// p^k as a rational, k of any sign.
Rational pow_rational(const Prime& p, long k);

}  // namespace padicdyn
