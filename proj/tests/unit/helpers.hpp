#pragma once

#include <doctest.h>

#include <optional>

#include "padicdyn/errors.hpp"
#include "padicdyn/rational.hpp"
#include "padicdyn/valuation.hpp"

namespace testing {

inline padicdyn::Rational q(long n, long d = 1) {
  padicdyn::Rational r(n, d);
  r.canonicalize();
  return r;
}

inline padicdyn::LogRadius radius(long n, long d = 1) { return padicdyn::LogRadius::power(q(n, d)); }

// The error kind thrown by fn, if any.
template <class Fn>
std::optional<padicdyn::ErrorKind> thrown_kind(Fn&& fn) {
  try {
    fn();
  } catch (const padicdyn::DomainError& e) {
    return e.kind();
  }
  return std::nullopt;
}

}  // namespace testing

#define CHECK_THROWS_KIND(expr, k) CHECK(testing::thrown_kind([&] { (void)(expr); }) == padicdyn::ErrorKind::k)
