#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "padicdyn/rational_map.hpp"

using namespace padicdyn;
using testing::q;
using testing::radius;

namespace {

CanonicalMap make(Rational a, Rational b, Rational d, unsigned long p) { return CanonicalMap(a, b, d, Prime(p)); }

}  // namespace

TEST_CASE("map validation") {
  CHECK_THROWS_KIND(make(q(0), q(1), q(0), 3), InvalidMap);
  CHECK_THROWS_KIND(make(q(1), q(0), q(0), 3), InvalidMap);
  CHECK_THROWS_KIND(make(q(2), q(1), q(2), 3), InvalidMap);
  CHECK_THROWS_KIND(GeneralMap(q(0), q(1), q(0), q(0), q(1), Prime(3)), InvalidMap);
  // b - a d = 0 and c - a e = 0 make f constant.
  CHECK_THROWS_KIND(GeneralMap(q(2), q(4), q(6), q(2), q(3), Prime(3)), InvalidMap);
}

TEST_CASE("canonicalize examples") {
  auto r1 = canonicalize(GeneralMap(q(4), q(-7), q(4), q(-2), q(2), Prime(3)));
  CHECK(r1.shift == 1);
  CHECK(r1.canonical.a() == 3);
  CHECK(r1.canonical.b() == 1);
  CHECK(r1.canonical.d() == 0);
  auto r2 = canonicalize(GeneralMap(q(3), q(1), q(0), q(0), q(1), Prime(3)));
  CHECK(r2.shift == 0);
  CHECK(r2.canonical.a() == 3);
  CHECK_THROWS_KIND(canonicalize(GeneralMap(q(3), q(1), q(0), q(0), q(3), Prime(3))), ThreeDistinctRoots);
  // Fixed-point cubic x^3.
  CHECK_THROWS_KIND(canonicalize(GeneralMap(q(1), q(2), q(0), q(1), q(2), Prime(3))), TripleRoot);
}

TEST_CASE("canonicalize undoes a shift conjugation") {
  // g(x) = f(x - s) + s, expanded by hand, must come back as (s, f).
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long> n(-30, 30), dd(1, 9);
  int tested = 0;
  while (tested < 300) {
    Rational a = q(n(rng), dd(rng)), b = q(n(rng), dd(rng)), d = q(n(rng), dd(rng)), s = q(n(rng), dd(rng));
    if (a == 0 || a + s == 0 || b == 0 || a == d || b + (a - d) * a == 0 || b + (a - d) * d == 0) continue;
    // numerator a(x-s)^2 + b(x-s) + s((x-s)^2 + d(x-s) + b), denominator (x-s)^2 + d(x-s) + b
    Rational A = a + s;
    Rational B = -2 * a * s + b + s * (-2 * s + d);
    Rational C = a * s * s - b * s + s * (s * s - d * s + b);
    Rational D = -2 * s + d;
    Rational E = s * s - d * s + b;
    ConjugacyRecord rec = canonicalize(GeneralMap(A, B, C, D, E, Prime(5)));
    CHECK(rec.shift == s);
    CHECK(rec.canonical.a() == a);
    CHECK(rec.canonical.b() == b);
    CHECK(rec.canonical.d() == d);
    ++tested;
  }
}

TEST_CASE("eval examples") {
  CanonicalMap f = make(q(3), q(1), q(0), 3);
  CHECK(eval(f, q(0)) == 0);
  CHECK(eval(f, q(9)) == q(126, 41));
  for (long a : {1L, 2L, 5L}) CHECK_THROWS_KIND(eval(make(q(a), q(27), q(-12), 3), q(3)), PoleHit);
}

TEST_CASE("eval and derivative against the written-out formulas") {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<long> n(-50, 50), dd(1, 12);
  for (int i = 0; i < 500; ++i) {
    Rational a = q(n(rng), dd(rng)), b = q(n(rng), dd(rng)), d = q(n(rng), dd(rng)), x = q(n(rng), dd(rng));
    if (a == 0 || b == 0 || a == d || x * x + d * x + b == 0) continue;
    CanonicalMap f = make(a, b, d, 3);
    CHECK(eval(f, x) == oracle::canonical_eval(a, b, d, x));
    CHECK(derivative(f, x) == oracle::canonical_derivative(a, b, d, x));
  }
}

TEST_CASE("fixed points") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> n(-50, 50), dd(1, 12);
  for (int i = 0; i < 300; ++i) {
    Rational a = q(n(rng), dd(rng)), b = q(n(rng), dd(rng)), d = q(n(rng), dd(rng));
    if (a == 0 || b == 0 || a == d || b + (a - d) * a == 0) continue;
    CanonicalMap f = make(a, b, d, 5);
    CHECK(eval(f, q(0)) == 0);
    CHECK(derivative(f, q(0)) == 1);
    CHECK(eval(f, f.x2()) == f.x2());
    CHECK(fixed_point_multiplier(f) == oracle::canonical_derivative(a, b, d, f.x2()));
  }
  CHECK_THROWS_KIND(fixed_point_multiplier(make(q(2), q(-2), q(1), 3)), PoleCoincidesWithFixedPoint);
}

TEST_CASE("derivative norm examples") {
  CHECK(derivative_norm(make(q(3), q(1), q(0), 3), q(9)) == Valuation(0L));
  CHECK(derivative_norm(make(q(3), q(1), q(0), 3), q(3)) == Valuation(0L));
  CHECK(derivative_norm(make(q(1, 3), q(1), q(0), 3), q(1, 3)) == Valuation(2L));
}

TEST_CASE("displacement norm examples") {
  CanonicalMap f = make(q(3), q(1), q(0), 3);
  CHECK(eval(f, q(9)) - 9 == q(-243, 41));
  CHECK(displacement_norm(f, q(9)) == Valuation(5L));
  CHECK(displacement_norm(f, q(0)).is_infinite());
  CHECK(displacement_norm(make(q(4), q(8), q(-6), 2), q(8)) == Valuation(4L));
}

TEST_CASE("pole data") {
  PoleData pd = poles(make(q(4), q(8), q(-6), 2));
  CHECK(pd.alpha == radius(-2));
  CHECK(pd.beta == radius(-1));
  REQUIRE(pd.exact_poles.has_value());
  CHECK(((pd.exact_poles->first == 4 && pd.exact_poles->second == 2) ||
         (pd.exact_poles->first == 2 && pd.exact_poles->second == 4)));
  CHECK_FALSE(poles(make(q(3), q(1), q(0), 3)).exact_poles.has_value());
}

TEST_CASE("preimage examples") {
  CanonicalMap f = make(q(3), q(1), q(0), 3);
  bool found = false;
  for (const auto& r : solve_preimage(f, q(126, 41)))
    if (r.exact && *r.exact == 9) found = true;
  CHECK(found);
  auto zero = solve_preimage(f, q(0));
  REQUIRE(zero.size() == 2);
  std::set<Rational> vals;
  for (const auto& r : zero) {
    CHECK(r.kind == PreimageRoot::Kind::Rational);
    vals.insert(*r.exact);
  }
  CHECK(vals == std::set<Rational>{q(0), q(-1, 3)});
}

TEST_CASE("preimage outside Q_3") {
  // (1/3 - 2) x^2 + x - 2 = 0 has discriminant -37/3 of odd valuation; the
  // product of the roots is 6/5, so both have norm 3^(-1/2).
  auto roots = solve_preimage(make(q(1, 3), q(1), q(0), 3), q(2), 4);
  REQUIRE(roots.size() == 2);
  for (const auto& r : roots) {
    CHECK(r.kind == PreimageRoot::Kind::NotInField);
    CHECK(r.norm == radius(-1, 2));
  }
}

TEST_CASE("preimages evaluate back to the target") {
  std::mt19937_64 rng(24);
  std::uniform_int_distribution<long> n(-40, 40), dd(1, 9);
  int padic = 0;
  for (int i = 0; i < 400; ++i) {
    Rational a = q(n(rng), dd(rng)), b = q(n(rng), dd(rng)), d = q(n(rng), dd(rng)), y = q(n(rng), dd(rng));
    if (a == 0 || b == 0 || a == d) continue;
    CanonicalMap f = make(a, b, d, 5);
    for (const auto& r : solve_preimage(f, y, 30)) {
      if (r.kind == PreimageRoot::Kind::Rational) {
        CHECK(eval(f, *r.exact) == y);
        CHECK(r.norm == norm(*r.exact, f.p()));
      } else if (r.kind == PreimageRoot::Kind::Padic) {
        ++padic;
        // f(x) - y vanishes to high order at the lifted root.
        Rational x = r.lifted->approximation();
        CHECK(r.norm == r.lifted->norm());
        Rational num = (a - y) * x * x + (b - y * d) * x - y * b;
        CHECK((num == 0 || valuation(num, f.p()) >= Valuation(10L)));
      }
    }
  }
  CHECK(padic > 0);
}
