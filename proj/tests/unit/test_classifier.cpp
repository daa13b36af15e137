#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "padicdyn/classifier.hpp"

using namespace padicdyn;
using testing::q;
using testing::radius;

namespace {

CanonicalMap make(Rational a, Rational b, Rational d, unsigned long p) { return CanonicalMap(a, b, d, Prime(p)); }

FixedPointKind oracle_kind(const Rational& deriv, unsigned long p) {
  auto v = oracle::valuation(deriv, p);
  if (!v || *v > 0) return FixedPointKind::Attractor;
  return *v == 0 ? FixedPointKind::Indifferent : FixedPointKind::Repeller;
}

}  // namespace

TEST_CASE("classification examples") {
  ClassificationReport c1 = classify(make(q(3), q(1), q(0), 3));
  CHECK(c1.norm_case.id == CaseId::C1);
  CHECK(c1.x2 == 3);
  CHECK(c1.x1_character.kind == FixedPointKind::Indifferent);
  CHECK(c1.x2_character.kind == FixedPointKind::Indifferent);
  CHECK(c1.siegel_x1_radius == radius(0));
  CHECK(c1.x2_geometry.kind == X2Geometry::Kind::SiegelEqualsX1);

  ClassificationReport c3 = classify(make(q(1, 3), q(1), q(0), 3));
  CHECK(c3.norm_case.id == CaseId::C3);
  CHECK(c3.x2 == q(1, 3));
  CHECK(c3.x2_character.kind == FixedPointKind::Attractor);
  CHECK(c3.x2_character.derivative_valuation == Valuation(2L));
  CHECK(c3.siegel_x1_radius == radius(-1));
  CHECK(c3.x2_geometry.kind == X2Geometry::Kind::BasinComplement);
  CHECK(c3.x2_geometry.radius == radius(-1));

  ClassificationReport c2 = classify(make(q(2), q(1), q(0), 5));
  CHECK(c2.norm_case.id == CaseId::C2);
  CHECK(c2.x2_character.kind == FixedPointKind::Repeller);
  CHECK(c2.x2_geometry.kind == X2Geometry::Kind::RepellingBall);
  CHECK(c2.x2_geometry.radius == radius(0));
}

TEST_CASE("boundary configurations are reported, not guessed") {
  CHECK_THROWS_KIND(classify(make(q(1), q(2), q(-3), 5)), UnhandledBoundary);
  CHECK_THROWS_KIND(classify(make(q(6), q(8), q(-6), 2)), UnhandledBoundary);
}

TEST_CASE("x2 character matches the exact multiplier") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<long> n(-60, 60), dd(1, 20);
  std::size_t classified = 0;
  for (unsigned long p : {2UL, 3UL, 5UL}) {
    for (int i = 0; i < 400; ++i) {
      Rational a = q(n(rng), dd(rng)), b = q(n(rng), dd(rng)), d = q(n(rng), dd(rng));
      if (a == 0 || b == 0 || a == d || b + (a - d) * a == 0) continue;
      CanonicalMap f = make(a, b, d, p);
      try {
        ClassificationReport rep = classify(f);
        CHECK(rep.x2_character.kind == oracle_kind(oracle::canonical_derivative(a, b, d, a - d), p));
        CHECK(rep.x1_character.kind == FixedPointKind::Indifferent);
        ++classified;
      } catch (const DomainError& e) {
        CHECK(e.kind() == ErrorKind::UnhandledBoundary);
      }
    }
  }
  CHECK(classified > 800);
}

TEST_CASE("Siegel disk of the double fixed point is norm-invariant") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<long> n(-60, 60), dd(1, 20), ex(0, 6);
  for (unsigned long p : {2UL, 3UL, 5UL}) {
    Prime pr(p);
    for (int i = 0; i < 200; ++i) {
      Rational a = q(n(rng), dd(rng)), b = q(n(rng), dd(rng)), d = q(n(rng), dd(rng));
      if (a == 0 || b == 0 || a == d || b + (a - d) * a == 0) continue;
      CanonicalMap f = make(a, b, d, p);
      NormCase nc = detect_case(f);
      LogRadius R = siegel_radius(nc);
      long pl = static_cast<long>(p);
      Rational x = q(1 + 2 * pl * n(rng), pl * dd(rng) + 1);
      // Scale x strictly inside U_R(0).
      Rational e = R.exponent();
      mpz_class fl;
      mpz_fdiv_q(fl.get_mpz_t(), e.get_num_mpz_t(), e.get_den_mpz_t());
      long top = fl.get_si();
      if (LogRadius::power(Rational(top)) == R) --top;
      x *= pow_rational(pr, -(top - ex(rng)));
      REQUIRE(norm(x, pr) < R);
      Rational y = x;
      for (int k = 0; k < 5; ++k) {
        y = eval(f, y);
        CHECK(norm(y, pr) == norm(x, pr));
      }
    }
  }
}

TEST_CASE("pre-pole radii") {
  CanonicalMap f = make(q(1, 3), q(1), q(0), 3);
  CHECK(pk_radius(f, 0) == radius(0));
  CHECK(pk_radius(f, 1) == radius(-1, 2));
  CHECK(pk_radius(f, 2) == radius(-3, 4));
  auto e = oracle::pre_pole_exponents(Rational(0), Rational(1), 12);
  for (unsigned k = 0; k <= 12; ++k) CHECK(pk_radius(f, k) == LogRadius::power(e[k]));
  CHECK_THROWS_KIND(pk_radius(make(q(3), q(1), q(0), 3), 1), WrongCase);
  // A second C3 map with alpha = 3^(-1), |a| = 9.
  CanonicalMap g = make(q(1, 9), q(1, 9), q(0), 3);
  NormCase nc = detect_case(g);
  REQUIRE(nc.id == CaseId::C3);
  auto eg = oracle::pre_pole_exponents(nc.alpha.exponent(), nc.a_norm.exponent(), 8);
  for (unsigned k = 0; k <= 8; ++k) CHECK(pk_radius(g, k) == LogRadius::power(eg[k]));
}

TEST_CASE("minimal ball radius examples") {
  CanonicalMap f = make(q(3), q(1), q(0), 3);
  CHECK(rho_r(f, radius(-2)) == radius(-5));
  CHECK(rho_r(make(q(4), q(8), q(-6), 2), radius(-3)) == radius(-4));
  CHECK_THROWS_KIND(rho_r(f, radius(-1)), ExceptionalRadius);
  CHECK_THROWS_KIND(rho_r(f, radius(0)), NotInvariant);
  MinimalBallRecord rec = minimal_invariant_ball(f, q(9), 4);
  CHECK(rec.rho == radius(-5));
  CHECK(rec.displacements_constant);
  REQUIRE(rec.displacements.size() == 4);
  for (const auto& r : rec.displacements) CHECK(r == radius(-5));
  CHECK_THROWS_KIND(minimal_invariant_ball(f, q(0), 4), NotInvariant);
}

TEST_CASE("minimal ball radius equals the exact displacement on random maps") {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<long> n(-12, 12), ex(-3, 4);
  std::set<std::string> rows;
  std::size_t checked = 0;
  for (unsigned long p : {2UL, 3UL, 5UL}) {
    Prime pr(p);
    long pl = static_cast<long>(p);
    auto unit = [&] {
      long u;
      do u = n(rng);
      while (u == 0 || u % pl == 0);
      return Rational(u);
    };
    for (int i = 0; i < 300; ++i) {
      Rational x1 = unit() * pow_rational(pr, ex(rng)), x2 = unit() * pow_rational(pr, ex(rng));
      Rational a = unit() * pow_rational(pr, ex(rng));
      Rational b = x1 * x2, d = -(x1 + x2);
      if (a == d || b + (a - d) * a == 0) continue;
      CanonicalMap f = make(a, b, d, p);
      InvariantRadiusSet inv = invariant_radii(detect_case(f));
      for (long e = -8; e <= 4; ++e) {
        LogRadius r = radius(e);
        if (!inv.contains(r) || r == norm(f.x2(), pr)) continue;
        LogRadius rho = rho_r(f, r);
        rows.insert(rho_r_row(f, r).substr(0, rho_r_row(f, r).find(':')));
        for (int j = 0; j < 5; ++j) {
          Rational c = unit() * q(1, 7 * pl + 1) * pow_rational(pr, -e);
          CHECK_MESSAGE(LogRadius::of(displacement_norm(f, c)) == rho, f.to_string(), " c=", format_rational(c));
          ++checked;
        }
      }
    }
  }
  CHECK(checked > 2000);
  CHECK(rows.size() == 8);
}

TEST_CASE("periodic orbits") {
  CanonicalMap f = make(q(3), q(1), q(0), 3);
  auto fp0 = find_periodic(f, q(0), 5);
  REQUIRE(fp0.has_value());
  CHECK(fp0->period == 1);
  auto fp2 = find_periodic(f, q(3), 5);
  REQUIRE(fp2.has_value());
  CHECK(fp2->period == 1);
  CHECK_FALSE(find_periodic(f, q(9), 6).has_value());

  // 1 <-> -1 over Q_2 on the invariant unit sphere.
  CanonicalMap g = make(q(1), q(-1, 2), q(-1), 2);
  CHECK(eval(g, q(1)) == -1);
  CHECK(eval(g, q(-1)) == 1);
  auto cyc = find_periodic(g, q(1), 6);
  REQUIRE(cyc.has_value());
  CHECK(cyc->period == 2);
  CHECK(cyc->indifferent);
  CHECK(rho_r(g, radius(0)) == radius(-1));
}
