#include "padicdyn/ergodicity.hpp"

#include <cmath>
#include <random>

#include "padicdyn/errors.hpp"

namespace padicdyn {

namespace {

// k with r = p^k; r must be an integral power.
long integral_exponent(const LogRadius& r, const char* what) {
  if (!r.is_integral_power())
    throw DomainError(ErrorKind::InvalidArgument, std::string(what) + " is not an integral power of p");
  return r.exponent().get_num().get_si();
}

TruncatedPadicInt eval_poly(const std::vector<TruncatedPadicInt>& coeffs, const TruncatedPadicInt& t) {
  TruncatedPadicInt acc = coeffs.back();
  for (std::size_t i = coeffs.size() - 1; i-- > 0;) acc = acc * t + coeffs[i];
  return acc;
}

std::vector<TruncatedPadicInt> reduce(const std::vector<Rational>& coeffs, const Prime& p, unsigned n) {
  std::vector<TruncatedPadicInt> out;
  for (const auto& c : coeffs) out.push_back(TruncatedPadicInt::from_rational(c, p, n));
  return out;
}

// Unit residues mod p^k in increasing order.
std::vector<Integer> unit_residues(const Prime& p, unsigned k) {
  std::vector<Integer> out;
  Integer m = pow_integer(p, k);
  for (Integer t = 1; t < m; ++t)
    if (mpz_divisible_ui_p(t.get_mpz_t(), p.value()) == 0) out.push_back(t);
  return out;
}

// Whether the polynomial takes unit values on every unit (checked mod 8 for
// p = 2, mod p otherwise).
bool units_to_units(const std::vector<Rational>& coeffs, const Prime& p) {
  unsigned k = p.value() == 2 ? 3 : 1;
  auto red = reduce(coeffs, p, k);
  for (const auto& t : unit_residues(p, k))
    if (!eval_poly(red, TruncatedPadicInt(t, p, k)).is_unit()) return false;
  return true;
}

}  // namespace

Rational haar_measure(const SphereMeasureContext& ctx, const LogRadius& rho) {
  if (rho.is_zero()) return Rational(0);
  long k = integral_exponent(rho / ctx.r, "rho/r");
  unsigned long p = ctx.p.value();
  Rational mu = pow_rational(ctx.p, k + 1) / Rational(p - 1);
  if (mu > 1)
    throw DomainError(ErrorKind::BallExceedsSphere,
                      "measure " + format_rational(mu) + " exceeds 1 for rho=" + rho.to_string(p));
  return mu;
}

NonErgodicWitness not_ergodic_p_odd(const CanonicalMap& f, const LogRadius& r) {
  const Prime& p = f.p();
  if (p.value() == 2) throw DomainError(ErrorKind::WrongPrime, "needs an odd prime");
  LogRadius rho = rho_r(f, r);
  long e = integral_exponent(r, "r");
  Rational c = pow_rational(p, -e);
  Rational mu = haar_measure({p, r}, rho);
  return {c, r, rho, mu, Rational(1, p.value() - 1), rho_r_row(f, r)};
}

Mod4Result mod4_criterion(const std::vector<Rational>& numerator,
                          const std::vector<Rational>& denominator) {
  Prime two(2);
  for (const auto* poly : {&numerator, &denominator}) {
    if (poly->empty() || !units_to_units(*poly, two))
      throw DomainError(ErrorKind::NotSelfMap, "a polynomial takes even values on 1+2Z_2");
  }
  auto sums = [&](const std::vector<Rational>& c) {
    Integer odd = 0, even = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      Integer v = TruncatedPadicInt::from_rational(c[i], two, 2).residue();
      (i % 2 ? odd : even) += v;
    }
    return std::pair<int, int>{static_cast<int>(mpz_fdiv_ui(odd.get_mpz_t(), 4)),
                               static_cast<int>(mpz_fdiv_ui(even.get_mpz_t(), 4))};
  };
  auto [a1, a2] = sums(numerator);
  auto [b1, b2] = sums(denominator);
  Mod4Signature sig{a1, a2, b1, b2};

  auto match = [](int A1, int A2, int B1, int B2) -> int {
    if (A1 == 1 && A2 == 2 && B1 == 0 && B2 == 1) return 1;
    if (A1 == 3 && A2 == 2 && B1 == 0 && B2 == 3) return 2;
    if (A1 == 1 && A2 == 0 && B1 == 2 && B2 == 1) return 3;
    if (A1 == 3 && A2 == 0 && B1 == 2 && B2 == 3) return 4;
    return 0;
  };
  if (int c = match(a1, a2, b1, b2)) return {true, sig, c, false};
  if (int c = match(b1, b2, a1, a2)) return {true, sig, c, true};
  return {false, sig, 0, false};
}

UnitSphereConjugate conjugate_to_unit_sphere(const CanonicalMap& f, const LogRadius& r) {
  const Prime& p = f.p();
  long l = integral_exponent(r, "r");
  NormCase nc = detect_case(f);
  InvariantRadiusSet inv = invariant_radii(nc);
  if (!inv.contains(r))
    throw DomainError(ErrorKind::NormBoundViolated,
                      "r=" + r.to_string(p) + " is outside " + std::string(inv.name()));

  Rational s = pow_rational(p, -l);  // |s|_p = r
  Rational A = s * f.a() / f.b();
  Rational C = s * s / f.b();
  Rational D = s * f.d() / f.b();

  if (inv.kind == InvariantRadiusSet::Kind::I1 && nc.alpha.is_integral_power() &&
      nc.beta.is_integral_power()) {
    LogRadius p1 = LogRadius::power(Rational(-1));
    LogRadius p2 = LogRadius::power(Rational(-2));
    if (norm(A, p) > p2 || norm(C, p) > p2 || norm(D, p) > p1)
      throw DomainError(ErrorKind::NormBoundViolated, "conjugate coefficients exceed p^-2, p^-2, p^-1");
  }

  Valuation vmin(0L);
  for (const auto* c : {&A, &C, &D}) vmin = std::min(vmin, valuation(*c, p));
  long scale = vmin.value().get_num().get_si();
  Rational unscale = pow_rational(p, -scale);
  UnitSphereConjugate out{p, l, A, C, D, scale,
                          {Rational(0), Rational(unscale), Rational(A * unscale)},
                          {Rational(unscale), Rational(D * unscale), Rational(C * unscale)}};
  if (!units_to_units(out.numerator, p) || !units_to_units(out.denominator, p))
    throw DomainError(ErrorKind::NormBoundViolated, "conjugate does not map units to units");
  return out;
}

ErgodicityVerdict erg2_verdict(const CanonicalMap& f, const LogRadius& r) {
  const Prime& p = f.p();
  if (p.value() != 2) throw DomainError(ErrorKind::WrongPrime, "the criterion is for p = 2");
  NormCase nc = detect_case(f);
  if (!invariant_radii(nc).contains(r))
    throw DomainError(ErrorKind::NotInvariant, "S_r(0) is not invariant for r=" + r.to_string(2));
  const LogRadius &al = nc.alpha, &be = nc.beta, &an = nc.a_norm;
  LogRadius half = LogRadius::power(Rational(-1));
  LogRadius d_norm = norm(f.d(), p);

  int condition = 0;
  std::string reason;
  if (an < be) {
    if (d_norm == be && r == al * half) {
      condition = 1;
      reason = "|a| < beta, |d| = beta, r = alpha/2";
    } else {
      reason = "|a| < beta needs |d| = beta and r = alpha/2";
    }
  } else if (an == be) {
    if (r == be * half) {
      condition = 2;
      reason = "|a| = beta, r = beta/2";
    } else {
      reason = "|a| = beta needs r = beta/2";
    }
  } else {
    if (r == al * be * half / an) {
      condition = 3;
      reason = "|a| > beta, r = alpha*beta/(2|a|)";
    } else {
      reason = "|a| > beta needs r = alpha*beta/(2|a|)";
    }
  }

  UnitSphereConjugate g = conjugate_to_unit_sphere(f, r);
  Mod4Result m4 = mod4_criterion(g.numerator, g.denominator);
  Rational disc = f.d() * f.d() - 4 * f.b();
  bool sqrt_ok = disc == 0 || is_square_in_qp(disc, p);
  bool ergodic = condition != 0;
  // Condition (2) with alpha < beta is not sufficient: the conjugate can fix a
  // residue ball mod 8, e.g. (1,4,-5) on S_{1/2}. The mod-4 test decides it.
  if (m4.ergodic != ergodic) reason += "; the mod-4 criterion on the conjugate says otherwise";
  return {ergodic, condition, reason, m4, m4.ergodic == ergodic, sqrt_ok};
}

std::vector<TruncatedPadicInt> simulate_conjugate(const UnitSphereConjugate& g,
                                                  const TruncatedPadicInt& t0, std::size_t steps) {
  const Prime& p = g.p;
  unsigned n = t0.precision();
  auto num = reduce(g.numerator, p, n);
  auto den = reduce(g.denominator, p, n);
  std::vector<TruncatedPadicInt> orbit{t0};
  orbit.reserve(steps + 1);
  for (std::size_t i = 0; i < steps; ++i) {
    const auto& t = orbit.back();
    orbit.push_back(eval_poly(num, t) * invert_unit(eval_poly(den, t)));
  }
  return orbit;
}

EquidistributionReport empirical_equidistribution(const CanonicalMap& f, const LogRadius& r,
                                                  unsigned depth, std::size_t steps,
                                                  unsigned precision, std::uint64_t seed,
                                                  std::optional<Rational> start) {
  const Prime& p = f.p();
  if (depth == 0 || depth > precision)
    throw DomainError(ErrorKind::InvalidArgument, "need 0 < depth <= precision");
  if (steps == 0) throw DomainError(ErrorKind::InvalidArgument, "need at least one step");
  UnitSphereConjugate g = conjugate_to_unit_sphere(f, r);

  std::optional<TruncatedPadicInt> t0;
  if (start) {
    if (norm(*start, p) != r)
      throw DomainError(ErrorKind::InvalidArgument, "start point is not on S_r(0)");
    t0 = TruncatedPadicInt::from_rational(Rational(*start * pow_rational(p, g.l)), p, precision);
  } else {
    std::mt19937_64 rng(seed);
    Integer m = pow_integer(p, precision);
    Integer word_base;
    mpz_ui_pow_ui(word_base.get_mpz_t(), 2, 64);
    Integer t = 0;
    for (Integer span = 1; span < m; span *= word_base) {
      std::uint64_t w = rng();
      Integer word;
      mpz_import(word.get_mpz_t(), 1, -1, sizeof w, 0, 0, &w);
      t = t * word_base + word;
    }
    t %= m;
    if (mpz_divisible_ui_p(t.get_mpz_t(), p.value()) != 0) t += 1;
    t0 = TruncatedPadicInt(t, p, precision);
  }

  auto orbit = simulate_conjugate(g, *t0, steps - 1);
  EquidistributionReport rep{depth, steps, {}, {}, 0.0};
  for (const auto& b : unit_residues(p, depth)) rep.counts[b] = 0;
  for (const auto& t : orbit) ++rep.counts[t.residue_mod(depth)];
  double expected = 1.0 / static_cast<double>(rep.counts.size());
  for (const auto& [ball, count] : rep.counts) {
    if (count == 0) rep.unvisited.push_back(ball);
    double freq = static_cast<double>(count) / static_cast<double>(steps);
    rep.max_relative_deviation = std::max(rep.max_relative_deviation, std::abs(freq - expected) / expected);
  }
  return rep;
}

}  // namespace padicdyn
