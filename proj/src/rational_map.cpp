#include "padicdyn/rational_map.hpp"

#include "padicdyn/errors.hpp"

namespace padicdyn {

namespace {

using Poly = std::vector<Rational>;  // low degree first

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_rem(Poly f, const Poly& g) {
  trim(f);
  while (f.size() >= g.size()) {
    Rational q = f.back() / g.back();
    std::size_t shift = f.size() - g.size();
    for (std::size_t i = 0; i < g.size(); ++i) f[shift + i] -= q * g[i];
    f.pop_back();
    trim(f);
  }
  return f;
}

Poly poly_gcd(Poly f, Poly g) {
  trim(f);
  trim(g);
  while (!g.empty()) {
    Poly r = poly_rem(f, g);
    f = std::move(g);
    g = std::move(r);
  }
  return f;
}

bool is_pole(const CanonicalMap& f, const Rational& x) {
  return x * x + f.d() * x + f.b() == 0;
}

}  // namespace

GeneralMap::GeneralMap(Rational a_, Rational b_, Rational c_, Rational d_, Rational e_, Prime p_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)), e(std::move(e_)), p(p_) {
  if (a == 0) throw DomainError(ErrorKind::InvalidMap, "a must be nonzero");
  if (b - a * d == 0 && c - a * e == 0)
    throw DomainError(ErrorKind::InvalidMap, "numerator is a multiple of the denominator");
}

Rational GeneralMap::eval(const Rational& x) const {
  Rational den = x * x + d * x + e;
  if (den == 0) throw DomainError(ErrorKind::PoleHit, format_rational(x) + " is a pole");
  return Rational((a * x * x + b * x + c) / den);
}

CanonicalMap::CanonicalMap(Rational a, Rational b, Rational d, Prime p)
    : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)), p_(p) {
  if (a_ == 0 || b_ == 0) throw DomainError(ErrorKind::InvalidMap, "need a b != 0");
  if (a_ == d_) throw DomainError(ErrorKind::InvalidMap, "need a != d");
  RootNorms rn = quad_root_norms(d_, b_, p_);
  alpha_ = rn.alpha;
  beta_ = rn.beta;
}

std::string CanonicalMap::to_string() const {
  return "(" + format_rational(a_) + "," + format_rational(b_) + "," + format_rational(d_) +
         ", p=" + std::to_string(p_.value()) + ")";
}

PoleData poles(const CanonicalMap& f) {
  PoleData out{f.alpha(), f.beta(), std::nullopt};
  if (auto s = rational_sqrt(Rational(f.d() * f.d() - 4 * f.b()))) {
    Rational r1 = (-f.d() - *s) / 2;
    Rational r2 = (-f.d() + *s) / 2;
    if (norm(r2, f.p()) < norm(r1, f.p())) std::swap(r1, r2);
    out.exact_poles = std::make_pair(r1, r2);
  }
  return out;
}

ConjugacyRecord canonicalize(const GeneralMap& g) {
  // Fixed points solve x^3 + (d-a) x^2 + (e-b) x - c = 0.
  Poly cubic{Rational(-g.c), Rational(g.e - g.b), Rational(g.d - g.a), Rational(1)};
  Poly deriv{cubic[1], Rational(2 * cubic[2]), Rational(3)};
  Poly common = poly_gcd(cubic, deriv);
  if (common.size() <= 1)
    throw DomainError(ErrorKind::ThreeDistinctRoots, "fixed-point cubic has no repeated root");
  if (common.size() == 3)
    throw DomainError(ErrorKind::TripleRoot, "fixed-point cubic has a triple root");
  // A repeated root of a rational cubic is rational, so the gcd is linear over Q.
  Rational x2 = -common[0] / common[1];
  Rational E = x2 * x2 + g.d * x2 + g.e;
  if (E == 0)
    throw DomainError(ErrorKind::PoleCoincidesWithFixedPoint,
                      "double fixed point " + format_rational(x2) + " is a pole");
  Rational A = g.a - x2;
  Rational D = 2 * x2 + g.d;
  if (A == 0)
    throw DomainError(ErrorKind::DegenerateCanonical, "conjugated map has a = 0");
  return {x2, CanonicalMap(A, E, D, g.p)};
}

Rational eval(const CanonicalMap& f, const Rational& x) {
  Rational den = x * x + f.d() * x + f.b();
  if (den == 0) throw DomainError(ErrorKind::PoleHit, format_rational(x) + " is a pole");
  return Rational((f.a() * x * x + f.b() * x) / den);
}

Rational derivative(const CanonicalMap& f, const Rational& x) {
  Rational den = x * x + f.d() * x + f.b();
  if (den == 0) throw DomainError(ErrorKind::PoleHit, format_rational(x) + " is a pole");
  Rational num = (f.a() * f.d() - f.b()) * x * x + 2 * f.a() * f.b() * x + f.b() * f.b();
  return Rational(num / (den * den));
}

Valuation derivative_norm(const CanonicalMap& f, const Rational& x) {
  return valuation(derivative(f, x), f.p());
}

Valuation displacement_norm(const CanonicalMap& f, const Rational& c) {
  return valuation(Rational(eval(f, c) - c), f.p());
}

Rational fixed_point_multiplier(const CanonicalMap& f) {
  Rational ad = f.a() - f.d();
  Rational den = f.b() + ad * f.a();
  if (den == 0)
    throw DomainError(ErrorKind::PoleCoincidesWithFixedPoint,
                      "x2 = " + format_rational(ad) + " is a pole");
  return Rational((f.b() + ad * f.d()) / den);
}

std::vector<PreimageRoot> solve_preimage(const CanonicalMap& f, const Rational& y,
                                         unsigned precision) {
  const Prime& p = f.p();
  // (a - y) x^2 + (b - d y) x - b y = 0
  Rational A = f.a() - y;
  Rational B = f.b() - f.d() * y;
  Rational C = -f.b() * y;
  std::vector<PreimageRoot> out;
  auto push_rational = [&](const Rational& x) {
    if (is_pole(f, x)) return;
    out.push_back({PreimageRoot::Kind::Rational, norm(x, p), x, std::nullopt});
  };

  if (A == 0) {
    // The second root escaped to infinity.
    if (B != 0) push_rational(Rational(-C / B));
    return out;
  }
  Rational disc = B * B - 4 * A * C;
  if (disc == 0) {
    push_rational(Rational(-B / (2 * A)));
    return out;
  }
  if (auto s = rational_sqrt(disc)) {
    push_rational(Rational((-B - *s) / (2 * A)));
    push_rational(Rational((-B + *s) / (2 * A)));
    return out;
  }
  auto [v_small, v_large] = quadratic_root_valuations(A, B, C, p);
  if (!is_square_in_qp(disc, p)) {
    out.push_back({PreimageRoot::Kind::NotInField, LogRadius::of(v_small), std::nullopt, std::nullopt});
    out.push_back({PreimageRoot::Kind::NotInField, LogRadius::of(v_large), std::nullopt, std::nullopt});
    return out;
  }
  // Irrational roots in Q_p. Neither is zero since C != 0 here. Take the root
  // of larger norm from the formula and the other from the product C / A.
  SquareRoot sq = hensel_sqrt(disc, p, precision);
  PadicNumber s(sq.half_valuation, sq.unit_root);
  std::optional<PadicNumber> big;
  if (B == 0) {
    big = s / Rational(2 * A);
  } else {
    PadicNumber minus_b = PadicNumber::from_rational(Rational(-B), p, precision);
    for (int sign : {1, -1}) {
      try {
        PadicNumber cand = (sign > 0 ? minus_b + s : minus_b + (-s)) / Rational(2 * A);
        if (!big || cand.valuation() < big->valuation()) big = cand;
      } catch (const DomainError&) {
        // complete cancellation: this sign gives the small root
      }
    }
  }
  PadicNumber small = PadicNumber::from_rational(Rational(C / A), p, precision) * big->inverse();
  out.push_back({PreimageRoot::Kind::Padic, small.norm(), std::nullopt, small});
  out.push_back({PreimageRoot::Kind::Padic, big->norm(), std::nullopt, *big});
  return out;
}

}  // namespace padicdyn
