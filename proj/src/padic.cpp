#include "padicdyn/padic.hpp"

#include "padicdyn/errors.hpp"

namespace padicdyn {

unsigned long integer_valuation(const Integer& n, const Prime& p) {
  if (n == 0) throw DomainError(ErrorKind::InvalidArgument, "valuation of integer zero");
  Integer pz(p.value());
  Integer rest;
  return mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t());
}

Valuation valuation(const Rational& x, const Prime& p) {
  if (x == 0) return Valuation::infinity();
  long v = static_cast<long>(integer_valuation(x.get_num(), p)) -
           static_cast<long>(integer_valuation(x.get_den(), p));
  return Valuation(v);
}

LogRadius norm(const Rational& x, const Prime& p) { return LogRadius::of(valuation(x, p)); }

std::pair<Valuation, Valuation> quadratic_root_valuations(const Rational& c2, const Rational& c1,
                                                          const Rational& c0, const Prime& p) {
  if (c2 == 0) throw DomainError(ErrorKind::InvalidArgument, "leading coefficient is zero");
  Valuation v2 = valuation(c2, p);
  if (c0 == 0) {
    if (c1 == 0) return {Valuation::infinity(), Valuation::infinity()};
    return {Valuation::infinity(), Valuation(Rational(valuation(c1, p).value() - v2.value()))};
  }
  Rational e0 = valuation(c0, p).value();
  Rational e2 = v2.value();
  Valuation v1 = valuation(c1, p);
  Rational mid = (e0 + e2) / 2;
  if (v1.is_infinite() || v1.value() >= mid) {
    Rational both = (e0 - e2) / 2;
    return {Valuation(both), Valuation(both)};
  }
  // Two segments of the Newton polygon; the steeper one gives the smaller root.
  Rational e1 = v1.value();
  return {Valuation(Rational(e0 - e1)), Valuation(Rational(e1 - e2))};
}

RootNorms quad_root_norms(const Rational& d, const Rational& b, const Prime& p) {
  if (b == 0) throw DomainError(ErrorKind::ZeroB, "b must be nonzero");
  auto [small, large] = quadratic_root_valuations(Rational(1), d, b, p);
  return {LogRadius::of(small), LogRadius::of(large)};
}

// ---- TruncatedPadicInt

TruncatedPadicInt::TruncatedPadicInt(Integer residue, const Prime& p, unsigned precision)
    : p_(p), precision_(precision), modulus_(pow_integer(p, precision)) {
  if (precision == 0) throw DomainError(ErrorKind::InvalidArgument, "precision must be positive");
  mpz_mod(residue_.get_mpz_t(), residue.get_mpz_t(), modulus_.get_mpz_t());
}

TruncatedPadicInt TruncatedPadicInt::from_rational(const Rational& x, const Prime& p,
                                                   unsigned precision) {
  Valuation v = valuation(x, p);
  if (v.is_finite() && v.value() < 0)
    throw DomainError(ErrorKind::InvalidArgument,
                      format_rational(x) + " is not a " + std::to_string(p.value()) + "-adic integer");
  Integer m = pow_integer(p, precision);
  Integer inv;
  mpz_invert(inv.get_mpz_t(), x.get_den().get_mpz_t(), m.get_mpz_t());
  return TruncatedPadicInt(Integer(x.get_num() * inv), p, precision);
}

bool TruncatedPadicInt::is_unit() const {
  return mpz_divisible_ui_p(residue_.get_mpz_t(), p_.value()) == 0;
}

Integer TruncatedPadicInt::residue_mod(unsigned k) const {
  if (k > precision_) throw DomainError(ErrorKind::InvalidArgument, "residue beyond precision");
  Integer r;
  Integer m = pow_integer(p_, k);
  mpz_mod(r.get_mpz_t(), residue_.get_mpz_t(), m.get_mpz_t());
  return r;
}

void TruncatedPadicInt::check_compatible(const TruncatedPadicInt& o) const {
  if (!(p_ == o.p_) || precision_ != o.precision_)
    throw DomainError(ErrorKind::InvalidArgument, "mismatched prime or precision");
}

TruncatedPadicInt TruncatedPadicInt::operator+(const TruncatedPadicInt& o) const {
  check_compatible(o);
  return TruncatedPadicInt(Integer(residue_ + o.residue_), p_, precision_);
}

TruncatedPadicInt TruncatedPadicInt::operator-(const TruncatedPadicInt& o) const {
  check_compatible(o);
  return TruncatedPadicInt(Integer(residue_ - o.residue_), p_, precision_);
}

TruncatedPadicInt TruncatedPadicInt::operator*(const TruncatedPadicInt& o) const {
  check_compatible(o);
  return TruncatedPadicInt(Integer(residue_ * o.residue_), p_, precision_);
}

TruncatedPadicInt TruncatedPadicInt::operator-() const {
  return TruncatedPadicInt(Integer(-residue_), p_, precision_);
}

std::string TruncatedPadicInt::to_string() const {
  return residue_.get_str() + " mod " + std::to_string(p_.value()) + "^" + std::to_string(precision_);
}

TruncatedPadicInt invert_unit(const TruncatedPadicInt& u) {
  if (!u.is_unit())
    throw DomainError(ErrorKind::NonUnit, u.to_string() + " is divisible by p");
  Integer inv;
  mpz_invert(inv.get_mpz_t(), u.residue().get_mpz_t(), u.modulus().get_mpz_t());
  return TruncatedPadicInt(inv, u.prime(), u.precision());
}

// ---- square roots

namespace {

struct UnitSplit {
  long valuation;
  Rational unit;
};

UnitSplit split_unit(const Rational& x, const Prime& p) {
  if (x == 0) throw DomainError(ErrorKind::InvalidArgument, "square root of zero");
  long v = valuation(x, p).value().get_num().get_si();
  return {v, Rational(x / pow_rational(p, v))};
}

Integer powm(const Integer& base, const Integer& e, const Integer& m) {
  Integer r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

// Square root of a quadratic residue u mod an odd prime p.
Integer tonelli_shanks(const Integer& u, const Integer& p) {
  Integer q = p - 1;
  unsigned long s = 0;
  while (q % 2 == 0) { q /= 2; ++s; }
  Integer z = 2;
  while (powm(z, Integer((p - 1) / 2), p) != p - 1) ++z;
  Integer c = powm(z, q, p);
  Integer r = powm(u, Integer((q + 1) / 2), p);
  Integer t = powm(u, q, p);
  unsigned long m = s;
  while (t != 1) {
    unsigned long i = 0;
    Integer t2 = t;
    while (t2 != 1) { t2 = t2 * t2 % p; ++i; }
    Integer b = c;
    for (unsigned long j = 0; j + i + 1 < m; ++j) b = b * b % p;
    r = r * b % p;
    c = b * b % p;
    t = t * c % p;
    m = i;
  }
  return r;
}

// Checks the square class and returns a unit root mod p^precision.
Integer unit_sqrt(const Rational& unit, const Prime& p, unsigned precision) {
  if (p.value() == 2) {
    Integer m8 = TruncatedPadicInt::from_rational(unit, p, 3).residue();
    if (m8 != 1)
      throw DomainError(ErrorKind::NonSquareUnit, format_rational(unit) + " is not 1 mod 8");
    // Lift with one spare digit so the truncation is an actual root.
    unsigned work = precision + 1;
    Integer u = TruncatedPadicInt::from_rational(unit, p, work).residue();
    Integer s = 1;
    for (unsigned k = 3; k < work; ++k) {
      Integer mod_next = pow_integer(p, k + 1);
      if ((s * s - u) % mod_next != 0) s += pow_integer(p, k - 1);
    }
    return s;
  }
  Integer pz(p.value());
  Integer u1 = TruncatedPadicInt::from_rational(unit, p, 1).residue();
  if (powm(u1, Integer((pz - 1) / 2), pz) != 1)
    throw DomainError(ErrorKind::NonSquareUnit,
                      format_rational(unit) + " is not a square mod " + std::to_string(p.value()));
  Integer s = tonelli_shanks(u1, pz);
  if (pz - s < s) s = pz - s;  // smallest root mod p, for determinism
  unsigned k = 1;
  while (k < precision) {
    k = std::min(2 * k, precision);
    Integer m = pow_integer(p, k);
    Integer u = TruncatedPadicInt::from_rational(unit, p, k).residue();
    Integer inv;
    Integer two_s = 2 * s;
    mpz_invert(inv.get_mpz_t(), two_s.get_mpz_t(), m.get_mpz_t());
    s = s - (s * s - u) * inv;
    mpz_mod(s.get_mpz_t(), s.get_mpz_t(), m.get_mpz_t());
  }
  return s;
}

}  // namespace

SquareRoot hensel_sqrt(const Rational& x, const Prime& p, unsigned precision) {
  UnitSplit split = split_unit(x, p);
  if (split.valuation % 2 != 0)
    throw DomainError(ErrorKind::OddValuation,
                      format_rational(x) + " has odd valuation " + std::to_string(split.valuation));
  Integer s = unit_sqrt(split.unit, p, precision);
  return {split.valuation / 2, TruncatedPadicInt(s, p, precision)};
}

bool is_square_in_qp(const Rational& x, const Prime& p) {
  try {
    hensel_sqrt(x, p, 3);
    return true;
  } catch (const DomainError& e) {
    if (e.kind() == ErrorKind::OddValuation || e.kind() == ErrorKind::NonSquareUnit) return false;
    throw;
  }
}

std::optional<Rational> rational_sqrt(const Rational& x) {
  if (sgn(x) < 0) return std::nullopt;
  const Integer& n = x.get_num();
  const Integer& d = x.get_den();
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0 || mpz_perfect_square_p(d.get_mpz_t()) == 0)
    return std::nullopt;
  Integer rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

// ---- PadicNumber

PadicNumber::PadicNumber(long valuation, TruncatedPadicInt unit)
    : valuation_(valuation), unit_(std::move(unit)) {
  if (!unit_.is_unit()) throw DomainError(ErrorKind::NonUnit, "PadicNumber needs a unit part");
}

PadicNumber PadicNumber::from_rational(const Rational& x, const Prime& p, unsigned precision) {
  UnitSplit split = split_unit(x, p);
  return PadicNumber(split.valuation, TruncatedPadicInt::from_rational(split.unit, p, precision));
}

PadicNumber PadicNumber::operator+(const PadicNumber& o) const {
  const PadicNumber& lo = valuation_ <= o.valuation_ ? *this : o;
  const PadicNumber& hi = valuation_ <= o.valuation_ ? o : *this;
  const Prime& p = prime();
  unsigned n = std::min(lo.unit_.precision(), hi.unit_.precision());
  auto shift = static_cast<unsigned long>(hi.valuation_ - lo.valuation_);
  Integer sum = lo.unit_.residue() + hi.unit_.residue() * pow_integer(p, shift);
  Integer m = pow_integer(p, n);
  mpz_mod(sum.get_mpz_t(), sum.get_mpz_t(), m.get_mpz_t());
  if (sum == 0) throw DomainError(ErrorKind::InvalidArgument, "sum vanishes to working precision");
  unsigned long k = integer_valuation(sum, p);
  Integer unit = sum / pow_integer(p, k);
  return PadicNumber(lo.valuation_ + static_cast<long>(k),
                     TruncatedPadicInt(unit, p, n - static_cast<unsigned>(k)));
}

PadicNumber PadicNumber::operator-() const { return PadicNumber(valuation_, -unit_); }

PadicNumber PadicNumber::operator*(const PadicNumber& o) const {
  unsigned n = std::min(unit_.precision(), o.unit_.precision());
  TruncatedPadicInt u(unit_.residue() * o.unit_.residue(), prime(), n);
  return PadicNumber(valuation_ + o.valuation_, u);
}

PadicNumber PadicNumber::inverse() const {
  return PadicNumber(-valuation_, invert_unit(unit_));
}

PadicNumber PadicNumber::operator*(const Rational& q) const {
  return *this * from_rational(q, prime(), unit_.precision());
}

PadicNumber PadicNumber::operator/(const Rational& q) const {
  return *this * from_rational(q, prime(), unit_.precision()).inverse();
}

Rational PadicNumber::approximation() const {
  return Rational(unit_.residue()) * pow_rational(prime(), valuation_);
}

std::string PadicNumber::to_string() const {
  return std::to_string(prime().value()) + "^(" + std::to_string(valuation_) + ")*(" +
         unit_.to_string() + ")";
}

}  // namespace padicdyn
