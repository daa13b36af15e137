#include "padicdyn/classifier.hpp"

#include "padicdyn/errors.hpp"

namespace padicdyn {

std::string_view kind_name(FixedPointKind k) {
  switch (k) {
    case FixedPointKind::Indifferent: return "Indifferent";
    case FixedPointKind::Attractor: return "Attractor";
    case FixedPointKind::Repeller: return "Repeller";
  }
  return "unknown";
}

std::string_view geometry_name(X2Geometry::Kind k) {
  switch (k) {
    case X2Geometry::Kind::SiegelEqualsX1: return "SiegelEqualsX1";
    case X2Geometry::Kind::SiegelDisjointBall: return "SiegelDisjointBall";
    case X2Geometry::Kind::BasinBall: return "BasinBall";
    case X2Geometry::Kind::BasinComplement: return "BasinComplement";
    case X2Geometry::Kind::RepellingBall: return "RepellingBall";
  }
  return "unknown";
}

namespace {

FixedPointKind kind_of(const Valuation& v) {
  if (v == Valuation(0L)) return FixedPointKind::Indifferent;
  return v > Valuation(0L) ? FixedPointKind::Attractor : FixedPointKind::Repeller;
}

std::string siegel_form(CaseId id) {
  if (id == CaseId::C3) return "alpha^2/|a|";
  if (id == CaseId::C8) return "alpha*beta/|a|";
  return "alpha";
}

}  // namespace

LogRadius siegel_radius(const NormCase& nc) {
  if (nc.id == CaseId::C3) return nc.alpha * nc.alpha / nc.a_norm;
  if (nc.id == CaseId::C8) return nc.alpha * nc.beta / nc.a_norm;
  return nc.alpha;
}

ClassificationReport classify(const CanonicalMap& f) {
  const Prime& p = f.p();
  NormCase nc = detect_case(f);
  Rational x2 = f.x2();
  Rational multiplier = fixed_point_multiplier(f);
  Valuation mv = valuation(multiplier, p);

  const LogRadius &al = nc.alpha, &be = nc.beta;
  LogRadius d_norm = norm(f.d(), p);
  LogRadius x2_norm = norm(x2, p);
  LogRadius q_d = norm(Rational(f.b() + x2 * f.d()), p);  // |b + (a-d) d|
  LogRadius q_a = norm(Rational(f.b() + x2 * f.a()), p);  // |b + (a-d) a|
  LogRadius al2 = al * al;
  LogRadius si = siegel_radius(nc);

  using K = X2Geometry::Kind;
  X2Geometry geom{K::SiegelEqualsX1, si, siegel_form(nc.id)};
  std::string branch;
  auto unhandled = [&](const std::string& why) {
    throw DomainError(ErrorKind::UnhandledBoundary,
                      std::string(case_name(nc.id)) + " with " + why + " is not classified");
  };

  switch (nc.id) {
    case CaseId::C1:
      if (d_norm < al) {
        branch = "|d| < alpha";
      } else if (q_d < al2) {
        branch = "|d| = alpha, |b+(a-d)d| < alpha^2";
        geom = {K::BasinBall, al, "alpha"};
      } else {
        branch = "|d| = alpha, |b+(a-d)d| = alpha^2";
        geom = {K::SiegelDisjointBall, al, "alpha"};
      }
      break;
    case CaseId::C2:
      if (d_norm < al) {
        if (q_a < al2) {
          branch = "|d| < alpha, |b+(a-d)a| < alpha^2";
          geom = {K::RepellingBall, al, "alpha"};
        } else {
          branch = "|d| < alpha, |b+(a-d)a| = alpha^2";
          geom = {K::SiegelDisjointBall, al, "alpha"};
        }
      } else if (x2_norm < al) {
        branch = "|x2| < alpha";
      } else {
        unhandled("|d| = alpha and |x2| = alpha");
      }
      break;
    case CaseId::C3:
      branch = "|a| > alpha = beta";
      geom = {K::BasinComplement, si, "alpha^2/|a|"};
      break;
    case CaseId::C4:
    case CaseId::C5:
    case CaseId::C6:
      branch = "alpha < beta, |a| < beta";
      geom = {K::RepellingBall, be, "beta"};
      break;
    case CaseId::C7:
      if (x2_norm < al) {
        branch = "|a-d| < alpha";
      } else if (x2_norm > al) {
        branch = "|a-d| > alpha";
        geom = {K::SiegelDisjointBall, x2_norm, "|x2|"};
      } else {
        unhandled("|a-d| = alpha");
      }
      break;
    case CaseId::C8:
      branch = "alpha < beta < |a|";
      geom = {K::BasinComplement, si, "alpha*beta/|a|"};
      break;
  }
  return ClassificationReport{
      nc,
      x2,
      {"x1", Rational(0), FixedPointKind::Indifferent, Valuation(0L)},
      {"x2", x2, kind_of(mv), mv},
      si,
      siegel_form(nc.id),
      geom,
      branch,
  };
}

LogRadius pk_radius(const CanonicalMap& f, unsigned k) {
  NormCase nc = detect_case(f);
  if (nc.id != CaseId::C3) throw DomainError(ErrorKind::WrongCase, "pre-pole radii need |a| > alpha = beta");
  Integer two_k;
  mpz_ui_pow_ui(two_k.get_mpz_t(), 2, k);
  Rational frac(Integer(two_k - 1), two_k);
  frac.canonicalize();
  const Rational& ea = nc.alpha.exponent();
  Rational e = ea + (ea - nc.a_norm.exponent()) * frac;
  return LogRadius::power(e);
}

namespace {

struct RhoRow {
  LogRadius value;
  std::string row;
};

RhoRow rho_row(const CanonicalMap& f, const LogRadius& r) {
  NormCase nc = detect_case(f);
  InvariantRadiusSet inv = invariant_radii(nc);
  if (!inv.contains(r))
    throw DomainError(ErrorKind::NotInvariant, "S_r(0) is not invariant for r=" + r.to_string(f.p()));
  LogRadius delta = norm(f.x2(), f.p());
  if (r == delta)
    throw DomainError(ErrorKind::ExceptionalRadius, "r equals |a-d| = " + delta.to_string(f.p()));
  const LogRadius &al = nc.alpha, &be = nc.beta, &an = nc.a_norm;
  switch (inv.kind) {
    case InvariantRadiusSet::Kind::I1:
      if (al < be || delta == al) return {r * r / al, "I1: r^2/alpha"};
      if (r < delta) return {r * r * delta / (al * al), "I1, |a-d| < alpha = beta, r < |a-d|: r^2|a-d|/alpha^2"};
      return {r * r * r / (al * al), "I1, |a-d| < alpha = beta, r > |a-d|: r^3/alpha^2"};
    case InvariantRadiusSet::Kind::I2:
      if (r < al) {
        if (r < delta) return {r * r * delta / (al * be), "I2, r < alpha, r < |a-d|: r^2|a-d|/(alpha beta)"};
        return {r * r * r / (al * be), "I2, r < alpha, r > |a-d|: r^3/(alpha beta)"};
      }
      if (r < delta) return {r * delta / be, "I2, r > alpha, r < |a-d|: r|a-d|/beta"};
      return {r * r / be, "I2, r > alpha, r > |a-d|: r^2/beta"};
    case InvariantRadiusSet::Kind::I3:
      return {an * r * r / (al * be), "I3: |a|r^2/(alpha beta)"};
  }
  return {r, ""};
}

}  // namespace

LogRadius rho_r(const CanonicalMap& f, const LogRadius& r) { return rho_row(f, r).value; }

std::string rho_r_row(const CanonicalMap& f, const LogRadius& r) { return rho_row(f, r).row; }

MinimalBallRecord minimal_invariant_ball(const CanonicalMap& f, const Rational& c,
                                         std::size_t check_depth) {
  LogRadius r = norm(c, f.p());
  LogRadius rho = rho_r(f, r);
  MinimalBallRecord rec{c, r, rho, {}, true};
  Rational cur = c;
  for (std::size_t n = 0; n < check_depth; ++n) {
    Rational next = eval(f, cur);
    LogRadius disp = norm(Rational(next - cur), f.p());
    rec.displacements.push_back(disp);
    if (disp != rho) rec.displacements_constant = false;
    cur = std::move(next);
  }
  return rec;
}

std::optional<PeriodicOrbit> find_periodic(const CanonicalMap& f, const Rational& x,
                                           std::size_t kmax) {
  std::vector<Rational> orbit{x};
  for (std::size_t k = 1; k <= kmax; ++k) {
    Rational next;
    try {
      next = eval(f, orbit.back());
    } catch (const DomainError& e) {
      throw DomainError(ErrorKind::PoleHit, e.what(), k - 1);
    }
    if (next == x) {
      // (f^k)' at any orbit point is the product of f' along the cycle.
      Valuation total(0L);
      for (const auto& y : orbit) total = total + derivative_norm(f, y);
      PeriodicOrbit out{k, orbit, std::vector<Valuation>(orbit.size(), total), total == Valuation(0L)};
      return out;
    }
    orbit.push_back(std::move(next));
  }
  return std::nullopt;
}

}  // namespace padicdyn
