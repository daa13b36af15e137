#include "padicdyn/norm_dynamics.hpp"

#include "padicdyn/errors.hpp"

namespace padicdyn {

namespace {

constexpr std::size_t kLimitCap = 100000;

StepOutcome det(LogRadius r) { return StepOutcome::of(std::move(r)); }
StepOutcome mark(Marker m) { return StepOutcome::blocked(m, 0); }

}  // namespace

std::string_view case_name(CaseId id) {
  static constexpr std::string_view names[] = {"C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8"};
  return names[static_cast<int>(id)];
}

NormCase detect_case(const CanonicalMap& f) {
  const LogRadius& al = f.alpha();
  const LogRadius& be = f.beta();
  LogRadius an = f.a_norm();
  CaseId id;
  if (al == be) {
    id = an < al ? CaseId::C1 : (an == al ? CaseId::C2 : CaseId::C3);
  } else if (an < al) {
    id = CaseId::C4;
  } else if (an == al) {
    id = CaseId::C5;
  } else if (an < be) {
    id = CaseId::C6;
  } else if (an == be) {
    id = CaseId::C7;
  } else {
    id = CaseId::C8;
  }
  return {id, an, al, be};
}

std::string marker_name(Marker m) {
  switch (m) {
    case Marker::C1_alpha_star: return "C1:alpha_star";
    case Marker::C1_a_star: return "C1:a_star";
    case Marker::C2_alpha_hat: return "C2:alpha_hat";
    case Marker::C3_a_prime: return "C3:a_prime";
    case Marker::C3_alpha_prime: return "C3:alpha_prime";
    case Marker::C4_alpha_check: return "C4:alpha_check";
    case Marker::C4_beta_check: return "C4:beta_check";
    case Marker::C4_a_check: return "C4:a_check";
    case Marker::C5_alpha_tilde: return "C5:alpha_tilde";
    case Marker::C5_beta_tilde: return "C5:beta_tilde";
    case Marker::C6_alpha_breve: return "C6:alpha_breve";
    case Marker::C6_a_breve: return "C6:a_breve";
    case Marker::C6_beta_breve: return "C6:beta_breve";
    case Marker::C7_alpha_acute: return "C7:alpha_acute";
    case Marker::C7_beta_acute: return "C7:beta_acute";
    case Marker::C8_a_grave: return "C8:a_grave";
    case Marker::C8_alpha_grave: return "C8:alpha_grave";
    case Marker::C8_beta_grave: return "C8:beta_grave";
  }
  return "unknown";
}

LogRadius marker_radius(const NormCase& nc, Marker m) {
  const LogRadius &al = nc.alpha, &be = nc.beta, &an = nc.a_norm;
  switch (m) {
    case Marker::C1_a_star: return al * al / an;
    case Marker::C3_a_prime: return al * al / an;
    case Marker::C4_a_check:
    case Marker::C6_a_breve:
    case Marker::C8_a_grave: return al * be / an;
    case Marker::C4_beta_check:
    case Marker::C5_beta_tilde:
    case Marker::C6_beta_breve:
    case Marker::C7_beta_acute:
    case Marker::C8_beta_grave: return be;
    default: return al;
  }
}

MarkerBounds marker_bounds(const NormCase& nc, Marker m) {
  const LogRadius &al = nc.alpha, &be = nc.beta, &an = nc.a_norm;
  switch (m) {
    case Marker::C1_alpha_star: return {al, std::nullopt};
    case Marker::C1_a_star: return {std::nullopt, an};
    case Marker::C2_alpha_hat: return {};
    case Marker::C3_a_prime: return {std::nullopt, al * al / an};
    case Marker::C3_alpha_prime: return {an, std::nullopt};
    case Marker::C4_alpha_check: return {al, std::nullopt};
    case Marker::C4_beta_check: return {al, std::nullopt};
    case Marker::C4_a_check: return {std::nullopt, an};
    case Marker::C5_alpha_tilde: return {al, std::nullopt};
    case Marker::C5_beta_tilde: return {};
    case Marker::C6_alpha_breve: return {al, std::nullopt};
    case Marker::C6_a_breve: return {std::nullopt, al};
    case Marker::C6_beta_breve: return {an, std::nullopt};
    case Marker::C7_alpha_acute: return {};
    case Marker::C7_beta_acute: return {an, std::nullopt};
    case Marker::C8_a_grave: return {std::nullopt, al * be / an};
    case Marker::C8_alpha_grave: return {an * al / be, std::nullopt};
    case Marker::C8_beta_grave: return {an, std::nullopt};
  }
  return {};
}

StepOutcome predict_step(const NormCase& nc, const LogRadius& r) {
  if (r.is_zero()) return det(LogRadius::zero());
  const LogRadius &al = nc.alpha, &be = nc.beta, &an = nc.a_norm;
  switch (nc.id) {
    case CaseId::C1: {
      LogRadius t = al * al / an;
      if (r < al) return det(r);
      if (r == al) return mark(Marker::C1_alpha_star);
      if (r < t) return det(al * al / r);
      if (r == t) return mark(Marker::C1_a_star);
      return det(an);
    }
    case CaseId::C2:
      if (r < al) return det(r);
      if (r == al) return mark(Marker::C2_alpha_hat);
      return det(an);
    case CaseId::C3: {
      LogRadius t = al * al / an;
      if (r < t) return det(r);
      if (r == t) return mark(Marker::C3_a_prime);
      if (r < al) return det(an * r * r / (al * al));
      if (r == al) return mark(Marker::C3_alpha_prime);
      return det(an);
    }
    case CaseId::C4: {
      LogRadius t = al * be / an;
      if (r < al) return det(r);
      if (r == al) return mark(Marker::C4_alpha_check);
      if (r < be) return det(al);
      if (r == be) return mark(Marker::C4_beta_check);
      if (r < t) return det(al * be / r);
      if (r == t) return mark(Marker::C4_a_check);
      return det(an);
    }
    case CaseId::C5:
      if (r < al) return det(r);
      if (r == al) return mark(Marker::C5_alpha_tilde);
      if (r < be) return det(al);
      if (r == be) return mark(Marker::C5_beta_tilde);
      return det(an);
    case CaseId::C6: {
      LogRadius t = al * be / an;
      if (r < al) return det(r);
      if (r == al) return mark(Marker::C6_alpha_breve);
      if (r < t) return det(al);
      if (r == t) return mark(Marker::C6_a_breve);
      if (r < be) return det(an * r / be);
      if (r == be) return mark(Marker::C6_beta_breve);
      return det(an);
    }
    case CaseId::C7:
      if (r == al) return mark(Marker::C7_alpha_acute);
      if (r < be) return det(r);
      if (r == be) return mark(Marker::C7_beta_acute);
      return det(an);
    case CaseId::C8: {
      LogRadius t = al * be / an;
      if (r < t) return det(r);
      if (r == t) return mark(Marker::C8_a_grave);
      if (r < al) return det(an * r * r / (al * be));
      if (r == al) return mark(Marker::C8_alpha_grave);
      if (r < be) return det(an * r / be);
      if (r == be) return mark(Marker::C8_beta_grave);
      return det(an);
    }
  }
  return det(r);
}

NormTrace predict_trace(const NormCase& nc, const LogRadius& r, std::size_t n) {
  NormTrace trace{{r}, std::nullopt};
  for (std::size_t k = 0; k < n; ++k) {
    StepOutcome s = predict_step(nc, trace.radii.back());
    if (!s.determined()) {
      trace.marker = s.marker;
      break;
    }
    trace.radii.push_back(*s.radius);
  }
  return trace;
}

StepOutcome predict_n(const NormCase& nc, const LogRadius& r, std::size_t n) {
  NormTrace t = predict_trace(nc, r, n);
  if (t.marker) return StepOutcome::blocked(*t.marker, t.radii.size() - 1);
  return StepOutcome::of(t.radii.back());
}

std::string_view limit_kind_name(LimitBehavior::Kind k) {
  switch (k) {
    case LimitBehavior::Kind::FixedAt: return "FixedAt";
    case LimitBehavior::Kind::ConvergesTo: return "ConvergesTo";
    case LimitBehavior::Kind::ReachesAfter: return "ReachesAfter";
    case LimitBehavior::Kind::Blocked: return "Blocked";
  }
  return "unknown";
}

LimitBehavior limit_behavior(const NormCase& nc, const LogRadius& r) {
  LogRadius cur = r;
  for (std::size_t k = 0; k < kLimitCap; ++k) {
    StepOutcome s = predict_step(nc, cur);
    if (!s.determined()) {
      Marker m = *s.marker;
      // These markers are bounded below by a radius whose orbit is |a| in every branch.
      bool forced = m == Marker::C3_alpha_prime || m == Marker::C8_alpha_grave ||
                    m == Marker::C8_beta_grave;
      if (forced) return {LimitBehavior::Kind::ConvergesTo, nc.a_norm, k, m};
      return {LimitBehavior::Kind::Blocked, cur, k, m};
    }
    if (*s.radius == cur) {
      if (k == 0) return {LimitBehavior::Kind::FixedAt, cur, 0, std::nullopt};
      return {LimitBehavior::Kind::ReachesAfter, cur, k, std::nullopt};
    }
    cur = *s.radius;
  }
  throw DomainError(ErrorKind::InvalidArgument, "radius orbit did not settle");
}

bool in_B(const NormCase& nc, const LogRadius& r) {
  if (nc.id != CaseId::C6) throw DomainError(ErrorKind::WrongCase, "B is defined only for C6");
  if (r.is_zero()) return false;
  const Rational& va = nc.a_norm.valuation().value();
  const Rational& val = nc.alpha.valuation().value();
  const Rational& vb = nc.beta.valuation().value();
  const Rational& vr = r.valuation().value();
  // r = alpha (beta/|a|)^(n+1)
  Rational m = (val - vr) / (va - vb);
  if (m.get_den() != 1 || m <= 0) return false;
  Rational n = m - 1;
  Rational bound = (val - va) / (va - vb);
  return n == 0 || n < bound;
}

bool InvariantRadiusSet::contains(const LogRadius& r) const {
  if (r.is_zero()) return false;
  switch (kind) {
    case Kind::I1: return r < alpha;
    case Kind::I2: return r < alpha || (alpha < r && r < beta);
    case Kind::I3: return r < alpha * beta / a_norm;
  }
  return false;
}

LogRadius InvariantRadiusSet::upper() const {
  switch (kind) {
    case Kind::I1: return alpha;
    case Kind::I2: return beta;
    case Kind::I3: return alpha * beta / a_norm;
  }
  return alpha;
}

std::string_view InvariantRadiusSet::name() const {
  switch (kind) {
    case Kind::I1: return "I1";
    case Kind::I2: return "I2";
    case Kind::I3: return "I3";
  }
  return "";
}

InvariantRadiusSet invariant_radii(const NormCase& nc) {
  InvariantRadiusSet::Kind k = nc.a_norm < nc.beta   ? InvariantRadiusSet::Kind::I1
                               : nc.a_norm == nc.beta ? InvariantRadiusSet::Kind::I2
                                                      : InvariantRadiusSet::Kind::I3;
  return {k, nc.alpha, nc.beta, nc.a_norm};
}

bool invariant_radii_contains(const CanonicalMap& f, const LogRadius& r) {
  return invariant_radii(detect_case(f)).contains(r);
}

bool Lf2Report::all_ok() const {
  for (const auto& s : steps)
    if (!s.ok) return false;
  return true;
}

std::size_t Lf2Report::determined_count() const {
  std::size_t n = 0;
  for (const auto& s : steps)
    if (s.predicted) ++n;
  return n;
}

Lf2Report verify_lf2(const CanonicalMap& f, const Rational& x, std::size_t n) {
  NormCase nc = detect_case(f);
  Lf2Report report{norm(x, f.p()), {}};
  Rational cur = x;
  LogRadius tracked = report.start;
  for (std::size_t k = 1; k <= n; ++k) {
    try {
      cur = eval(f, cur);
    } catch (const DomainError& e) {
      if (e.kind() == ErrorKind::PoleHit) throw DomainError(ErrorKind::PoleHit, e.what(), k - 1);
      throw;
    }
    LogRadius observed = norm(cur, f.p());
    StepOutcome pred = predict_step(nc, tracked);
    Lf2Step step{k, cur, observed, pred.radius, pred.marker, false};
    if (pred.determined()) {
      step.ok = *pred.radius == observed;
    } else {
      step.ok = marker_bounds(nc, *pred.marker).admits(observed);
    }
    report.steps.push_back(std::move(step));
    tracked = observed;
  }
  return report;
}

}  // namespace padicdyn
