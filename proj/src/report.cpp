#include "padicdyn/report.hpp"

namespace padicdyn {

namespace {

std::string rs(const LogRadius& r, const Prime& p) { return r.to_string(p.value()); }
std::string fr(const Rational& q) { return format_rational(q); }

std::string limit_text(const LimitBehavior& lb, const Prime& p) {
  return std::string(limit_kind_name(lb.kind)) + " " + rs(lb.radius, p);
}

}  // namespace

Json to_json(const CanonicalMap& f) {
  return {{"a", fr(f.a())}, {"b", fr(f.b())}, {"d", fr(f.d())}, {"p", f.p().value()}};
}

Json to_json(const NormCase& nc, const Prime& p) {
  return {{"case", case_name(nc.id)},
          {"a_norm", rs(nc.a_norm, p)},
          {"alpha", rs(nc.alpha, p)},
          {"beta", rs(nc.beta, p)},
          {"invariant_radii", invariant_radii(nc).name()},
          {"invariant_sup", rs(invariant_radii(nc).upper(), p)}};
}

namespace {

Json character_json(const FixedPointCharacter& c) {
  return {{"point", fr(c.point)}, {"kind", kind_name(c.kind)},
          {"derivative_valuation", c.derivative_valuation.to_string()}};
}

}  // namespace

Json to_json(const ClassificationReport& r, const Prime& p) {
  return {{"norm_case", to_json(r.norm_case, p)},
          {"x1", character_json(r.x1_character)},
          {"x2", character_json(r.x2_character)},
          {"siegel_x1", {{"center", "0"}, {"radius", rs(r.siegel_x1_radius, p)}, {"form", r.siegel_x1_form}}},
          {"x2_geometry",
           {{"kind", geometry_name(r.x2_geometry.kind)},
            {"radius", rs(r.x2_geometry.radius, p)},
            {"form", r.x2_geometry.form}}},
          {"branch", r.branch}};
}

Json to_json(const StepOutcome& s, const Prime& p) {
  if (s.determined()) return {{"radius", rs(*s.radius, p)}};
  return {{"marker", marker_name(*s.marker)}, {"step", s.step}};
}

Json to_json(const NormTrace& t, const NormCase& nc, const Prime& p) {
  Json radii = Json::array();
  for (const auto& r : t.radii) radii.push_back(rs(r, p));
  Json out{{"radii", radii}};
  if (t.marker) {
    MarkerBounds mb = marker_bounds(nc, *t.marker);
    out["marker"] = {{"name", marker_name(*t.marker)},
                     {"step", t.radii.size() - 1},
                     {"lower", mb.lower ? Json(rs(*mb.lower, p)) : Json(nullptr)},
                     {"upper", mb.upper ? Json(rs(*mb.upper, p)) : Json(nullptr)}};
  } else {
    out["marker"] = nullptr;
  }
  if (!t.radii.empty()) out["limit"] = limit_text(limit_behavior(nc, t.radii.front()), p);
  return out;
}

Json to_json(const PreimageRoot& root, const Prime& p) {
  static constexpr const char* kinds[] = {"Rational", "Padic", "NotInField"};
  Json out{{"kind", kinds[static_cast<int>(root.kind)]}, {"norm", rs(root.norm, p)}};
  if (root.exact) out["value"] = fr(*root.exact);
  if (root.lifted) out["approximation"] = root.lifted->to_string();
  return out;
}

Json to_json(const NonErgodicWitness& w, const Prime& p) {
  return {{"ergodic", false},
          {"center", fr(w.center)},
          {"r", rs(w.r, p)},
          {"rho", rs(w.rho, p)},
          {"measure", fr(w.measure)},
          {"bound", fr(w.bound)},
          {"row", w.row}};
}

Json to_json(const Mod4Result& m) {
  return {{"ergodic", m.ergodic},
          {"signature", {m.signature.A1, m.signature.A2, m.signature.B1, m.signature.B2}},
          {"condition", m.condition},
          {"swapped", m.swapped}};
}

Json to_json(const ErgodicityVerdict& v) {
  return {{"ergodic", v.ergodic},
          {"condition", v.condition},
          {"reason", v.reason},
          {"mod4", to_json(v.mod4)},
          {"mod4_agrees", v.mod4_agrees},
          {"sqrt_in_Q2", v.sqrt_assumption_holds}};
}

std::vector<std::string> histogram_lines(const EquidistributionReport& e) {
  std::vector<std::string> out;
  for (const auto& [ball, count] : e.counts) {
    Rational freq(static_cast<unsigned long>(count), static_cast<unsigned long>(e.steps));
    freq.canonicalize();
    out.push_back("ball=" + ball.get_str() + " count=" + std::to_string(count) + " freq=" + fr(freq));
  }
  return out;
}

Json to_json(const EquidistributionReport& e) {
  Json balls = Json::array();
  for (const auto& [ball, count] : e.counts) balls.push_back({{"ball", ball.get_str()}, {"count", count}});
  Json unvisited = Json::array();
  for (const auto& u : e.unvisited) unvisited.push_back(u.get_str());
  return {{"depth", e.depth},
          {"steps", e.steps},
          {"histogram", balls},
          {"unvisited", unvisited},
          {"max_relative_deviation", e.max_relative_deviation}};
}

Json to_json(const SuiteResult& s) {
  return {{"suite", s.suite},     {"passed", s.passed},
          {"checks", s.checks},   {"failures", s.failures},
          {"failure_samples", s.failure_samples},
          {"details", Json::parse(s.details.dump())}};
}

Json to_json(const PeriodicOrbit& o) {
  Json pts = Json::array(), vals = Json::array();
  for (const auto& x : o.points) pts.push_back(fr(x));
  for (const auto& v : o.multiplier_valuations) vals.push_back(v.to_string());
  return {{"period", o.period}, {"points", pts}, {"multiplier_valuations", vals}, {"indifferent", o.indifferent}};
}

Json error_json(const DomainError& e) {
  Json out{{"name", e.name()}, {"message", e.what()}};
  if (e.step()) out["step"] = *e.step();
  return out;
}

}  // namespace padicdyn
