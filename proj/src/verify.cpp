#include "padicdyn/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <set>

#include "padicdyn/errors.hpp"

namespace padicdyn {

namespace {

constexpr std::size_t kMaxFailureSamples = 20;

Rational q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

LogRadius pw(long e) { return LogRadius::power(Rational(e)); }

long floor_exponent(const LogRadius& r) {
  Integer f;
  Rational e = r.exponent();
  mpz_fdiv_q(f.get_mpz_t(), e.get_num_mpz_t(), e.get_den_mpz_t());
  return f.get_si();
}

std::string rs(const LogRadius& r, const Prime& p) { return r.to_string(p.value()); }

template <class Fn>
SuiteResult timed(const std::string& name, Fn&& body) {
  SuiteResult res;
  res.suite = name;
  auto t0 = std::chrono::steady_clock::now();
  body(res);
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  res.passed = res.failures == 0 && res.checks > 0;
  return res;
}

std::size_t or_default(std::size_t v, std::size_t d) { return v ? v : d; }

}  // namespace

// ---- parameter sets and sampling

const std::vector<ParameterSet>& case_parameter_sets() {
  static const std::vector<ParameterSet> sets{
      {"C1", q(3), q(1), q(0), 3},
      {"C2", q(2), q(1), q(0), 5},
      {"C3", q(1, 3), q(1), q(0), 3},
      {"C4", q(8), q(8), q(-6), 2},
      {"C5", q(4), q(8), q(-6), 2},
      {"C6", q(1), q(2), q(-9, 2), 2},
      {"C7", q(3), q(27), q(-12), 3},
      {"C8", q(1, 2), q(8), q(-6), 2},
  };
  return sets;
}

Integer Sampler::coprime(unsigned long bound) {
  std::uniform_int_distribution<unsigned long> dist(1, bound);
  for (;;) {
    unsigned long v = dist(rng_);
    if (v % p_.value() != 0) return Integer(v);
  }
}

Rational Sampler::unit() {
  Rational u(coprime(100000), coprime(1000));
  u.canonicalize();
  if (rng_() & 1) u = -u;
  return u;
}

Rational Sampler::on_sphere(long e) { return Rational(unit() * pow_rational(p_, -e)); }

Rational Sampler::any(long k) {
  if (uniform(0, 99) == 0) return Rational(0);
  std::uniform_int_distribution<unsigned long> dist(1, 1000000);
  Rational x(Integer(dist(rng_)), Integer(dist(rng_)));
  x.canonicalize();
  if (rng_() & 1) x = -x;
  return Rational(x * pow_rational(p_, uniform(-k, k)));
}

long Sampler::uniform(long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  return dist(rng_);
}

std::vector<LogRadius> sample_invariant_radii(const NormCase& nc, std::size_t count) {
  InvariantRadiusSet inv = invariant_radii(nc);
  std::vector<LogRadius> out;
  long top = floor_exponent(inv.upper()) + 1;
  for (long e = top; e > top - 64 && out.size() < count; --e)
    if (inv.contains(pw(e))) out.push_back(pw(e));
  return out;
}

void SuiteResult::check(bool ok, const std::string& what) {
  ++checks;
  if (ok) return;
  ++failures;
  if (failure_samples.size() < kMaxFailureSamples) failure_samples.push_back(what);
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"ultrametric", "lf2", "isometry", "derivative", "ab2",
                                              "tpk",         "classify", "erg", "oddp"};
  return names;
}

SuiteResult run_suite(std::string_view name, const SuiteOptions& opts) {
  static const std::vector<std::pair<std::string_view, std::function<SuiteResult(const SuiteOptions&)>>>
      table{{"ultrametric", verify_ultrametric}, {"lf2", verify_lf2_suite},
            {"isometry", verify_isometry},       {"derivative", verify_derivative},
            {"ab2", verify_ab2},                 {"tpk", verify_tpk},
            {"classify", verify_classify},       {"erg", verify_erg},
            {"oddp", verify_oddp}};
  for (const auto& [n, fn] : table)
    if (n == name) return fn(opts);
  throw DomainError(ErrorKind::InvalidArgument, "unknown suite '" + std::string(name) + "'");
}

// ---- ultrametric

SuiteResult verify_ultrametric(const SuiteOptions& opts) {
  std::size_t n = or_default(opts.samples, 10000);
  return timed("ultrametric", [&](SuiteResult& res) {
    for (unsigned long pv : {2UL, 3UL, 5UL}) {
      Prime p(pv);
      Sampler s(p, opts.seed + pv);
      for (std::size_t i = 0; i < n; ++i) {
        Rational x = s.any(8), y = s.any(8);
        Valuation vx = valuation(x, p), vy = valuation(y, p);
        res.check(valuation(Rational(x * y), p) == vx + vy,
                  "multiplicativity fails for " + format_rational(x) + ", " + format_rational(y));
        Valuation vs = valuation(Rational(x + y), p);
        bool ok = vs >= std::min(vx, vy) && (vx == vy || vs == std::min(vx, vy));
        res.check(ok, "strong triangle fails for " + format_rational(x) + ", " + format_rational(y));
      }
    }
    res.details["pairs_per_prime"] = n;
  });
}

// ---- norm trajectories

SuiteResult verify_lf2_suite(const SuiteOptions& opts) {
  std::size_t n = or_default(opts.samples, 200);
  constexpr std::size_t kSteps = 8;
  return timed("lf2", [&](SuiteResult& res) {
    for (const auto& ps : case_parameter_sets()) {
      CanonicalMap f = ps.map();
      NormCase nc = detect_case(f);
      res.check(std::string(case_name(nc.id)) == ps.label,
                ps.label + " set detected as " + std::string(case_name(nc.id)));
      // Radii near every threshold of the piecewise map, plus a spread.
      std::set<long> exps;
      for (const LogRadius& t : {nc.alpha, nc.beta, nc.a_norm, nc.alpha * nc.alpha / nc.a_norm,
                                 nc.alpha * nc.beta / nc.a_norm}) {
        long e = floor_exponent(t);
        for (long k = -2; k <= 2; ++k) exps.insert(e + k);
      }
      std::vector<long> pool(exps.begin(), exps.end());
      Sampler s(f.p(), opts.seed + static_cast<std::uint64_t>(nc.id));
      std::size_t determined = 0, markers = 0, pre_poles = 0;
      nlohmann::json observed_markers = nlohmann::json::object();
      for (std::size_t i = 0; i < n; ++i) {
        long e = pool[static_cast<std::size_t>(s.uniform(0, static_cast<long>(pool.size()) - 1))];
        Rational x = s.on_sphere(e);
        try {
          Lf2Report rep = verify_lf2(f, x, kSteps);
          for (const auto& st : rep.steps) {
            std::string where = ps.label + " x=" + format_rational(x) + " step " + std::to_string(st.k);
            if (st.predicted) {
              ++determined;
              res.check(st.ok, where + ": predicted " + rs(*st.predicted, f.p()) + ", observed " +
                                   rs(st.observed, f.p()));
            } else {
              ++markers;
              observed_markers[marker_name(*st.marker)].push_back(rs(st.observed, f.p()));
              res.check(st.ok, where + ": " + marker_name(*st.marker) + " resolved to " +
                                   rs(st.observed, f.p()) + " outside its bounds");
            }
          }
        } catch (const DomainError& err) {
          if (err.kind() != ErrorKind::PoleHit) throw;
          ++pre_poles;
        }
      }
      for (auto& [k, v] : observed_markers.items()) {
        std::set<std::string> uniq(v.begin(), v.end());
        v = nlohmann::json(std::vector<std::string>(uniq.begin(), uniq.end()));
      }
      res.details[ps.label] = {{"map", f.to_string()},
                               {"determined_steps", determined},
                               {"marker_steps", markers},
                               {"pre_poles_skipped", pre_poles},
                               {"marker_values", observed_markers}};
    }
  });
}

// ---- isometry and derivative on invariant spheres

SuiteResult verify_isometry(const SuiteOptions& opts) {
  std::size_t n = or_default(opts.samples, 100);
  return timed("isometry", [&](SuiteResult& res) {
    for (const auto& ps : case_parameter_sets()) {
      CanonicalMap f = ps.map();
      NormCase nc = detect_case(f);
      Sampler s(f.p(), opts.seed + 31 * static_cast<std::uint64_t>(nc.id));
      std::vector<std::string> radii;
      for (const auto& r : sample_invariant_radii(nc, 3)) {
        radii.push_back(rs(r, f.p()));
        long e = r.exponent().get_num().get_si();
        for (std::size_t i = 0; i < n; ++i) {
          Rational c = s.on_sphere(e);
          Rational x = c + s.on_sphere(e - s.uniform(1, 6));
          LogRadius before = norm(Rational(x - c), f.p());
          LogRadius after = norm(Rational(eval(f, x) - eval(f, c)), f.p());
          res.check(before == after, ps.label + " c=" + format_rational(c) + " x=" + format_rational(x) +
                                         ": |f(x)-f(c)|=" + rs(after, f.p()) + " vs " + rs(before, f.p()));
        }
      }
      res.details[ps.label] = radii;
    }
  });
}

SuiteResult verify_derivative(const SuiteOptions& opts) {
  std::size_t n = or_default(opts.samples, 100);
  return timed("derivative", [&](SuiteResult& res) {
    for (const auto& ps : case_parameter_sets()) {
      CanonicalMap f = ps.map();
      NormCase nc = detect_case(f);
      Sampler s(f.p(), opts.seed + 17 * static_cast<std::uint64_t>(nc.id));
      std::vector<std::string> radii;
      for (const auto& r : sample_invariant_radii(nc, 3)) {
        radii.push_back(rs(r, f.p()));
        long e = r.exponent().get_num().get_si();
        for (std::size_t i = 0; i < n; ++i) {
          Rational x = s.on_sphere(e);
          Valuation v = derivative_norm(f, x);
          res.check(v == Valuation(0L), ps.label + " x=" + format_rational(x) + ": val f'(x) = " + v.to_string());
        }
      }
      res.details[ps.label] = radii;
    }
  });
}

// ---- minimal invariant balls

namespace {

struct RowCase {
  ParameterSet ps;
  std::vector<long> exps;
};

const std::vector<RowCase>& ab2_rows() {
  static const std::vector<RowCase> rows{
      {{"I1 alpha<beta", q(4), q(8), q(-6), 2}, {-3, -4, -5}},
      {{"I1 |a-d|=alpha=beta", q(3), q(4), q(-5), 3}, {-1, -2}},
      {{"I1 |a-d|<alpha=beta, r<|a-d|", q(3), q(1), q(0), 3}, {-2, -3}},
      {{"I1 |a-d|<alpha=beta, r>|a-d|", q(27), q(1), q(0), 3}, {-1, -2}},
      {{"I2 r<alpha, r<|a-d|", q(3), q(27), q(-12), 3}, {-3, -4}},
      {{"I2 r<alpha, r>|a-d|", q(645), q(243), q(-84), 3}, {-5}},
      {{"I2 r>alpha, r>|a-d|", q(645), q(243), q(-84), 3}, {-2, -3}},
      {{"I2 r>alpha, r<|a-d|", q(-75), q(243), q(-84), 3}, {-3}},
      {{"I3", q(1, 3), q(1), q(0), 3}, {-2, -3}},
      {{"I3", q(1, 2), q(8), q(-6), 2}, {-5, -6}},
  };
  return rows;
}

}  // namespace

SuiteResult verify_ab2(const SuiteOptions& opts) {
  std::size_t n = or_default(opts.samples, 50);
  return timed("ab2", [&](SuiteResult& res) {
    std::set<std::string> rows_seen;
    nlohmann::json rows = nlohmann::json::array();
    std::uint64_t k = 0;
    for (const auto& row : ab2_rows()) {
      CanonicalMap f = row.ps.map();
      Sampler s(f.p(), opts.seed + 101 * ++k);
      for (long e : row.exps) {
        LogRadius r = pw(e);
        LogRadius rho = rho_r(f, r);
        std::string formula = rho_r_row(f, r);
        rows_seen.insert(formula.substr(0, formula.find(':')));
        std::size_t constant = 0;
        for (std::size_t i = 0; i < n; ++i) {
          Rational c = s.on_sphere(e);
          LogRadius disp = LogRadius::of(displacement_norm(f, c));
          res.check(disp == rho, row.ps.label + " c=" + format_rational(c) + ": |f(c)-c|=" + rs(disp, f.p()) +
                                     " vs rho=" + rs(rho, f.p()));
          if (i < 5) {
            MinimalBallRecord rec = minimal_invariant_ball(f, c, 4);
            res.check(rec.displacements_constant,
                      row.ps.label + " c=" + format_rational(c) + ": displacements not constant");
            constant += rec.displacements_constant;
          }
        }
        rows.push_back({{"map", f.to_string()}, {"r", rs(r, f.p())}, {"rho", rs(rho, f.p())},
                        {"row", formula}, {"orbits_with_constant_displacement", constant}});
      }
    }
    // Every row of the table; the first one covers both alpha < beta and |a-d| = alpha.
    res.check(rows_seen.size() == 8, "only " + std::to_string(rows_seen.size()) + " of 8 rows covered");
    res.details["rows"] = rows;
  });
}

// ---- pre-pole radii

SuiteResult verify_tpk(const SuiteOptions& opts) {
  (void)opts;
  return timed("tpk", [&](SuiteResult& res) {
    CanonicalMap f(q(1, 3), q(1), q(0), Prime(3));
    NormCase nc = detect_case(f);
    nlohmann::json radii = nlohmann::json::array();
    for (unsigned k = 0; k <= 10; ++k) {
      LogRadius rk = pk_radius(f, k);
      radii.push_back(rs(rk, f.p()));
      StepOutcome out = predict_n(nc, rk, k);
      res.check(out.determined() && *out.radius == nc.alpha,
                "psi^" + std::to_string(k) + "(r_k) != alpha for r_k=" + rs(rk, f.p()));
      if (k > 0) {
        StepOutcome back = predict_step(nc, rk);
        res.check(back.determined() && *back.radius == pk_radius(f, k - 1),
                  "psi(r_" + std::to_string(k) + ") != r_" + std::to_string(k - 1));
      }
    }
    res.check(pk_radius(f, 0) == nc.alpha, "r_0 != alpha");
    res.check(pk_radius(f, 1) == LogRadius::power(q(-1, 2)), "r_1 != 3^(-1/2)");
    res.check(pk_radius(f, 2) == LogRadius::power(q(-3, 4)), "r_2 != 3^(-3/4)");

    // Pre-images of rational poles sit on S_{r_1}(0), outside Q_3.
    CanonicalMap g(q(1, 3), q(2), q(-3), Prime(3));
    LogRadius r1 = pk_radius(g, 1);
    PoleData pd = poles(g);
    nlohmann::json pre = nlohmann::json::array();
    for (const Rational& pole : {pd.exact_poles->first, pd.exact_poles->second}) {
      for (const auto& root : solve_preimage(g, pole)) {
        res.check(root.norm == r1, "pre-image of pole " + format_rational(pole) + " has norm " + rs(root.norm, g.p()));
        pre.push_back({{"pole", format_rational(pole)},
                       {"norm", rs(root.norm, g.p())},
                       {"in_Qp", root.kind != PreimageRoot::Kind::NotInField}});
      }
    }
    res.details["r_k"] = radii;
    res.details["P1"] = pre;
  });
}

// ---- classification

namespace {

struct Expected {
  ParameterSet ps;
  bool unhandled;
  FixedPointKind kind;
  X2Geometry::Kind geometry;
  long radius_exp;
};

const std::vector<Expected>& classification_table() {
  using G = X2Geometry::Kind;
  using K = FixedPointKind;
  static const std::vector<Expected> table{
      {{"C1 |d|<alpha", q(3), q(1), q(0), 3}, false, K::Indifferent, G::SiegelEqualsX1, 0},
      {{"C1 attracting x2", q(3), q(4), q(-5), 3}, false, K::Attractor, G::BasinBall, 0},
      {{"C1 indifferent x2 on S_alpha", q(5), q(2), q(-3), 5}, false, K::Indifferent, G::SiegelDisjointBall, 0},
      {{"C2 repelling x2", q(2), q(1), q(0), 5}, false, K::Repeller, G::RepellingBall, 0},
      {{"C2 indifferent x2 on S_alpha", q(2), q(4), q(-5), 5}, false, K::Indifferent, G::SiegelDisjointBall, 0},
      {{"C2 |x2|<alpha", q(2), q(2), q(-3), 5}, false, K::Indifferent, G::SiegelEqualsX1, 0},
      {{"C2 boundary", q(1), q(2), q(-3), 5}, true, K::Indifferent, G::SiegelEqualsX1, 0},
      {{"C3", q(1, 3), q(1), q(0), 3}, false, K::Attractor, G::BasinComplement, -1},
      {{"C4", q(8), q(8), q(-6), 2}, false, K::Repeller, G::RepellingBall, -1},
      {{"C5", q(4), q(8), q(-6), 2}, false, K::Repeller, G::RepellingBall, -1},
      {{"C6", q(1), q(2), q(-9, 2), 2}, false, K::Repeller, G::RepellingBall, 1},
      {{"C7 |a-d|>alpha", q(3), q(27), q(-12), 3}, false, K::Indifferent, G::SiegelDisjointBall, -1},
      {{"C7 |a-d|<alpha", q(2), q(8), q(-6), 2}, false, K::Indifferent, G::SiegelEqualsX1, -2},
      {{"C7 boundary", q(6), q(8), q(-6), 2}, true, K::Indifferent, G::SiegelEqualsX1, 0},
      {{"C8", q(1, 2), q(8), q(-6), 2}, false, K::Attractor, G::BasinComplement, -4},
  };
  return table;
}

// Points inside SI(x1) keep their norm for 8 steps.
void check_siegel_interior(SuiteResult& res, const CanonicalMap& f, const LogRadius& R, Sampler& s,
                           const std::string& label, std::size_t n) {
  long top = floor_exponent(R);
  if (LogRadius::power(Rational(top)) == R) --top;
  for (std::size_t i = 0; i < n; ++i) {
    long e = top - s.uniform(0, 4);
    Rational x = s.on_sphere(e);
    Rational y = x;
    bool kept = true;
    for (int k = 0; k < 8 && kept; ++k) {
      y = eval(f, y);
      kept = norm(y, f.p()) == norm(x, f.p());
    }
    res.check(kept, label + ": x=" + format_rational(x) + " left its sphere inside SI(x1)");
  }
}

// Spheres beyond SI(x1) are not invariant.
void check_siegel_exterior(SuiteResult& res, nlohmann::json& info, const CanonicalMap& f, const NormCase& nc,
                           const LogRadius& R, Sampler& s, const std::string& label) {
  const Prime& p = f.p();
  InvariantRadiusSet inv = invariant_radii(nc);
  // Spheres whose norm is predicted to move: every point leaves in one step.
  std::size_t spheres = 0;
  for (long e = floor_exponent(R) + 1; spheres < 2 && e < floor_exponent(R) + 12; ++e) {
    LogRadius r = pw(e);
    StepOutcome next = predict_step(nc, r);
    if (inv.contains(r) || !next.determined() || *next.radius == r) continue;
    ++spheres;
    for (int i = 0; i < 10; ++i) {
      Rational x = s.on_sphere(e);
      res.check(norm(eval(f, x), p) != r, label + ": x=" + format_rational(x) + " stayed on S_" + rs(r, p));
    }
  }
  // The bounding sphere: points close to a rational pole or to -b/a leave within two steps.
  if (!R.is_integral_power()) return;
  std::vector<Rational> centers{Rational(-f.b() / f.a())};
  if (auto ep = poles(f).exact_poles) {
    centers.push_back(ep->first);
    centers.push_back(ep->second);
  }
  std::size_t tried = 0, left = 0;
  long eR = R.exponent().get_num().get_si();
  for (const auto& c : centers) {
    if (norm(c, p) != R) continue;
    for (int i = 0; i < 5; ++i) {
      Rational x = c + s.on_sphere(eR - s.uniform(2, 6));
      ++tried;
      try {
        Rational y1 = eval(f, x);
        bool leaves = norm(y1, p) != R;
        if (!leaves) leaves = norm(eval(f, y1), p) != R;
        left += leaves;
      } catch (const DomainError&) {
        ++left;  // reached a pole
      }
    }
  }
  info["boundary_points"] = tried;
  info["boundary_points_leaving"] = left;
  if (tried > 0)
    res.check(left > 0, label + ": no sampled point leaves the bounding sphere S_" + rs(R, p));
  else
    info["boundary_note"] = "no rational pole or zero of ax+b on the bounding sphere";
}

}  // namespace

SuiteResult verify_classify(const SuiteOptions& opts) {
  std::size_t n = or_default(opts.samples, 100);
  return timed("classify", [&](SuiteResult& res) {
    nlohmann::json reports = nlohmann::json::array();
    std::uint64_t idx = 0;
    for (const auto& ex : classification_table()) {
      CanonicalMap f = ex.ps.map();
      const Prime& p = f.p();
      Sampler s(p, opts.seed + 7919 * ++idx);
      nlohmann::json info{{"label", ex.ps.label}, {"map", f.to_string()}};
      if (ex.unhandled) {
        bool threw = false;
        try {
          classify(f);
        } catch (const DomainError& e) {
          threw = e.kind() == ErrorKind::UnhandledBoundary;
        }
        res.check(threw, ex.ps.label + ": expected UnhandledBoundary");
        info["result"] = "UnhandledBoundary";
        reports.push_back(info);
        continue;
      }
      ClassificationReport rep = classify(f);
      res.check(rep.x2_character.kind == ex.kind,
                ex.ps.label + ": x2 is " + std::string(kind_name(rep.x2_character.kind)));
      res.check(rep.x2_geometry.kind == ex.geometry,
                ex.ps.label + ": geometry " + std::string(geometry_name(rep.x2_geometry.kind)));
      res.check(rep.x2_geometry.radius == pw(ex.radius_exp),
                ex.ps.label + ": geometry radius " + rs(rep.x2_geometry.radius, p));
      info["case"] = std::string(case_name(rep.norm_case.id));
      info["x2"] = std::string(kind_name(rep.x2_character.kind));
      info["geometry"] = std::string(geometry_name(rep.x2_geometry.kind));
      info["radius"] = rs(rep.x2_geometry.radius, p);

      const LogRadius& R = rep.siegel_x1_radius;
      check_siegel_interior(res, f, R, s, ex.ps.label, n);
      check_siegel_exterior(res, info, f, rep.norm_case, R, s, ex.ps.label);

      const Rational& x2 = rep.x2;
      const LogRadius& G = rep.x2_geometry.radius;
      if (ex.geometry == X2Geometry::Kind::RepellingBall) {
        long top = floor_exponent(G);
        if (pw(top) == G) --top;
        std::size_t tested = 0;
        for (int i = 0; i < 50; ++i) {
          Rational x = x2 + s.on_sphere(top - s.uniform(0, 5));
          try {
            LogRadius before = norm(Rational(x - x2), p);
            LogRadius after = norm(Rational(eval(f, x) - x2), p);
            res.check(after > before, ex.ps.label + ": x=" + format_rational(x) + " not repelled");
            ++tested;
          } catch (const DomainError&) {
          }
        }
        info["repeller_points"] = tested;
      }
      if (ex.geometry == X2Geometry::Kind::BasinComplement || ex.geometry == X2Geometry::Kind::BasinBall) {
        bool ball = ex.geometry == X2Geometry::Kind::BasinBall;
        LogRadius target = pw(-8);
        std::size_t max_steps = 0;
        for (int i = 0; i < 20; ++i) {
          Rational x = ball ? Rational(x2 + s.on_sphere(floor_exponent(G) - 1 - s.uniform(0, 2)))
                            : s.on_sphere(floor_exponent(G) + 1 + s.uniform(0, 3));
          Rational y = x;
          std::optional<LogRadius> last;
          bool decreasing = true, reached = false;
          std::size_t k = 0;
          try {
            for (; k <= 40; ++k) {
              LogRadius dist = norm(Rational(y - x2), p);
              // Monotone once the orbit is beyond both poles (or from the start inside the ball).
              bool tracked = ball || norm(y, p) > rep.norm_case.beta;
              if (tracked && last && !(dist < *last)) decreasing = false;
              if (tracked) last = dist;
              if (dist <= target) {
                reached = true;
                break;
              }
              y = eval(f, y);
            }
          } catch (const DomainError&) {
            continue;  // a pre-pole lies outside the basin
          }
          max_steps = std::max(max_steps, k);
          res.check(reached, ex.ps.label + ": x=" + format_rational(x) + " did not reach p^-8 of x2 in 40 steps");
          res.check(decreasing, ex.ps.label + ": x=" + format_rational(x) + " distance to x2 not decreasing");
        }
        info["basin_max_steps"] = max_steps;
      }
      reports.push_back(info);
    }

    // Periodic orbits on invariant spheres.
    struct Cycle {
      ParameterSet ps;
      long start;
    };
    nlohmann::json cycles = nlohmann::json::array();
    for (const Cycle& cy : {Cycle{{"2-cycle p=2", q(1), q(-1, 2), q(-1), 2}, 1},
                            Cycle{{"2-cycle p=3", q(22, 5), q(-54, 5), q(1), 3}, 3}}) {
      CanonicalMap f = cy.ps.map();
      const Prime& p = f.p();
      Sampler s(p, opts.seed + 4242);
      auto orbit = find_periodic(f, Rational(cy.start), 6);
      res.check(orbit && orbit->period == 2, cy.ps.label + ": no 2-cycle found");
      if (!orbit) continue;
      res.check(orbit->indifferent, cy.ps.label + ": cycle is not indifferent");
      LogRadius r = norm(Rational(cy.start), p);
      LogRadius rho = rho_r(f, r);
      std::size_t mapped = 0;
      for (long drop = 0; drop < 3; ++drop) {
        long e = floor_exponent(rho) - drop;
        for (std::size_t i = 0; i < orbit->points.size(); ++i) {
          const Rational& yi = orbit->points[i];
          const Rational& yj = orbit->points[(i + 1) % orbit->points.size()];
          for (int t = 0; t < 10; ++t) {
            Rational x = yi + s.on_sphere(e);
            try {
              res.check(norm(Rational(eval(f, x) - yj), p) == pw(e),
                        cy.ps.label + ": S_rho(y_i) not mapped into S_rho(y_i+1) at x=" + format_rational(x));
              ++mapped;
            } catch (const DomainError&) {
            }
          }
        }
      }
      cycles.push_back({{"map", f.to_string()}, {"period", orbit->period}, {"rho_r", rs(rho, p)},
                        {"r", rs(r, p)}, {"ball_points", mapped}});
    }
    res.details["reports"] = reports;
    res.details["cycles"] = cycles;
  });
}

// ---- ergodicity

namespace {

struct ErgCombo {
  CanonicalMap f;
  LogRadius r;
  bool expected_positive;
};

// Maps over Q_2 with rational poles, paired with the radius each erg2
// condition singles out and with the other radii in I nearby.
std::vector<ErgCombo> erg_combinations() {
  std::vector<ErgCombo> out;
  Prime two(2);
  const std::vector<std::pair<long, long>> pole_pairs{{1, 3}, {2, 12}, {4, 2}, {8, 6}, {1, 4}, {3, 8}, {2, 6}};
  const std::vector<Rational> as{q(1, 4), q(1, 2), q(1), q(3), q(2), q(6), q(4), q(12), q(8), q(24), q(16)};
  for (auto [u, w] : pole_pairs) {
    Rational b(u * w), d(-(u + w));
    for (const auto& a : as) {
      if (a == d || b + (a - d) * a == 0) continue;
      CanonicalMap f(a, b, d, two);
      NormCase nc = detect_case(f);
      InvariantRadiusSet inv = invariant_radii(nc);
      LogRadius half = pw(-1);
      LogRadius target = nc.a_norm < nc.beta    ? nc.alpha * half
                         : nc.a_norm == nc.beta ? nc.beta * half
                                                : nc.alpha * nc.beta * half / nc.a_norm;
      if (!inv.contains(target)) continue;
      bool cond = !(nc.a_norm < nc.beta) || norm(d, two) == nc.beta;
      out.push_back({f, target, cond});
      for (const auto& r : sample_invariant_radii(nc, 4))
        if (r != target) out.push_back({f, r, false});
    }
  }
  return out;
}

}  // namespace

SuiteResult verify_erg(const SuiteOptions& opts) {
  std::size_t steps = or_default(opts.samples, 4096);
  return timed("erg", [&](SuiteResult& res) {
    std::size_t positives = 0, negatives = 0;
    nlohmann::json rows = nlohmann::json::array();
    nlohmann::json disagreements = nlohmann::json::array();
    std::uint64_t k = 0;
    for (const auto& combo : erg_combinations()) {
      const CanonicalMap& f = combo.f;
      ErgodicityVerdict v = erg2_verdict(f, combo.r);
      std::string tag = f.to_string() + " r=" + rs(combo.r, f.p());
      res.check(v.ergodic == combo.expected_positive, tag + ": erg2 verdict unexpected");
      res.check(v.sqrt_assumption_holds, tag + ": poles expected in Q_2");
      res.check(v.mod4_agrees, tag + ": erg2 and the mod-4 criterion disagree");
      if (v.mod4_agrees)
        (v.ergodic ? positives : negatives)++;
      EquidistributionReport eq = empirical_equidistribution(f, combo.r, 3, steps, 64, opts.seed + ++k);
      bool covers = eq.unvisited.empty() && eq.within(0.05);
      // The simulation is checked against both verdicts separately, so a
      // failure says which one it contradicts.
      if (v.ergodic)
        res.check(covers, tag + ": erg2-ergodic orbit not equidistributed");
      else
        res.check(!eq.unvisited.empty(), tag + ": erg2-non-ergodic orbit visited every ball");
      bool sim_consistent = v.mod4.ergodic ? covers : !eq.unvisited.empty();
      res.check(sim_consistent, tag + ": simulation contradicts the mod-4 criterion");
      nlohmann::json row{{"map", f.to_string()},
                         {"r", rs(combo.r, f.p())},
                         {"ergodic", v.ergodic},
                         {"condition", v.condition},
                         {"mod4", {v.mod4.signature.A1, v.mod4.signature.A2, v.mod4.signature.B1, v.mod4.signature.B2}},
                         {"mod4_ergodic", v.mod4.ergodic},
                         {"unvisited_balls", eq.unvisited.size()},
                         {"max_relative_deviation", eq.max_relative_deviation}};
      if (!v.mod4_agrees) disagreements.push_back(row);
      rows.push_back(row);
    }
    res.check(positives >= 20, "only " + std::to_string(positives) + " agreeing ergodic combinations");
    res.check(negatives >= 10, "only " + std::to_string(negatives) + " agreeing non-ergodic combinations");
    res.details["agreeing_positives"] = positives;
    res.details["agreeing_negatives"] = negatives;
    res.details["disagreements"] = disagreements;
    res.details["combinations"] = rows;
  });
}

namespace {

// Seeded maps with rational poles u1 p^m1, u2 p^m2 and a = u p^s, p odd.
std::vector<CanonicalMap> random_odd_maps(const Prime& p, std::size_t count, std::uint64_t seed) {
  Sampler s(p, seed);
  std::vector<CanonicalMap> out;
  while (out.size() < count) {
    long pv = static_cast<long>(p.value());
    auto small_unit = [&] {
      long u;
      do u = s.uniform(-12, 12);
      while (u == 0 || u % pv == 0);
      return Rational(u);
    };
    Rational x1 = small_unit() * pow_rational(p, s.uniform(-1, 4));
    Rational x2 = small_unit() * pow_rational(p, s.uniform(-1, 4));
    Rational a = small_unit() * pow_rational(p, s.uniform(-2, 3));
    Rational b = x1 * x2, d = -(x1 + x2);
    if (a == d || b + (a - d) * a == 0) continue;
    out.emplace_back(a, b, d, p);
  }
  return out;
}

}  // namespace

SuiteResult verify_oddp(const SuiteOptions& opts) {
  std::size_t steps = or_default(opts.samples, 4096);
  return timed("oddp", [&](SuiteResult& res) {
    std::vector<CanonicalMap> maps;
    for (const ParameterSet& ps : case_parameter_sets())
      if (ps.p != 2) maps.push_back(ps.map());
    for (const ParameterSet& ps : {ParameterSet{"", q(27), q(1), q(0), 3}, ParameterSet{"", q(645), q(243), q(-84), 3},
                                   ParameterSet{"", q(5), q(2), q(-3), 5}, ParameterSet{"", q(2), q(4), q(-5), 5}})
      maps.push_back(ps.map());
    for (unsigned long pv : {3UL, 5UL})
      for (auto& f : random_odd_maps(Prime(pv), 60, opts.seed + pv)) maps.push_back(f);

    nlohmann::json rows = nlohmann::json::array();
    nlohmann::json over_bound = nlohmann::json::array();
    std::uint64_t k = 0;
    for (const auto& f : maps) {
      const Prime& p = f.p();
      NormCase nc = detect_case(f);
      LogRadius delta = norm(f.x2(), p);
      for (const auto& r : sample_invariant_radii(nc, 3)) {
        if (r == delta) continue;
        std::string tag = f.to_string() + " r=" + rs(r, p);
        LogRadius rho = rho_r(f, r);
        // mu(V_rho(c)) = p rho / ((p - 1) r), computed here without the witness's own guard.
        long kexp = (rho / r).exponent().get_num().get_si();
        Rational mu = pow_rational(p, kexp + 1) / Rational(static_cast<long>(p.value()) - 1);
        Rational bound(1, static_cast<unsigned long>(p.value() - 1));
        bool within = mu > 0 && mu <= bound;
        res.check(within, tag + ": mu(V_rho)=" + format_rational(mu) + " above 1/(p-1)");
        if (within) {
          NonErgodicWitness w = not_ergodic_p_odd(f, r);
          res.check(w.measure == mu, tag + ": witness measure differs");
        }
        EquidistributionReport eq = empirical_equidistribution(f, r, 2, steps, 64, opts.seed + ++k);
        res.check(!eq.unvisited.empty(), tag + ": orbit visited every ball");
        nlohmann::json row{{"map", f.to_string()}, {"r", rs(r, p)},       {"rho", rs(rho, p)},
                           {"row", rho_r_row(f, r)}, {"mu", format_rational(mu)},
                           {"unvisited_balls", eq.unvisited.size()}, {"balls", eq.counts.size()}};
        if (!within) over_bound.push_back(row);
        rows.push_back(row);
      }
    }
    res.details["maps"] = maps.size();
    res.details["over_bound"] = over_bound;
    res.details["samples"] = rows;
  });
}

}  // namespace padicdyn
