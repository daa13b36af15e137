#include "padicdyn/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "padicdyn/errors.hpp"
#include "padicdyn/report.hpp"

namespace padicdyn {

namespace {

struct Config {
  std::string map;
  unsigned long prime = 0;
  bool pretty = false;
  std::string out_file;

  std::string start, radius, ball, y, suite = "all";
  std::size_t steps = 8;
  unsigned depth = 3;
  unsigned precision = kDefaultPrecision;
  std::uint64_t seed = SuiteOptions{}.seed;
  std::size_t samples = 0;
  bool empirical = false;
};

// Bad input noticed after CLI11 accepted the flags.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string rs(const LogRadius& r, const Prime& p) { return r.to_string(p.value()); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::stringstream in(s);
  while (std::getline(in, item, sep)) parts.push_back(item);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

struct LoadedMap {
  CanonicalMap f;
  Json source;
};

LoadedMap load_map(const Config& cfg) {
  if (cfg.map.empty()) throw UsageError("--map is required");
  if (cfg.prime == 0) throw UsageError("--prime is required");
  Prime p(cfg.prime);
  std::vector<Rational> c;
  for (const auto& part : split(cfg.map, ',')) c.push_back(parse_rational(part));
  if (c.size() == 3) return {CanonicalMap(c[0], c[1], c[2], p), {{"form", "canonical"}}};
  if (c.size() == 5) {
    ConjugacyRecord rec = canonicalize(GeneralMap(c[0], c[1], c[2], c[3], c[4], p));
    Json coeffs = Json::array();
    for (const auto& x : c) coeffs.push_back(format_rational(x));
    // Points and values in every report refer to the canonical coordinate t = x - shift.
    return {rec.canonical, {{"form", "general"}, {"coefficients", coeffs}, {"shift", format_rational(rec.shift)}}};
  }
  throw UsageError("--map takes a,b,d or a,b,c,d,e");
}

LogRadius need_radius(const std::string& text, const char* flag, const Prime& p) {
  if (text.empty()) throw UsageError(std::string(flag) + " is required");
  return parse_radius(text, p);
}

Rational need_rational(const std::string& text, const char* flag) {
  if (text.empty()) throw UsageError(std::string(flag) + " is required");
  return parse_rational(text);
}

Json header(const std::string& command, const LoadedMap& m) {
  Json map = to_json(m.f);
  map["source"] = m.source;
  return {{"command", command}, {"map", map}};
}

Json cmd_classify(const Config& cfg, Json& rep) {
  LoadedMap m = load_map(cfg);
  rep = header("classify", m);
  const Prime& p = m.f.p();
  PoleData pd = poles(m.f);
  Json pj{{"alpha", rs(pd.alpha, p)}, {"beta", rs(pd.beta, p)}};
  if (pd.exact_poles)
    pj["exact"] = {format_rational(pd.exact_poles->first), format_rational(pd.exact_poles->second)};
  rep["poles"] = pj;
  rep["classification"] = to_json(classify(m.f), p);
  return rep;
}

Json cmd_orbit(const Config& cfg, Json& rep) {
  LoadedMap m = load_map(cfg);
  rep = header("orbit", m);
  const Prime& p = m.f.p();
  Rational x = need_rational(cfg.start, "--start");
  rep["start"] = format_rational(x);
  rep["steps"] = cfg.steps;
  rep["iterates"] = Json::array();
  auto record = [&](std::size_t k, const Rational& v) {
    rep["iterates"].push_back({{"k", k}, {"value", format_rational(v)}, {"norm", rs(norm(v, p), p)}});
  };
  record(0, x);
  for (std::size_t k = 1; k <= cfg.steps; ++k) {
    try {
      x = eval(m.f, x);
    } catch (const DomainError& e) {
      throw DomainError(e.kind(), e.what(), k - 1);
    }
    record(k, x);
  }
  return rep;
}

Json cmd_norm_orbit(const Config& cfg, Json& rep) {
  LoadedMap m = load_map(cfg);
  rep = header("norm-orbit", m);
  const Prime& p = m.f.p();
  LogRadius r = need_radius(cfg.radius, "--radius", p);
  NormCase nc = detect_case(m.f);
  rep["norm_case"] = to_json(nc, p);
  rep["radius"] = rs(r, p);
  rep["steps"] = cfg.steps;
  rep["trace"] = to_json(predict_trace(nc, r, cfg.steps), nc, p);
  return rep;
}

Json cmd_preimage(const Config& cfg, Json& rep) {
  LoadedMap m = load_map(cfg);
  rep = header("preimage", m);
  Rational y = need_rational(cfg.y, "--y");
  rep["y"] = format_rational(y);
  rep["roots"] = Json::array();
  for (const auto& root : solve_preimage(m.f, y, cfg.precision)) rep["roots"].push_back(to_json(root, m.f.p()));
  return rep;
}

Json cmd_ergodic(const Config& cfg, Json& rep) {
  LoadedMap m = load_map(cfg);
  rep = header("ergodic", m);
  const Prime& p = m.f.p();
  LogRadius r = need_radius(cfg.radius, "--radius", p);
  rep["radius"] = rs(r, p);
  if (p.value() == 2)
    rep["verdict"] = to_json(erg2_verdict(m.f, r));
  else
    rep["verdict"] = to_json(not_ergodic_p_odd(m.f, r), p);
  if (cfg.empirical) {
    std::optional<Rational> start;
    if (!cfg.start.empty()) start = parse_rational(cfg.start);
    EquidistributionReport eq =
        empirical_equidistribution(m.f, r, cfg.depth, cfg.steps, cfg.precision, cfg.seed, start);
    Json ej = to_json(eq);
    ej["seed"] = cfg.seed;
    ej["lines"] = histogram_lines(eq);
    rep["empirical"] = ej;
  }
  return rep;
}

Json cmd_measure(const Config& cfg, Json& rep) {
  if (cfg.prime == 0) throw UsageError("--prime is required");
  Prime p(cfg.prime);
  rep = {{"command", "measure"}};
  LogRadius r = need_radius(cfg.radius, "--radius", p);
  LogRadius ball = need_radius(cfg.ball, "--ball", p);
  rep["prime"] = p.value();
  rep["radius"] = rs(r, p);
  rep["ball"] = rs(ball, p);
  rep["measure"] = format_rational(haar_measure({p, r}, ball));
  return rep;
}

Json cmd_verify(const Config& cfg, Json& rep) {
  rep = {{"command", "verify"}, {"seed", cfg.seed}, {"samples", cfg.samples}};
  std::vector<std::string> names;
  if (cfg.suite == "all")
    names = suite_names();
  else
    names = split(cfg.suite, ',');
  for (const auto& n : names)
    if (std::find(suite_names().begin(), suite_names().end(), n) == suite_names().end())
      throw UsageError("unknown suite '" + n + "'");
  Json suites = Json::array();
  bool all = true;
  for (const auto& n : names) {
    SuiteResult res = run_suite(n, {cfg.samples, cfg.seed});
    all = all && res.passed;
    suites.push_back(to_json(res));
  }
  rep["passed"] = all;
  rep["suites"] = suites;
  return rep;
}

// Flattened "path: value" lines for --pretty.
void flatten(const Json& j, const std::string& path, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else if (j.is_string()) {
    out << path << ": " << j.get<std::string>() << "\n";
  } else {
    out << path << ": " << j.dump() << "\n";
  }
}

void emit(const Json& rep, const Config& cfg, std::ostream& out, std::ostream& err) {
  std::string doc = rep.dump(2) + "\n";
  if (cfg.pretty) {
    Json shown = rep;
    if (shown.contains("empirical")) shown["empirical"].erase("lines");
    flatten(shown, "", out);
    if (rep.contains("empirical"))
      for (const auto& line : rep["empirical"]["lines"]) out << line.get<std::string>() << "\n";
  } else {
    out << doc;
  }
  if (!cfg.out_file.empty()) {
    std::ofstream f(cfg.out_file, std::ios::binary);
    if (!f) err << "cannot write " << cfg.out_file << "\n";
    f << doc;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Exact dynamics of p-adic (2,2)-rational maps with two fixed points", "padicdyn"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub, bool needs_map) {
    if (needs_map) sub->add_option("--map", cfg.map, "a,b,d (canonical) or a,b,c,d,e (general)")->required();
    sub->add_option("--prime", cfg.prime, "the prime p")->required(needs_map);
    sub->add_flag("--pretty", cfg.pretty, "human-readable summary instead of JSON");
    sub->add_option("--out", cfg.out_file, "also write the JSON report to this file");
  };
  using Handler = Json (*)(const Config&, Json&);
  std::vector<std::pair<CLI::App*, Handler>> commands;

  auto* classify_cmd = app.add_subcommand("classify", "fixed points, Siegel disks, basins");
  common(classify_cmd, true);
  commands.emplace_back(classify_cmd, cmd_classify);

  auto* orbit = app.add_subcommand("orbit", "exact iterates and their norms");
  common(orbit, true);
  orbit->add_option("--start", cfg.start, "starting point")->required();
  orbit->add_option("--steps", cfg.steps)->capture_default_str();
  commands.emplace_back(orbit, cmd_orbit);

  auto* norm_orbit = app.add_subcommand("norm-orbit", "predicted norm trajectory of a sphere");
  common(norm_orbit, true);
  norm_orbit->add_option("--radius", cfg.radius, "p^(n/d) or 0")->required();
  norm_orbit->add_option("--steps", cfg.steps)->capture_default_str();
  commands.emplace_back(norm_orbit, cmd_norm_orbit);

  auto* preimage = app.add_subcommand("preimage", "solutions of f(x) = y");
  common(preimage, true);
  preimage->add_option("--y", cfg.y)->required();
  preimage->add_option("--precision", cfg.precision)->capture_default_str();
  commands.emplace_back(preimage, cmd_preimage);

  auto* ergodic = app.add_subcommand("ergodic", "ergodicity on an invariant sphere");
  common(ergodic, true);
  ergodic->add_option("--radius", cfg.radius, "p^(n/d)")->required();
  ergodic->add_flag("--empirical", cfg.empirical, "also bin a simulated orbit");
  ergodic->add_option("--depth", cfg.depth, "bin by unit residue mod p^depth")->capture_default_str();
  ergodic->add_option("--steps", cfg.steps, "orbit length for --empirical (default 4096)");
  ergodic->add_option("--seed", cfg.seed, "picks the start when --start is absent")->capture_default_str();
  ergodic->add_option("--precision", cfg.precision, "p-adic digits kept while iterating")->capture_default_str();
  ergodic->add_option("--start", cfg.start, "orbit start on S_r(0)");
  commands.emplace_back(ergodic, cmd_ergodic);

  auto* measure = app.add_subcommand("measure", "Haar measure of a ball on a sphere");
  common(measure, false);
  measure->add_option("--radius", cfg.radius, "sphere radius")->required();
  measure->add_option("--ball", cfg.ball, "ball radius")->required();
  commands.emplace_back(measure, cmd_measure);

  auto* verify = app.add_subcommand("verify", "run verification suites");
  common(verify, false);
  verify->add_option("--suite", cfg.suite, "suite name, comma list, or all")->capture_default_str();
  verify->add_option("--samples", cfg.samples, "per-suite sample count, 0 for defaults");
  verify->add_option("--seed", cfg.seed)->capture_default_str();
  commands.emplace_back(verify, cmd_verify);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }
  if (ergodic->parsed() && !cfg.empirical) cfg.steps = 0;
  if (ergodic->parsed() && cfg.empirical && ergodic->count("--steps") == 0) cfg.steps = 4096;

  Json rep;
  for (auto& [sub, handler] : commands) {
    if (!sub->parsed()) continue;
    try {
      handler(cfg, rep);
    } catch (const UsageError& e) {
      err << e.what() << "\n";
      return 2;
    } catch (const DomainError& e) {
      if (rep.is_null()) rep = {{"command", sub->get_name()}};
      rep["error"] = error_json(e);
      emit(rep, cfg, out, err);
      err << e.what() << "\n";
      bool usage = e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::NotPrime;
      return usage ? 2 : 1;
    }
    emit(rep, cfg, out, err);
    if (sub == verify && !rep["passed"].get<bool>()) return 1;
    return 0;
  }
  return 2;
}

}  // namespace padicdyn
