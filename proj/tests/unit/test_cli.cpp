#include <doctest.h>

#include <json.hpp>

#include <sstream>

#include "padicdyn/cli.hpp"
#include "padicdyn/rational.hpp"
#include "padicdyn/valuation.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = padicdyn::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Every string that looks like a radius or a rational re-parses to itself.
void check_round_trip(const nlohmann::json& j, unsigned long p) {
  if (j.is_object() || j.is_array()) {
    for (const auto& v : j) check_round_trip(v, p);
    return;
  }
  if (!j.is_string()) return;
  const std::string s = j.get<std::string>();
  if (s.rfind(std::to_string(p) + "^(", 0) == 0) {
    CHECK(padicdyn::parse_radius(s, p).to_string(p) == s);
  } else if (!s.empty() && s.find_first_not_of("-0123456789/") == std::string::npos && s != "-" && s != "/") {
    CHECK(padicdyn::format_rational(padicdyn::parse_rational(s)) == s);
  }
}

}  // namespace

TEST_CASE("classify command") {
  Run r = run({"classify", "--map", "3,1,0", "--prime", "3"});
  REQUIRE(r.code == 0);
  auto j = r.json();
  CHECK(j["classification"]["norm_case"]["case"] == "C1");
  CHECK(j["classification"]["siegel_x1"]["radius"] == "3^(0)");
  CHECK(j["classification"]["x2"]["kind"] == "Indifferent");
  CHECK(j["classification"]["x2_geometry"]["kind"] == "SiegelEqualsX1");
  check_round_trip(j, 3);
}

TEST_CASE("general maps are canonicalized") {
  Run r = run({"classify", "--map", "4,-7,4,-2,2", "--prime", "3"});
  REQUIRE(r.code == 0);
  auto j = r.json();
  CHECK(j["map"]["source"]["shift"] == "1");
  CHECK(j["map"]["a"] == "3");
  CHECK(j["map"]["b"] == "1");
  CHECK(j["map"]["d"] == "0");
}

TEST_CASE("orbit command") {
  Run r = run({"orbit", "--map", "3,1,0", "--prime", "3", "--start", "0", "--steps", "3"});
  REQUIRE(r.code == 0);
  auto j = r.json();
  REQUIRE(j["iterates"].size() == 4);
  for (const auto& it : j["iterates"]) {
    CHECK(it["value"] == "0");
    CHECK(it["norm"] == "0");
  }
  Run pole = run({"orbit", "--map", "1,27,-12", "--prime", "3", "--start", "3", "--steps", "2"});
  CHECK(pole.code == 1);
  CHECK(pole.json()["error"]["name"] == "PoleHit");
  CHECK(pole.json()["error"]["step"] == 0);
}

TEST_CASE("norm-orbit command") {
  Run r = run({"norm-orbit", "--map", "1/3,1,0", "--prime", "3", "--radius", "3^(-1/2)", "--steps", "4"});
  REQUIRE(r.code == 0);
  auto j = r.json();
  CHECK(j["trace"]["radii"] == nlohmann::json{"3^(-1/2)", "3^(0)"});
  CHECK(j["trace"]["marker"]["name"] == "C3:alpha_prime");
  CHECK(j["trace"]["limit"] == "ConvergesTo 3^(1)");
  check_round_trip(j, 3);
}

TEST_CASE("preimage command") {
  Run r = run({"preimage", "--map", "3,1,0", "--prime", "3", "--y", "0"});
  REQUIRE(r.code == 0);
  CHECK(r.json()["roots"].size() == 2);
}

TEST_CASE("ergodic command") {
  Run r = run({"ergodic", "--map", "4,8,-6", "--prime", "2", "--radius", "2^(-3)"});
  REQUIRE(r.code == 0);
  auto j = r.json();
  CHECK(j["verdict"]["ergodic"] == true);
  CHECK(j["verdict"]["condition"] == 1);
  Run e = run({"ergodic", "--map", "4,8,-6", "--prime", "2", "--radius", "2^(-3)", "--empirical", "--seed", "3"});
  REQUIRE(e.code == 0);
  auto ej = e.json()["empirical"];
  CHECK(ej["steps"] == 4096);
  CHECK(ej["unvisited"].empty());
  CHECK(ej["lines"].size() == 4);
  CHECK(ej["lines"][0].get<std::string>().rfind("ball=1 count=", 0) == 0);
  Run odd = run({"ergodic", "--map", "3,1,0", "--prime", "3", "--radius", "3^(-2)"});
  REQUIRE(odd.code == 0);
  CHECK(odd.json()["verdict"]["measure"] == "1/18");
}

TEST_CASE("measure command") {
  Run r = run({"measure", "--prime", "3", "--radius", "3^(0)", "--ball", "3^(-1)"});
  REQUIRE(r.code == 0);
  CHECK(r.json()["measure"] == "1/2");
  Run big = run({"measure", "--prime", "3", "--radius", "3^(0)", "--ball", "3^(0)"});
  CHECK(big.code == 1);
  CHECK(big.json()["error"]["name"] == "BallExceedsSphere");
}

TEST_CASE("verify command") {
  Run r = run({"verify", "--suite", "tpk"});
  REQUIRE(r.code == 0);
  auto j = r.json();
  CHECK(j["passed"] == true);
  CHECK(j["suites"][0]["suite"] == "tpk");
  CHECK(run({"verify", "--suite", "nope"}).code == 2);
}

TEST_CASE("domain errors exit 1 with the error name") {
  Run r = run({"classify", "--map", "1,2,-3", "--prime", "5"});
  CHECK(r.code == 1);
  CHECK(r.json()["error"]["name"] == "UnhandledBoundary");
  Run w = run({"norm-orbit", "--map", "3,1,0", "--prime", "3", "--radius", "3^(0)", "--steps", "1"});
  CHECK(w.code == 0);
  Run wc = run({"ergodic", "--map", "3,1,0", "--prime", "3", "--radius", "3^(-1)"});
  CHECK(wc.code == 1);
  CHECK(wc.json()["error"]["name"] == "ExceptionalRadius");
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"classify", "--prime", "3"}).code == 2);
  CHECK(run({"classify", "--map", "3,1", "--prime", "3"}).code == 2);
  CHECK(run({"classify", "--map", "3,x,0", "--prime", "3"}).code == 2);
  CHECK(run({"classify", "--map", "3,1,0", "--prime", "4"}).code == 2);
  CHECK(run({"norm-orbit", "--map", "3,1,0", "--prime", "3", "--radius", "5^(1)"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"orbit", "--map", "3,1,0", "--prime", "3", "--start", "1", "--steps", "-1"}).code == 2);
}

TEST_CASE("reports are deterministic") {
  std::vector<std::string> args{"ergodic", "--map", "1/2,8,-6", "--prime", "2", "--radius", "2^(-5)",
                                "--empirical", "--steps", "1000", "--seed", "77"};
  CHECK(run(args).out == run(args).out);
  std::vector<std::string> v{"verify", "--suite", "lf2,ab2", "--samples", "20", "--seed", "4"};
  CHECK(run(v).out == run(v).out);
}

TEST_CASE("pretty output") {
  Run r = run({"classify", "--map", "3,1,0", "--prime", "3", "--pretty"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("classification.norm_case.case: C1") != std::string::npos);
}
