#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "padicdyn/ergodicity.hpp"

namespace padicdyn {

/// A canonical map used by the verification suites.
struct ParameterSet {
  std::string label;
  Rational a, b, d;
  unsigned long p;

  CanonicalMap map() const { return CanonicalMap(a, b, d, Prime(p)); }
};

/// One map per norm case, C1..C8 in order.
const std::vector<ParameterSet>& case_parameter_sets();

/// Seeded source of p-adic sample points.
class Sampler {
 public:
  Sampler(const Prime& p, std::uint64_t seed) : p_(p), rng_(seed) {}

  /// Random rational with |u|_p = 1.
  Rational unit();
  /// Random rational with |x|_p = p^e.
  Rational on_sphere(long e);
  /// Random rational with arbitrary valuation in [-k, k], zero now and then.
  Rational any(long k);
  long uniform(long lo, long hi);

 private:
  Integer coprime(unsigned long bound);
  Prime p_;
  std::mt19937_64 rng_;
};

/// Up to `count` radii p^e in I with e integral, largest first.
std::vector<LogRadius> sample_invariant_radii(const NormCase& nc, std::size_t count);

struct SuiteResult {
  std::string suite;
  bool passed = true;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::vector<std::string> failure_samples;  // first few failures
  nlohmann::json details = nlohmann::json::object();
  double seconds = 0;

  void check(bool ok, const std::string& what);
};

struct SuiteOptions {
  std::size_t samples = 0;  // 0 picks the suite default
  std::uint64_t seed = 20240611;
};

const std::vector<std::string>& suite_names();

/// Throws InvalidArgument for an unknown suite.
SuiteResult run_suite(std::string_view name, const SuiteOptions& opts);

SuiteResult verify_ultrametric(const SuiteOptions& opts);
SuiteResult verify_lf2_suite(const SuiteOptions& opts);
SuiteResult verify_isometry(const SuiteOptions& opts);
SuiteResult verify_derivative(const SuiteOptions& opts);
SuiteResult verify_ab2(const SuiteOptions& opts);
SuiteResult verify_tpk(const SuiteOptions& opts);
SuiteResult verify_classify(const SuiteOptions& opts);
SuiteResult verify_erg(const SuiteOptions& opts);
SuiteResult verify_oddp(const SuiteOptions& opts);

}  // namespace padicdyn
