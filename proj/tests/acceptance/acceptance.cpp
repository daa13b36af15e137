// One line per acceptance criterion. Exits non-zero when any criterion fails.
#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "padicdyn/verify.hpp"

namespace {

struct Criterion {
  int id;
  const char* suite;
  double limit_seconds;  // 0 means no limit
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "ultrametric", 5},  {2, "lf2", 30},      {3, "isometry", 0},
      {4, "derivative", 0},   {5, "ab2", 0},       {6, "tpk", 0},
      {7, "classify", 30},    {8, "erg", 60},      {9, "oddp", 0},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    padicdyn::SuiteResult r = padicdyn::run_suite(c.suite, {});
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = c.limit_seconds == 0 || secs < c.limit_seconds;
    bool ok = r.passed && in_time;
    failed += !ok;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << "criterion " << c.id << " (" << c.suite << "): " << (ok ? "PASS" : "FAIL") << "  checks="
              << r.checks << " failures=" << r.failures << " time=" << timing;
    if (!in_time) std::cout << " over the " << c.limit_seconds << "s limit";
    std::cout << '\n';
    for (const auto& f : r.failure_samples) std::cout << "    " << f << '\n';
  }
  std::cout << (failed ? std::to_string(failed) + " of 9 criteria failed" : std::string("all 9 criteria passed")) << '\n';
  return failed ? 1 : 0;
}
