// Runs every property suite once and prints one line per criterion.
// Exit status is nonzero when any criterion fails or overruns its budget.

#include <cstdio>
#include <cstdlib>
#include <exception>

#include "skewpbw/suites.hpp"

int main() {
  skewpbw::SuiteConfig config;
  if (const char* env = std::getenv("SKEWPBW_SEED")) config.seed = std::strtoull(env, nullptr, 10);

  std::vector<skewpbw::SuiteCheck> checks;
  try {
    checks = skewpbw::run_suite("all", config);
  } catch (const std::exception& e) {
    std::printf("FAIL  suites did not run: %s\n", e.what());
    return 1;
  }

  int failed = 0;
  double total = 0;
  for (const auto& c : checks) {
    bool ok = c.passed && c.within_budget();
    failed += ok ? 0 : 1;
    total += c.seconds;
    std::printf("%s  criterion %2d  %-20s %8.3f s / %5.0f s  %s\n", ok ? "PASS" : "FAIL", c.criterion, c.name.c_str(),
                c.seconds, c.budget_seconds, c.summary.c_str());
  }
  std::printf("%zu criteria, %d failed, %.3f s total (seed %llu)\n", checks.size(), failed, total,
              static_cast<unsigned long long>(config.seed));
  return failed == 0 && checks.size() == 11 ? 0 : 1;
}
