#include <doctest.h>

#include <set>

#include "skewpbw/errors.hpp"
#include "skewpbw/suites.hpp"

using namespace skewpbw;

TEST_CASE("every suite passes with the default seed") {
  SuiteConfig config;
  std::set<int> criteria;
  for (const auto& name : suite_names()) {
    if (name == "all") continue;
    for (const auto& check : run_suite(name, config)) {
      CHECK_MESSAGE(check.passed, check.name << ": " << check.summary);
      CHECK(check.suite == name);
      CHECK(check.failures == 0);
      CHECK(check.checks > 0);
      CHECK(check.within_budget());
      criteria.insert(check.criterion);
    }
  }
  CHECK(criteria.size() == 11);
  CHECK(*criteria.begin() == 1);
  CHECK(*criteria.rbegin() == 11);
}

TEST_CASE("suite output is deterministic for a seed") {
  SuiteConfig config;
  config.seed = 12345;
  config.trials = 20;
  for (const char* name : {"pbw", "kronecker", "matrix"}) {
    auto first = run_suite(name, config);
    auto second = run_suite(name, config);
    REQUIRE(first.size() == second.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
      CHECK(first[i].summary == second[i].summary);
      CHECK(first[i].data == second[i].data);
      CHECK(first[i].passed);
    }
  }
}

TEST_CASE("suite configuration") {
  CHECK_THROWS_AS(run_suite("nothing", {}), BadParams);
  CHECK(lattice_test_rings().size() == 6);

  SuiteConfig missing;
  missing.kronecker_fixtures = "/nonexistent/fixtures.json";
  bool reported = false;
  for (const auto& check : run_suite("kronecker", missing)) {
    if (check.criterion == 9) {
      reported = true;
      CHECK_FALSE(check.passed);
    }
  }
  CHECK(reported);
}
