#pragma once

// Property suites over the whole library. Each check corresponds to one
// acceptance criterion and carries its own time budget; the CLI and the
// acceptance runner both print these.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "skewpbw/random.hpp"

namespace skewpbw {

struct SuiteConfig {
  std::uint64_t seed = kDefaultSeed;
  /// Random triples per algebra in the associativity check.
  std::size_t trials = 200;
  /// JSON fixtures for the F_5[t] reduction check.
  std::string kronecker_fixtures;
};

struct SuiteCheck {
  std::string name;
  int criterion = 0;
  std::string suite;
  bool passed = false;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::string summary;
  double seconds = 0;
  double budget_seconds = 0;
  nlohmann::ordered_json data;  // certificates, rates, per-ring detail

  bool within_budget() const noexcept { return seconds < budget_seconds; }
};

/// "bound", "pbw", "lattice", "kronecker", "matrix" or "all".
std::vector<SuiteCheck> run_suite(std::string_view name, const SuiteConfig& config);

const std::vector<std::string>& suite_names();

/// The six finite rings the lattice suites run over.
const std::vector<std::string>& lattice_test_rings();

}  // namespace skewpbw
