#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace netotc::testing {

/// Outcome of one randomized property suite.
struct SuiteReport {
  std::string name;
  int instances = 0;
  int failures = 0;
  /// Largest observed violation, in the suite's own units.
  double worst = 0.0;
  std::string first_failure;

  bool passed() const { return failures == 0 && instances > 0; }
};

SuiteReport suite_coupling_marginals(int instances, std::uint64_t seed);
SuiteReport suite_edge_preservation(int instances, std::uint64_t seed);
SuiteReport suite_lower_bounds(int instances, std::uint64_t seed);
SuiteReport suite_metric(int instances, std::uint64_t seed);
SuiteReport suite_scaling(int instances, std::uint64_t seed);
SuiteReport suite_multistep(int instances, std::uint64_t seed);
SuiteReport suite_factor_pushforward(int instances, std::uint64_t seed);
SuiteReport suite_relative_independence(int instances, std::uint64_t seed);
SuiteReport suite_two_factor(int instances, std::uint64_t seed);

std::vector<SuiteReport> run_property_suites(int instances, std::uint64_t seed);

}  // namespace netotc::testing
