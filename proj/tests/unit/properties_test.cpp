#include <gtest/gtest.h>

#include "properties.hpp"

namespace netotc {
namespace {

constexpr int kInstances = 100;

void expect_clean(const testing::SuiteReport& r) {
  EXPECT_EQ(r.instances, kInstances);
  EXPECT_EQ(r.failures, 0) << r.name << ": " << r.first_failure << " (worst " << r.worst << ")";
}

TEST(Properties, CouplingMarginals) { expect_clean(testing::suite_coupling_marginals(kInstances, 101)); }
TEST(Properties, EdgePreservation) { expect_clean(testing::suite_edge_preservation(kInstances, 102)); }
TEST(Properties, LowerBounds) { expect_clean(testing::suite_lower_bounds(kInstances, 103)); }
TEST(Properties, MetricAxioms) { expect_clean(testing::suite_metric(kInstances, 104)); }
TEST(Properties, ScalingInvariance) { expect_clean(testing::suite_scaling(kInstances, 105)); }
TEST(Properties, StationarityUnrolling) { expect_clean(testing::suite_multistep(kInstances, 106)); }
TEST(Properties, FactorPushforward) { expect_clean(testing::suite_factor_pushforward(kInstances, 107)); }
TEST(Properties, RelativeIndependence) { expect_clean(testing::suite_relative_independence(kInstances, 108)); }
TEST(Properties, TwoFactorPushforward) { expect_clean(testing::suite_two_factor(kInstances, 109)); }

}  // namespace
}  // namespace netotc
