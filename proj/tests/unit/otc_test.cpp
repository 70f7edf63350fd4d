#include <gtest/gtest.h>

#include <cmath>

#include <netotc/otc.hpp>

#include "error_code.hpp"
#include "instances.hpp"
#include "oracles.hpp"

namespace netotc {
namespace {

using testing::code_of;
using testing::Rng;

Network two_cycle() {
  const std::vector<WeightedEdge> e{{0, 1, 1.0}, {1, 0, 1.0}};
  return build_network(2, e, true);
}

Network single_loop(double w) {
  const std::vector<WeightedEdge> e{{0, 0, w}};
  return build_network(1, e, true);
}

TEST(ExactOtc, IdenticalTwoCyclesCostNothing) {
  const OtcSolution s = solve_exact_otc(two_cycle(), two_cycle(), cost_zero_one_identity(2));
  EXPECT_NEAR(s.rho, 0.0, 1e-15);
  EXPECT_EQ(s.diagnostics.solver, SolverTag::Exact);
  EXPECT_NEAR(solve_lp_oracle(two_cycle(), two_cycle(), cost_zero_one_identity(2)).rho, 0.0, 1e-12);
}

TEST(ExactOtc, SelfComparisonIsZero) {
  Rng rng(61);
  for (int t = 0; t < 20; ++t) {
    const Network g = testing::random_undirected(rng, 3 + t % 4);
    const OtcSolution s = solve_exact_otc(g, g, cost_zero_one_identity(g.size()));
    EXPECT_NEAR(s.rho, 0.0, 1e-12);
    EXPECT_NEAR(s.vertex_alignment.trace(), 1.0, 1e-12);
  }
}

TEST(ExactOtc, SingleStatePair) {
  const OtcSolution s = solve_exact_otc(single_loop(2.0), single_loop(5.0),
                                        CostMatrix(Eigen::MatrixXd::Constant(1, 1, 0.75)));
  EXPECT_EQ(s.rho, 0.75);
  EXPECT_EQ(s.vertex_alignment(0, 0), 1.0);
}

TEST(ExactOtc, CircleNetworks) {
  const testing::CircleNetworks c = testing::circle_networks();
  const OtcSolution s21 = solve_exact_otc(c.g2, c.g1, cost_embedding(c.pos2, c.pos1, true));
  const OtcSolution s23 = solve_exact_otc(c.g2, c.g3, cost_embedding(c.pos2, c.pos3, true));
  EXPECT_NEAR(s21.rho, 0.5714, 5e-4);
  EXPECT_NEAR(s23.rho, 0.4464, 5e-4);
  EXPECT_NEAR(s21.rho / s23.rho, 1.28, 0.01);
}

TEST(MarginalOt, CircleNetworks) {
  const testing::CircleNetworks c = testing::circle_networks();
  const double ot21 = marginal_ot_baseline(c.g2, c.g1, cost_embedding(c.pos2, c.pos1, true)).value;
  const double ot23 = marginal_ot_baseline(c.g2, c.g3, cost_embedding(c.pos2, c.pos3, true)).value;
  EXPECT_NEAR(ot23, 0.4464, 5e-4);
  // Path degrees 1,2,...,2,1 against the uniform octagon law: 12/56 of the mass
  // moves one step of squared chord 2 - 2 cos 45deg.
  EXPECT_NEAR(ot21, 12.0 / 56.0 * (2.0 - std::sqrt(2.0)), 1e-12);
}

TEST(ExactOtc, MatchesLpOracle) {
  Rng rng(62);
  for (int t = 0; t < 200; ++t) {
    const Index a = 2 + rng() % 3, b = 2 + rng() % 3;
    const Network g1 = testing::random_directed(rng, a), g2 = testing::random_directed(rng, b);
    const CostMatrix c = testing::random_cost(rng, a, b);
    const OtcSolution exact = solve_exact_otc(g1, g2, c);
    const OtcSolution lp = solve_lp_oracle(g1, g2, c);
    EXPECT_NEAR(exact.rho, lp.rho, 1e-7) << "instance " << t;
    EXPECT_EQ(lp.diagnostics.solver, SolverTag::LpOracle);
    const CouplingCheck chk =
        check_transition_coupling(lp.coupling, transition_kernel(g1), transition_kernel(g2));
    EXPECT_LE(chk.marginal_violation, 1e-9);
    EXPECT_LE(chk.stationarity_residual, 1e-8);
    EXPECT_GE(lp.rho, marginal_ot_baseline(g1, g2, c).value - 1e-9);
  }
}

TEST(ExactOtc, ObjectiveNeverIncreases) {
  Rng rng(63);
  for (int t = 0; t < 50; ++t) {
    const Network g1 = testing::random_directed(rng, 4), g2 = testing::random_undirected(rng, 5);
    const OtcSolution s = solve_exact_otc(g1, g2, testing::random_cost(rng, 4, 5));
    const auto& h = s.diagnostics.objective_history;
    ASSERT_EQ(static_cast<int>(h.size()), s.diagnostics.iterations);
    for (std::size_t i = 1; i < h.size(); ++i) EXPECT_LE(h[i], h[i - 1] + 1e-12);
    EXPECT_NEAR(h.back(), s.rho, 1e-12);
    EXPECT_LE(s.diagnostics.evaluation_residual, 1e-10);
  }
}

TEST(ExactOtc, IterationCapIsEnforced) {
  const testing::CircleNetworks c = testing::circle_networks();
  ExactOptions opts;
  opts.iteration_cap = 1;
  EXPECT_EQ(code_of([&] {
              solve_exact_otc(c.g2, c.g1, cost_embedding(c.pos2, c.pos1, true), opts);
            }),
            ErrorCode::IterationCapExceeded);
}

TEST(ExactOtc, RejectsBadInputs) {
  const std::vector<WeightedEdge> e{{0, 1, 1.0}, {1, 1, 1.0}};
  const Network open = build_network(2, e, true);
  EXPECT_EQ(code_of([&] { solve_exact_otc(open, two_cycle(), cost_zero_one_identity(2)); }),
            ErrorCode::NotStronglyConnected);
  EXPECT_EQ(code_of([&] { solve_exact_otc(two_cycle(), two_cycle(), cost_zero_one_identity(3)); }),
            ErrorCode::DimensionMismatch);
  std::vector<WeightedEdge> ring;
  for (Index i = 0; i < 9; ++i) ring.push_back({i, (i + 1) % 9, 1.0});
  const Network nine = build_network(9, ring, false);
  const Network eight = testing::circle_networks().g1;
  EXPECT_EQ(code_of([&] {
              solve_lp_oracle(nine, eight, CostMatrix(Eigen::MatrixXd::Zero(9, 8)));
            }),
            ErrorCode::InstanceTooLarge);
}

TEST(IndependentCoupling, SingleStatesAndMarginals) {
  const TransitionCoupling one =
      independent_coupling(transition_kernel(single_loop(1.0)), transition_kernel(single_loop(3.0)));
  EXPECT_EQ(Eigen::MatrixXd(one.kernel), Eigen::MatrixXd::Ones(1, 1));
  EXPECT_EQ(one.law, Eigen::VectorXd::Ones(1));

  Rng rng(64);
  for (int t = 0; t < 30; ++t) {
    const Network g1 = testing::random_directed(rng, 3), g2 = testing::random_undirected(rng, 4);
    const MarkovKernel p = transition_kernel(g1), q = transition_kernel(g2);
    const TransitionCoupling r = independent_coupling(p, q);
    const CouplingCheck chk = check_transition_coupling(r, p, q);
    EXPECT_LE(chk.marginal_violation, 1e-15);
    EXPECT_LE(chk.stationarity_residual, 1e-12);
    const CostMatrix c = testing::random_cost(rng, 3, 4);
    EXPECT_GE(r.law.dot(oracle::state_cost(c)), solve_exact_otc(g1, g2, c).rho - 1e-12);
  }
}

TEST(OneStepBaseline, FeasibleAndNeverBetterThanExact) {
  Rng rng(65);
  bool found_gap = false;
  for (int t = 0; t < 200; ++t) {
    const Network g1 = testing::random_undirected(rng, 4), g2 = testing::random_undirected(rng, 4);
    const CostMatrix c = testing::random_cost(rng, 4, 4);
    const OtcSolution one = one_step_otc_baseline(g1, g2, c);
    const double exact = solve_exact_otc(g1, g2, c).rho;
    EXPECT_GE(one.rho, exact - 1e-12);
    found_gap = found_gap || one.rho > exact + 1e-6;
    EXPECT_LE(check_transition_coupling(one.coupling, transition_kernel(g1), transition_kernel(g2))
                  .marginal_violation,
              1e-12);
  }
  EXPECT_TRUE(found_gap);
}

TEST(MultistepCost, EqualsRhoAndTheSimulatedAverage) {
  Rng rng(66);
  const Network g1 = testing::random_aperiodic(rng, 4), g2 = testing::random_aperiodic(rng, 3);
  const CostMatrix c = testing::random_cost(rng, 4, 3);
  const OtcSolution s = solve_entropic_otc(g1, g2, c);
  EXPECT_NEAR(multistep_average_cost(s, 1), s.rho, 1e-12);
  EXPECT_NEAR(multistep_average_cost(s, 5), s.rho, 1e-9);
  const double sim = oracle::simulated_average_cost(Eigen::MatrixXd(s.coupling.kernel), s.coupling.law,
                                                    oracle::state_cost(c), 1'000'000, 67);
  EXPECT_NEAR(sim, s.rho, 0.02 * s.rho);
}

TEST(EntropicOtc, IdenticalNetworksAreNearlyFree) {
  Rng rng(68);
  for (int t = 0; t < 20; ++t) {
    const Network g = testing::random_undirected(rng, 3 + t % 4);
    EXPECT_LE(solve_entropic_otc(g, g, cost_zero_one_identity(g.size())).rho, 0.05);
  }
}

TEST(EntropicOtc, CloseToExactOnSmallPairs) {
  Rng rng(69);
  for (int t = 0; t < 40; ++t) {
    const Network g1 = testing::random_undirected(rng, 6), g2 = testing::random_undirected(rng, 2 + t % 5);
    const CostMatrix c = cost_embedding(testing::random_points(rng, 6, 2),
                                        testing::random_points(rng, g2.size(), 2), true);
    const double exact = solve_exact_otc(g1, g2, c).rho;
    const OtcSolution approx = solve_entropic_otc(g1, g2, c);
    EXPECT_GE(approx.rho, exact - 1e-9);
    EXPECT_LE(approx.rho, 1.05 * exact) << "instance " << t;
    EXPECT_EQ(approx.diagnostics.iterations, 10);
    EXPECT_EQ(approx.diagnostics.solver, SolverTag::Entropic);
  }
}

TEST(EntropicOtc, AperiodicInputsGiveOneRecurrentClass) {
  Rng rng(70);
  for (int t = 0; t < 30; ++t) {
    const Network g1 = testing::random_aperiodic(rng, 4), g2 = testing::random_aperiodic(rng, 5);
    const OtcSolution s = solve_entropic_otc(g1, g2, testing::random_cost(rng, 4, 5));
    EXPECT_EQ(s.diagnostics.recurrent_classes, 1u);
  }
}

TEST(EntropicOtc, RejectsBadParameters) {
  EntropicOptions opts;
  opts.horizon = 0;
  EXPECT_EQ(code_of([&] {
              solve_entropic_otc(two_cycle(), two_cycle(), cost_zero_one_identity(2), opts);
            }),
            ErrorCode::InvalidArgument);
}

TEST(HardAlignment, ArgmaxWithLowestIndexTies) {
  EXPECT_EQ(hard_alignment(Eigen::MatrixXd::Identity(3, 3)), (std::vector<Index>{0, 1, 2}));
  EXPECT_EQ(hard_alignment((Eigen::MatrixXd(1, 3) << 0.2, 0.5, 0.3).finished()),
            std::vector<Index>{1});
  EXPECT_EQ(hard_alignment((Eigen::MatrixXd(1, 2) << 0.5, 0.5).finished()), std::vector<Index>{0});
}

TEST(LowerBounds, SelfComparisonAndPreconditions) {
  const Network g = testing::circle_networks().g1;
  const OtcSolution s = solve_exact_otc(g, g, cost_zero_one_identity(8));
  const LowerBoundReport r = verify_lower_bounds(g, g, s);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.degree_bound, 0.0);
  EXPECT_EQ(r.weight_bound, 0.0);
  EXPECT_NEAR(r.marginal_ot_bound, 0.0, 1e-15);

  const Network path = testing::circle_networks().g2;
  const OtcSolution sp = solve_exact_otc(g, path, cost_zero_one_identity(8));
  EXPECT_EQ(code_of([&] { verify_lower_bounds(g, path, sp); }), ErrorCode::PreconditionViolated);
  const OtcSolution se = solve_exact_otc(g, g, CostMatrix(Eigen::MatrixXd::Zero(8, 8)));
  EXPECT_EQ(code_of([&] { verify_lower_bounds(g, g, se); }), ErrorCode::PreconditionViolated);
}

TEST(LowerBounds, ReweightedEdgeWithRebalancedDegrees) {
  // Doubling one octagon edge and dropping the opposite one keeps D.
  const Network g = testing::circle_networks().g1;
  Eigen::MatrixXd w = g.weights();
  w(0, 1) = w(1, 0) = 2.0;
  w(4, 5) = w(5, 4) = 0.0;
  const Network h(w, false);
  ASSERT_DOUBLE_EQ(h.weights().sum(), g.weights().sum());
  const OtcSolution s = solve_exact_otc(g, h, cost_zero_one_identity(8));
  const LowerBoundReport r = verify_lower_bounds(g, h, s);
  EXPECT_TRUE(r.holds);
  EXPECT_GT(r.weight_bound, 0.0);
}

TEST(SolverTag, Names) {
  EXPECT_EQ(to_string(SolverTag::Exact), "exact");
  EXPECT_EQ(to_string(SolverTag::Entropic), "entropic");
  EXPECT_EQ(to_string(SolverTag::LpOracle), "lp_oracle");
  EXPECT_EQ(to_string(SolverTag::OneStepBaseline), "one_step_baseline");
}

}  // namespace
}  // namespace netotc
