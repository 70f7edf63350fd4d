#include <gtest/gtest.h>

#include <netotc/error.hpp>
#include <netotc/network.hpp>

#include "error_code.hpp"
#include "instances.hpp"
#include "oracles.hpp"

namespace netotc {
namespace {

using testing::code_of;
using testing::Rng;

Network triangle() {
  const std::vector<WeightedEdge> e{{0, 1, 1}, {1, 2, 1}, {2, 0, 1}};
  return build_network(3, e, false);
}

Network directed_cycle(Index n) {
  std::vector<WeightedEdge> e;
  for (Index i = 0; i < n; ++i) e.push_back({i, (i + 1) % n, 1.0});
  return build_network(n, e, true);
}

TEST(BuildNetwork, UndirectedTriangleHasSixUnitEdges) {
  const Network t = triangle();
  EXPECT_EQ(t.edge_count(), 6u);
  for (const WeightedEdge& e : t.edges()) EXPECT_EQ(e.weight, 1.0);
  EXPECT_EQ(t.weights(), t.weights().transpose());
}

TEST(BuildNetwork, CollapsedColumnsWithLoopsIsValid) {
  const Network g2 = testing::column_collapse().g2;
  EXPECT_EQ(g2.size(), 3u);
  EXPECT_EQ(g2.weight(0, 0), 2.0);
  EXPECT_EQ(g2.weight(1, 0), 2.0);
  EXPECT_EQ(g2.edge_count(), 6u);
}

TEST(BuildNetwork, RejectsBadInput) {
  const std::vector<WeightedEdge> zero{{0, 1, 0.0}};
  EXPECT_EQ(code_of([&] { build_network(2, zero, true); }), ErrorCode::NonPositiveWeight);
  const std::vector<WeightedEdge> out{{0, 2, 1.0}};
  EXPECT_EQ(code_of([&] { build_network(2, out, true); }), ErrorCode::IndexOutOfRange);
  const std::vector<WeightedEdge> clash{{0, 1, 1.0}, {1, 0, 2.0}};
  EXPECT_EQ(code_of([&] { build_network(2, clash, false); }), ErrorCode::AsymmetricUndirected);
}

TEST(TransitionKernel, RowsFollowWeights) {
  const MarkovKernel g2 = transition_kernel(testing::column_collapse().g2);
  EXPECT_DOUBLE_EQ(g2(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(g2(0, 1), 0.5);
  const MarkovKernel t = transition_kernel(triangle());
  EXPECT_DOUBLE_EQ(t(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(t(0, 1), 0.5);
  const std::vector<WeightedEdge> star{{0, 1, 1}, {0, 2, 1}, {0, 3, 1}};
  const MarkovKernel s = transition_kernel(build_network(4, star, false));
  for (Index v = 1; v < 4; ++v) EXPECT_DOUBLE_EQ(s(0, v), 1.0 / 3.0);
}

TEST(TransitionKernel, ZeroOutDegreeIsRejected) {
  const std::vector<WeightedEdge> e{{0, 1, 1.0}};
  const Network net = build_network(2, e, true);
  EXPECT_EQ(code_of([&] { transition_kernel(net); }), ErrorCode::ZeroOutDegree);
}

TEST(TransitionKernel, RowsSumToOneOnSupport) {
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const Network net = testing::random_directed(rng, 2 + i % 6);
    const MarkovKernel k = transition_kernel(net);
    for (Index u = 0; u < net.size(); ++u) {
      EXPECT_NEAR(k.matrix.row(u).sum(), 1.0, 1e-12);
      for (Index v = 0; v < net.size(); ++v) EXPECT_EQ(k(u, v) > 0.0, net.has_edge(u, v));
    }
  }
}

TEST(StrongConnectivity, SmallCases) {
  EXPECT_TRUE(is_strongly_connected(directed_cycle(2)));
  const std::vector<WeightedEdge> e{{0, 1, 1.0}};
  EXPECT_FALSE(is_strongly_connected(build_network(2, e, true)));
}

TEST(StrongConnectivity, AgreesWithTransitiveClosure) {
  Rng rng(12);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const Index n = 1 + i % 8;
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b)
        if (unit(rng) < 0.3) w(a, b) = 1.0;
    const Network net(w, true);
    EXPECT_EQ(is_strongly_connected(net), oracle::strongly_connected(net));
  }
}

TEST(StationaryDistribution, DirectedCycleIsUniform) {
  const Eigen::VectorXd p = stationary_distribution(transition_kernel(directed_cycle(5))).probs;
  for (Index i = 0; i < 5; ++i) EXPECT_NEAR(p(i), 0.2, 1e-12);
}

TEST(StationaryDistribution, UndirectedIsProportionalToDegree) {
  Rng rng(13);
  for (int i = 0; i < 50; ++i) {
    const Network net = testing::random_undirected(rng, 2 + i % 7, 0.6, true);
    const Eigen::VectorXd d = degree_vector(net, DegreeMode::Undirected);
    const Eigen::VectorXd p = stationary_distribution(transition_kernel(net)).probs;
    EXPECT_LE((p - d / d.sum()).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(StationaryDistribution, MatchesEigensolver) {
  Rng rng(14);
  for (int i = 0; i < 50; ++i) {
    const MarkovKernel k = transition_kernel(testing::random_directed(rng, 5));
    const Eigen::VectorXd p = stationary_distribution(k).probs;
    EXPECT_LE((p - oracle::stationary_by_eigensolver(k.matrix)).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LE((p.transpose() * k.matrix - p.transpose()).cwiseAbs().sum(), 1e-10);
  }
}

TEST(StationaryDistribution, LargeChainTakesTheIterativePath) {
  const Eigen::VectorXd p = stationary_distribution(transition_kernel(directed_cycle(600))).probs;
  EXPECT_NEAR(p.minCoeff(), 1.0 / 600.0, 1e-10);
  EXPECT_NEAR(p.maxCoeff(), 1.0 / 600.0, 1e-10);
}

TEST(StationaryDistribution, ReducibleKernelIsRejected) {
  MarkovKernel k;
  k.matrix = Eigen::MatrixXd::Identity(2, 2);
  EXPECT_EQ(code_of([&] { stationary_distribution(k); }), ErrorCode::NotStronglyConnected);
}

TEST(DegreeVector, Values) {
  const testing::ColumnCollapse cc = testing::column_collapse();
  EXPECT_EQ(degree_vector(cc.g1, DegreeMode::Out)(2), 4.0);
  const std::vector<WeightedEdge> loop{{0, 0, 3.0}};
  EXPECT_EQ(degree_vector(build_network(1, loop, false), DegreeMode::Out)(0), 3.0);
  const Network t = triangle();
  EXPECT_DOUBLE_EQ(degree_vector(t, DegreeMode::Undirected).sum(), 2.0 * 3.0);
  EXPECT_EQ(code_of([&] { degree_vector(directed_cycle(3), DegreeMode::Undirected); }),
            ErrorCode::ModeInvalidForDirected);
  EXPECT_EQ(degree_vector(directed_cycle(3), DegreeMode::In), Eigen::VectorXd::Ones(3));
}

TEST(NetworksEquivalent, ScalingAndPerturbation) {
  const Network t = triangle();
  EXPECT_TRUE(networks_equivalent(t, t.scaled(3.0)));
  Eigen::MatrixXd w = t.weights();
  w(0, 1) = w(1, 0) = 2.0;
  EXPECT_FALSE(networks_equivalent(t, Network(w, false)));
  EXPECT_EQ(code_of([&] { networks_equivalent(directed_cycle(3), directed_cycle(3)); }),
            ErrorCode::DirectedInput);
}

TEST(NetworksEquivalent, MatchesKernelEquality) {
  Rng rng(15);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const Network g = testing::random_undirected(rng, 4);
    Network h = g.scaled(0.5 + unit(rng));
    if (i % 2) {
      Eigen::MatrixXd w = h.weights();
      const Index v = g.successors(0).front();
      w(0, v) *= 1.5;
      w(v, 0) = w(0, v);
      h = Network(w, false);
    }
    const Eigen::MatrixXd diff = transition_kernel(g).matrix - transition_kernel(h).matrix;
    EXPECT_EQ(networks_equivalent(g, h), diff.cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST(StronglyConnectedComponents, SinksComeFirst) {
  const std::vector<std::vector<Index>> adj{{1}, {0, 2}, {}};
  const Components c = strongly_connected_components(adj);
  EXPECT_EQ(c.count, 2u);
  EXPECT_EQ(c.component_of[0], c.component_of[1]);
  EXPECT_LT(c.component_of[2], c.component_of[0]);
}

}  // namespace
}  // namespace netotc
