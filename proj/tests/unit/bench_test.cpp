#include <gtest/gtest.h>

#include <set>

#include <netotc/bench.hpp>

#include "error_code.hpp"
#include "instances.hpp"
#include "oracles.hpp"

namespace netotc {
namespace {

using testing::code_of;
using testing::Rng;

Eigen::MatrixXd permutation_plan(const std::vector<Index>& psi) {
  const Index n = psi.size();
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (Index u = 0; u < n; ++u) p(u, psi[u]) = 1.0 / n;
  return p;
}

TEST(TrialSeed, DistinctAndStable) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(trial_seed(7, i));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_EQ(trial_seed(7, 3), trial_seed(7, 3));
  EXPECT_NE(trial_seed(7, 3), trial_seed(8, 3));
}

TEST(IsomorphismSuccess, AgreesWithOracle) {
  Rng rng(81);
  for (int t = 0; t < 100; ++t) {
    const Network g = gen_random_weighted_adjacency({5, 6}, {0, 1, 2}, rng());
    const PermutedNetwork h = permuted_copy(g, rng());
    std::vector<Index> psi = h.phi;
    if (t % 2) std::swap(psi[0], psi[1 + t % (psi.size() - 1)]);
    EXPECT_EQ(isomorphism_success(g, h.network, permutation_plan(psi)),
              oracle::is_isomorphism(g, h.network, psi));
  }
}

TEST(IsomorphismSuccess, RejectsNonBijectiveAlignment) {
  const Network g = gen_erdos_renyi(4, 1.0, 1);
  Eigen::MatrixXd plan = Eigen::MatrixXd::Zero(4, 4);
  plan.col(0).setConstant(0.25);
  EXPECT_FALSE(isomorphism_success(g, g, plan));
  EXPECT_FALSE(isomorphism_success(g, gen_erdos_renyi(5, 1.0, 1), plan));
}

TEST(SbmAccuracy, DiagonalAndIndependentPlans) {
  const std::vector<Index> labels{0, 1, 2, 3};
  std::vector<EdgeAlignmentEntry> diag_edges, all_edges;
  for (Index a = 0; a < 4; ++a)
    for (Index b = 0; b < 4; ++b) {
      diag_edges.push_back({a, b, a, b, 1.0 / 16.0});
      for (Index c = 0; c < 4; ++c)
        for (Index d = 0; d < 4; ++d) all_edges.push_back({a, b, c, d, 1.0 / 256.0});
    }
  const SbmAccuracy perfect =
      sbm_alignment_accuracy(Eigen::MatrixXd::Identity(4, 4) / 4.0, diag_edges, labels, labels);
  EXPECT_DOUBLE_EQ(perfect.vertex, 1.0);
  EXPECT_DOUBLE_EQ(perfect.edge, 1.0);
  const SbmAccuracy blind =
      sbm_alignment_accuracy(Eigen::MatrixXd::Constant(4, 4, 1.0 / 16.0), all_edges, labels, labels);
  EXPECT_DOUBLE_EQ(blind.vertex, 0.25);
  EXPECT_DOUBLE_EQ(blind.edge, 0.0625);
  EXPECT_EQ(code_of([&] {
              sbm_alignment_accuracy(Eigen::MatrixXd::Identity(4, 4), {}, {0, 1, 2}, labels);
            }),
            ErrorCode::LabelMismatch);
}

TEST(Knn, SeparatedClustersAreClassifiedPerfectly) {
  const int n = 40;
  std::vector<int> labels(n);
  Eigen::MatrixXd d(n, n);
  for (int i = 0; i < n; ++i) labels[i] = i % 2;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d(i, j) = i == j ? 0.0 : (labels[i] == labels[j] ? 1.0 : 10.0);
  const KnnResult r = knn_classify(d, labels, 5, 0.8, 5, 3);
  ASSERT_EQ(r.accuracies.size(), 5u);
  EXPECT_DOUBLE_EQ(r.mean, 1.0);
  EXPECT_DOUBLE_EQ(r.sd, 0.0);
}

TEST(Knn, ConstantDistancesFallBackToLowestLabel) {
  const int n = 50;
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = i < 30 ? 0 : 1;
  const KnnResult r = knn_classify(Eigen::MatrixXd::Ones(n, n), labels, 1, 0.8, 20, 9);
  for (double a : r.accuracies) EXPECT_GE(a, 0.0);
  EXPECT_GT(r.mean, 0.4);
  EXPECT_LT(r.mean, 0.8);
}

TEST(Knn, Errors) {
  const std::vector<int> labels{0, 1, 0};
  const Eigen::MatrixXd d = Eigen::MatrixXd::Ones(3, 3);
  EXPECT_EQ(code_of([&] { knn_classify(d, labels, 1, 0.1, 1, 1); }), ErrorCode::DegenerateSplit);
  EXPECT_EQ(code_of([&] { knn_classify(d, labels, 1, 0.99, 1, 1); }), ErrorCode::DegenerateSplit);
  EXPECT_EQ(code_of([&] { knn_classify(d, {0, 1}, 1, 0.5, 1, 1); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([&] { knn_classify(d, labels, 0, 0.5, 1, 1); }), ErrorCode::InvalidArgument);
}

TEST(BenchResult, Statistics) {
  BenchResult r;
  EXPECT_EQ(r.sd(), 0.0);
  for (double s : {1.0, 0.0, 1.0, 1.0}) r.records.push_back({0, s, 1.0 - s, 0.0, 0.0});
  EXPECT_DOUBLE_EQ(r.mean(), 0.75);
  EXPECT_DOUBLE_EQ(r.sd(), 0.5);
  EXPECT_DOUBLE_EQ(r.secondary_mean(), 0.25);
  EXPECT_DOUBLE_EQ(r.secondary_sd(), 0.5);
}

TEST(IsomorphismBench, SmallRunIsReproducible) {
  GraphClassSpec spec;
  spec.kind = GraphClassKind::ErdosRenyi;
  spec.n_range = {6, 8};
  spec.p = 0.5;
  const BenchResult a = run_isomorphism_bench(spec, 5, {}, 13);
  const BenchResult b = run_isomorphism_bench(spec, 5, {}, 13);
  ASSERT_EQ(a.records.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(a.records[i].seed, b.records[i].seed);
    EXPECT_EQ(a.records[i].score, b.records[i].score);
    EXPECT_NEAR(a.records[i].rho, 0.0, 1e-9);
  }
}

TEST(FactorBench, ExactFactorsAreRecovered) {
  FactorPairSpec spec;
  spec.blocks = 3;
  spec.per_block = 2;
  const BenchResult r = run_factor_bench(spec, 3, {}, 5);
  ASSERT_EQ(r.records.size(), 3u);
  for (const TrialRecord& rec : r.records) EXPECT_NEAR(rec.score, 1.0, 1e-6);
}

TEST(Align, MarginalOtEdgesCarryTheVertexPlan) {
  Rng rng(82);
  const Network g1 = testing::random_undirected(rng, 4), g2 = testing::random_undirected(rng, 3);
  const Alignment a = align(g1, g2, testing::random_cost(rng, 4, 3), {Method::MarginalOt, {}});
  Eigen::MatrixXd from_edges = Eigen::MatrixXd::Zero(4, 3);
  for (const EdgeAlignmentEntry& e : a.edges) from_edges(e.u, e.v) += e.mass;
  EXPECT_LE((from_edges - a.vertex).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_EQ(to_string(Method::MarginalOt), "ot");
}

}  // namespace
}  // namespace netotc
