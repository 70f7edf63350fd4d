#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "netotc/factors.hpp"
#include "netotc/generators.hpp"
#include "netotc/otc.hpp"

namespace netotc {

/// Seed of trial `index` in a run seeded with `base`.
std::uint64_t trial_seed(std::uint64_t base, std::uint64_t index);

enum class Method { Exact, Entropic, OneStep, MarginalOt };
std::string_view to_string(Method method) noexcept;

struct MethodConfig {
  Method method = Method::Exact;
  EntropicOptions entropic;
};

/// Alignment produced by any method. The marginal OT method has no dynamics;
/// its edge alignment takes one independent step from its vertex coupling.
struct Alignment {
  double rho = 0.0;
  Eigen::MatrixXd vertex;
  std::vector<EdgeAlignmentEntry> edges;
};

Alignment align(const Network& g1, const Network& g2, const CostMatrix& cost,
                const MethodConfig& config);

struct TrialRecord {
  std::uint64_t seed = 0;
  /// Success indicator (0/1) or accuracy in [0, 1].
  double score = 0.0;
  /// Experiment-specific second column (exact-permutation match, edge accuracy).
  double secondary = 0.0;
  double rho = 0.0;
  double runtime_ms = 0.0;
};

struct BenchResult {
  std::string experiment;
  std::vector<TrialRecord> records;
  /// Draws discarded for being disconnected.
  Index skipped = 0;

  double mean() const;
  /// Sample standard deviation; 0 with fewer than two records.
  double sd() const;
  double secondary_mean() const;
  double secondary_sd() const;
};

enum class GraphClassKind { ErdosRenyi, Sbm, RandomWeighted, Lollipop };

struct GraphClassSpec {
  GraphClassKind kind = GraphClassKind::Sbm;
  /// Vertex count of Erdos-Renyi draws.
  IndexRange n_range{6, 15};
  double p = 1.0 / 3.0;
  std::vector<Index> blocks{7, 7, 7};
  double p_within = 0.7;
  double p_between = 0.1;
  std::vector<int> alphabet{0, 1, 2};
  IndexRange weighted_n_range{6, 20};
  IndexRange candy{7, 15};
  IndexRange stick{7, 15};
  double chord_p = 0.5;

  std::string name() const;
};

/// One draw from the class; may be disconnected.
Network sample_graph_class(const GraphClassSpec& spec, std::uint64_t seed);

/// psi = hard_alignment(pi_v) is bijective and preserves edges and weights in
/// both directions.
bool isomorphism_success(const Network& g1, const Network& g2, const Eigen::MatrixXd& pi_v);

/// Isomorphic pairs (g, permuted g) under the raw degree cost. score is the
/// success indicator; secondary records whether psi equals the true permutation.
BenchResult run_isomorphism_bench(const GraphClassSpec& spec, int trials,
                                  const MethodConfig& config, std::uint64_t seed);

struct SbmAccuracy {
  double vertex = 0.0;
  double edge = 0.0;
};

/// Mass of pi_v on same-label pairs, and of pi_e on transitions whose two
/// endpoints both carry matching labels. Throws LabelMismatch.
SbmAccuracy sbm_alignment_accuracy(const Eigen::MatrixXd& pi_v,
                                   const std::vector<EdgeAlignmentEntry>& pi_e,
                                   const std::vector<Index>& labels1,
                                   const std::vector<Index>& labels2);

struct SbmBenchSpec {
  std::vector<Index> sizes1{12, 12, 12, 12};
  std::vector<Index> sizes2{8, 8, 8, 8};
  std::vector<double> p_within{1.0, 0.8, 0.6, 0.4};
  double p_between = 0.1;
};

/// score is vertex accuracy, secondary is edge accuracy.
BenchResult run_sbm_bench(const SbmBenchSpec& spec, int trials, const MethodConfig& config,
                          std::uint64_t seed);

/// score is sum_u pi_v(u, f(u)) under the squared Euclidean embedding cost.
BenchResult run_factor_bench(const FactorPairSpec& spec, int trials, const MethodConfig& config,
                             std::uint64_t seed);

struct KnnResult {
  double mean = 0.0;
  double sd = 0.0;
  std::vector<double> accuracies;
};

/// k-NN on a precomputed distance matrix (symmetrized by averaging). Each
/// repeat draws a random train split of size round(train_fraction * n).
/// Ties in the vote go to the smallest mean distance, then the lowest label.
/// Throws DegenerateSplit, DimensionMismatch, InvalidArgument.
KnnResult knn_classify(const Eigen::MatrixXd& distances, const std::vector<int>& labels, int k,
                       double train_fraction, int repeats, std::uint64_t seed);

}  // namespace netotc
