#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace netotc {

using Index = std::size_t;

struct WeightedEdge {
  Index from = 0;
  Index to = 0;
  double weight = 1.0;
};

/// Optional per-vertex payload: a discrete label and/or a real embedding.
/// Absent parts are empty (no labels, zero-column embedding).
struct VertexAttributes {
  std::vector<std::string> labels;
  Eigen::MatrixXd embedding;

  bool has_labels() const { return !labels.empty(); }
  bool has_embedding() const { return embedding.cols() > 0; }
};

/// Weighted directed network on vertices 0..n-1. Weights are stored densely;
/// w(u,u') > 0 exactly on the edge set. Undirected networks are stored as
/// symmetric directed networks. Immutable after construction.
class Network {
 public:
  /// Validates: finite nonnegative weights, exact symmetry when undirected,
  /// attribute sizes matching the vertex count.
  Network(Eigen::MatrixXd weights, bool directed, VertexAttributes attributes = {});

  Index size() const { return static_cast<Index>(weights_.rows()); }
  bool directed() const { return directed_; }
  const Eigen::MatrixXd& weights() const { return weights_; }
  double weight(Index u, Index v) const { return weights_(u, v); }
  bool has_edge(Index u, Index v) const { return weights_(u, v) > 0.0; }
  const VertexAttributes& attributes() const { return attributes_; }

  /// Number of directed edges (an undirected non-loop edge counts twice).
  Index edge_count() const;
  /// Directed edge list in row-major order.
  std::vector<WeightedEdge> edges() const;
  /// Out-neighbours of u in increasing order.
  std::vector<Index> successors(Index u) const;

  /// Same network with all weights multiplied by `factor` > 0.
  Network scaled(double factor) const;
  Network with_attributes(VertexAttributes attributes) const;

 private:
  Eigen::MatrixXd weights_;
  bool directed_;
  VertexAttributes attributes_;
};

/// Row-stochastic random-walk kernel P(u'|u) = w(u,u') / d(u).
struct MarkovKernel {
  Eigen::MatrixXd matrix;

  Index size() const { return static_cast<Index>(matrix.rows()); }
  double operator()(Index from, Index to) const { return matrix(from, to); }
  /// Indices with positive transition probability out of `from`.
  std::vector<Index> support(Index from) const;
};

struct StationaryDistribution {
  Eigen::VectorXd probs;
};

enum class DegreeMode { Out, In, Undirected };

/// Builds a network from an edge list. Undirected edges may be listed in one
/// or both orientations; both orientations must then agree.
/// Throws NonPositiveWeight, IndexOutOfRange, AsymmetricUndirected.
Network build_network(Index n, std::span<const WeightedEdge> edges, bool directed,
                      VertexAttributes attributes = {});

/// Throws ZeroOutDegree if some vertex has no out-edge.
MarkovKernel transition_kernel(const Network& net);

bool is_strongly_connected(const Network& net);

/// Unique stationary law of an irreducible kernel. Dense solve up to 512
/// states, power iteration above.
/// Throws NotStronglyConnected, NumericalNonConvergence.
StationaryDistribution stationary_distribution(const MarkovKernel& kernel);

/// Weighted degree per vertex. Undirected mode throws ModeInvalidForDirected
/// on a directed network.
Eigen::VectorXd degree_vector(const Network& net, DegreeMode mode);

/// True iff both undirected networks share an edge set and their weights
/// differ by one global positive factor. Throws DirectedInput.
bool networks_equivalent(const Network& g1, const Network& g2);

/// Strongly connected components of a directed graph given as adjacency
/// lists. Components are numbered in reverse topological order of the
/// condensation (sinks first).
struct Components {
  std::vector<Index> component_of;
  Index count = 0;
};
Components strongly_connected_components(const std::vector<std::vector<Index>>& adjacency);

}  // namespace netotc
