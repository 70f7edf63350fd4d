#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include <netotc/cost.hpp>
#include <netotc/network.hpp>

namespace netotc::testing {

using Rng = std::mt19937_64;

/// Directed network with integer weights 1..3, strongly connected, no zero out-degree.
Network random_directed(Rng& rng, Index n, double density = 0.5);

/// Connected undirected network with weights in [0.5, 1.5), optional self-loops.
Network random_undirected(Rng& rng, Index n, double density = 0.6, bool loops = false);

/// Undirected network whose odd cycle makes its walk aperiodic.
Network random_aperiodic(Rng& rng, Index n);

bool is_bipartite(const Network& net);

/// Directed network with `per_block` copies of every vertex of `base` that
/// has `base` as a factor under u -> u / per_block.
Network random_extension(Rng& rng, const Network& base, Index per_block);

CostMatrix random_cost(Rng& rng, Index rows, Index cols);

/// Random point cloud, one row per vertex.
Eigen::MatrixXd random_points(Rng& rng, Index n, Index dim);

/// The three unit-circle networks: an octagon, the octagon minus one edge,
/// and a path spread over the left semicircle.
struct CircleNetworks {
  Network g1;
  Network g2;
  Network g3;
  Eigen::MatrixXd pos1;
  Eigen::MatrixXd pos2;
  Eigen::MatrixXd pos3;
};
CircleNetworks circle_networks();

/// The five-vertex network collapsed onto three columns, with its factor map
/// and planar embeddings.
struct ColumnCollapse {
  Network g1;
  Network g2;
  std::vector<Index> f;
  Eigen::MatrixXd pos1;
  Eigen::MatrixXd pos2;
};
ColumnCollapse column_collapse();

}  // namespace netotc::testing
