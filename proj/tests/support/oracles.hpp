#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include <netotc/network.hpp>
#include <netotc/otc.hpp>

// Deliberately naive reference computations, kept apart from the library's
// own algorithms.
namespace netotc::oracle {

/// Warshall closure of the edge relation.
Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> reachability(const Network& net);
bool strongly_connected(const Network& net);

/// Left eigenvector of P for the eigenvalue nearest one, from a general eigensolver.
Eigen::VectorXd stationary_by_eigensolver(const Eigen::MatrixXd& p);

/// Optimal transport value as a generic equality-form LP.
double transport_by_lp(const Eigen::VectorXd& mu, const Eigen::VectorXd& nu,
                       const Eigen::MatrixXd& cost);

/// E c_k from an explicit sum over every length-k state path.
double unrolled_average_cost(const Eigen::MatrixXd& kernel, const Eigen::VectorXd& law,
                             const Eigen::VectorXd& cost, int k);

/// Long-run average cost along one simulated trajectory.
double simulated_average_cost(const Eigen::MatrixXd& kernel, const Eigen::VectorXd& law,
                              const Eigen::VectorXd& cost, long steps, std::uint64_t seed);

/// Checks psi against every ordered vertex pair of both networks.
bool is_isomorphism(const Network& g1, const Network& g2, const std::vector<Index>& psi);

/// Tries every permutation; n <= 8.
bool isomorphic(const Network& g1, const Network& g2);

/// Per-state cost vector c(u, v) in state order u * |V| + v.
Eigen::VectorXd state_cost(const CostMatrix& cost);

}  // namespace netotc::oracle
