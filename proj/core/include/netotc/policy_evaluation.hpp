#pragma once

#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "netotc/network.hpp"

namespace netotc {

using SparseKernel = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct RecurrentClass {
  std::vector<Index> states;
  /// Stationary law of the class, indexed like `states`.
  Eigen::VectorXd law;
  double gain = 0.0;
};

/// Average-cost evaluation of a (possibly multichain) stochastic matrix.
/// gain and bias solve  g = R g,  g + h = c + R h  with the bias normalized
/// to zero mean under each recurrent class's stationary law.
struct PolicyEvaluation {
  Eigen::VectorXd gain;
  Eigen::VectorXd bias;
  std::vector<RecurrentClass> classes;
  /// max-norm residual of the two evaluation equations.
  double residual = 0.0;

  /// Index into `classes` of the lowest-gain class (lowest index on ties).
  Index best_class() const;
  /// The stationary law minimizing <law, c>, spread over all states.
  Eigen::VectorXd best_law(Index states) const;
};

/// Throws NumericalNonConvergence if a linear solve fails.
PolicyEvaluation evaluate_policy(const SparseKernel& kernel, const Eigen::VectorXd& cost);

}  // namespace netotc
