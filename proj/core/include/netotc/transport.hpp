#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "netotc/network.hpp"

namespace netotc {

/// A joint law with prescribed marginals.
struct Coupling {
  Eigen::MatrixXd plan;
  Eigen::VectorXd row_marginal;
  Eigen::VectorXd col_marginal;

  /// max(|row sums - row_marginal|, |col sums - col_marginal|).
  double marginal_error() const;
};

struct TransportResult {
  Coupling coupling;
  double value = 0.0;
};

/// Exact discrete optimal transport of `mu` to `nu` under `cost`.
/// Zero-mass entries are dropped before solving and reinserted as zero
/// rows/columns. Throws MarginalInvalid, DimensionMismatch.
TransportResult ot_exact(const Eigen::VectorXd& mu, const Eigen::VectorXd& nu,
                         const Eigen::MatrixXd& cost);

struct SinkhornResult {
  Coupling coupling;
  double value = 0.0;
  /// L1 row-marginal residual after the final column update.
  double marginal_residual = 0.0;
  /// Residual after each iteration.
  std::vector<double> residual_history;
  /// Final log column scaling, zero on zero-mass columns.
  Eigen::VectorXd col_scaling;
};

/// Entropic OT, plan = diag(a) exp(-xi * cost) diag(b), iterated in the log
/// domain, optionally from a previous log column scaling. Throws
/// InvalidArgument on xi <= 0 or iters < 1, NumericalUnderflow if the
/// scalings stop being finite.
SinkhornResult ot_sinkhorn(const Eigen::VectorXd& mu, const Eigen::VectorXd& nu,
                           const Eigen::MatrixXd& cost, double xi, int iters,
                           const Eigen::VectorXd& initial_col_scaling = {});

/// Projects an approximate plan onto the exact coupling set of (mu, nu) while
/// keeping it nonnegative (row shrink, column shrink, rank-one repair).
Eigen::MatrixXd round_to_marginals(const Eigen::MatrixXd& plan, const Eigen::VectorXd& mu,
                                   const Eigen::VectorXd& nu);

/// 0.5 * sum |mu - nu|. Throws DimensionMismatch.
double total_variation(const Eigen::VectorXd& mu, const Eigen::VectorXd& nu);

// Transportation simplex with access to duals and the basis tree, used by the
// policy-improvement step to restrict a second solve to the optimal face of
// a first one.

using Cell = std::pair<Index, Index>;
using CellMask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

struct TransportSolution {
  Eigen::MatrixXd plan;
  double value = 0.0;
  Eigen::VectorXd row_potential;
  Eigen::VectorXd col_potential;
  /// m + n - 1 cells forming a spanning tree of the bipartite row/column graph.
  std::vector<Cell> basis;
  int pivots = 0;

  /// cost(i,j) - row_potential(i) - col_potential(j); nonnegative at optimum.
  Eigen::MatrixXd reduced_costs(const Eigen::MatrixXd& cost) const;
};

struct TransportOptions {
  /// Basis to start from instead of the north-west corner rule.
  const std::vector<Cell>* warm_start = nullptr;
  /// Only cells with allowed(i,j) may enter the basis.
  const CellMask* allowed = nullptr;
  /// Reduced-cost optimality tolerance, relative to max |cost|.
  double tolerance = 1e-12;
};

/// Requires strictly positive supplies and demands with equal totals.
TransportSolution solve_transport(const Eigen::VectorXd& supply, const Eigen::VectorXd& demand,
                                  const Eigen::MatrixXd& cost, const TransportOptions& options = {});

}  // namespace netotc
