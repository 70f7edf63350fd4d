#pragma once

#include <vector>

#include "netotc/otc.hpp"

namespace netotc::detail {

/// Kernels, per-vertex supports and the flattened cost on U x V.
struct ProductSpace {
  MarkovKernel p;
  MarkovKernel q;
  Index nu = 0;
  Index nv = 0;
  std::vector<std::vector<Index>> succ_u;
  std::vector<std::vector<Index>> succ_v;
  std::vector<Eigen::VectorXd> prob_u;
  std::vector<Eigen::VectorXd> prob_v;
  Eigen::VectorXd cost;

  Index states() const { return nu * nv; }
  Index state(Index u, Index v) const { return u * nv + v; }
  /// values(u', v') on succ_u[u] x succ_v[v].
  Eigen::MatrixXd restrict(const Eigen::VectorXd& values, Index u, Index v) const;
  Eigen::MatrixXd independent_row(Index u, Index v) const;
};

/// Validates dimensions and strong connectivity.
ProductSpace make_product_space(const Network& g1, const Network& g2, const CostMatrix& cost);

/// rows[s] is a plan over succ_u[u] x succ_v[v] for s = (u, v). Entries below
/// `snap` are dropped and each row is renormalized to sum to one.
SparseKernel assemble_kernel(const ProductSpace& space, const std::vector<Eigen::MatrixXd>& rows,
                             double snap = 1e-15);

/// Packs kernel + evaluation into a solution with alignments filled in.
OtcSolution finish_solution(const ProductSpace& space, SparseKernel kernel,
                            const PolicyEvaluation& evaluation, const CostMatrix& cost,
                            SolverDiagnostics diagnostics);

}  // namespace netotc::detail
