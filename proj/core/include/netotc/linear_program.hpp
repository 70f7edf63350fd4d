#pragma once

#include <Eigen/Dense>

namespace netotc {

/// minimize c'x subject to A x = b, x >= 0.
struct LinearProgram {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
};

/// NumericalFailure: the final point misses A x = b by more than the
/// feasibility tolerance.
enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit, NumericalFailure };

struct LpResult {
  LpStatus status = LpStatus::IterationLimit;
  Eigen::VectorXd x;
  double value = 0.0;
  int pivots = 0;
};

struct LpOptions {
  double pivot_tolerance = 1e-9;
  double optimality_tolerance = 1e-11;
  double feasibility_tolerance = 1e-9;
  int max_pivots = 200000;
  /// Relative size of the right-hand-side shift used against degeneracy; 0 disables it.
  double perturbation = 1e-7;
};

/// Dense two-phase tableau simplex. Linearly dependent equality rows are
/// dropped up front with a rank-revealing QR and any left over are cleared
/// after phase one. Dantzig pricing, switching to Bland's rule during runs of
/// degenerate pivots.
LpResult solve_linear_program(const LinearProgram& lp, const LpOptions& options = {});

}  // namespace netotc
