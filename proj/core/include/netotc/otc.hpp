#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "netotc/cost.hpp"
#include "netotc/network.hpp"
#include "netotc/policy_evaluation.hpp"
#include "netotc/transport.hpp"

namespace netotc {

/// Stationary Markov chain on U x V whose rows couple P(.|u) and Q(.|v).
/// State (u, v) has index u * target_size + v.
struct TransitionCoupling {
  Index source_size = 0;
  Index target_size = 0;
  SparseKernel kernel;
  Eigen::VectorXd law;

  Index state(Index u, Index v) const { return u * target_size + v; }
  Index states() const { return source_size * target_size; }
};

struct CouplingCheck {
  /// Largest violation of the two marginal identities over all rows.
  double marginal_violation = 0.0;
  /// max |row sum - 1|.
  double row_sum_violation = 0.0;
  /// || law R - law ||_1.
  double stationarity_residual = 0.0;
  /// |sum(law) - 1|.
  double mass_error = 0.0;
};

CouplingCheck check_transition_coupling(const TransitionCoupling& coupling, const MarkovKernel& p,
                                        const MarkovKernel& q);

enum class SolverTag { Exact, Entropic, LpOracle, OneStepBaseline };
std::string_view to_string(SolverTag tag) noexcept;

struct EdgeAlignmentEntry {
  Index u = 0;
  Index u_next = 0;
  Index v = 0;
  Index v_next = 0;
  double mass = 0.0;
};

struct SolverDiagnostics {
  SolverTag solver = SolverTag::Exact;
  int iterations = 0;
  /// Best stationary cost after each evaluation.
  std::vector<double> objective_history;
  double evaluation_residual = 0.0;
  Index recurrent_classes = 0;
};

struct OtcSolution {
  double rho = 0.0;
  TransitionCoupling coupling;
  CostMatrix cost;
  /// pi_v(u, v) = law(u, v).
  Eigen::MatrixXd vertex_alignment;
  /// pi_e((u,u'),(v,v')) = law(u,v) R(u',v'|u,v), positive entries only.
  std::vector<EdgeAlignmentEntry> edge_alignment;
  SolverDiagnostics diagnostics;
};

/// Product kernel P(u'|u) Q(v'|v) with law p x q.
TransitionCoupling independent_coupling(const MarkovKernel& p, const MarkovKernel& q);

struct ExactOptions {
  int iteration_cap = 50;
};

/// Multichain policy iteration over transition couplings, started from the
/// independent coupling. Throws NotStronglyConnected, DimensionMismatch,
/// IterationCapExceeded.
OtcSolution solve_exact_otc(const Network& g1, const Network& g2, const CostMatrix& cost,
                            const ExactOptions& options = {});

struct EntropicOptions {
  int outer_iterations = 10;  // L
  int horizon = 50;           // T
  double xi = 100.0;
  int sinkhorn_iterations = 50;
};

/// Approximate policy iteration: truncated T-step evaluation followed by a
/// per-state Sinkhorn improvement, each row rounded back onto the exact
/// coupling set. The reported rho is the cost of that feasible coupling.
OtcSolution solve_entropic_otc(const Network& g1, const Network& g2, const CostMatrix& cost,
                               const EntropicOptions& options = {});

/// Single LP over edge-occupation measures. Limited to |U||V| <= 64.
/// Throws InstanceTooLarge, NumericalNonConvergence.
OtcSolution solve_lp_oracle(const Network& g1, const Network& g2, const CostMatrix& cost);

/// Each row is an exact one-step OT of P(.|u), Q(.|v) under the cost.
OtcSolution one_step_otc_baseline(const Network& g1, const Network& g2, const CostMatrix& cost);

/// Coupling of the two stationary distributions only.
TransportResult marginal_ot_baseline(const Network& g1, const Network& g2, const CostMatrix& cost);

/// E c_k under the stationary coupling, by propagating the law k-1 steps.
double multistep_average_cost(const OtcSolution& solution, int k);

struct LowerBoundReport {
  double rho = 0.0;
  double marginal_ot_bound = 0.0;  // OT(p, q) under the 0-1 cost
  double degree_bound = 0.0;       // (1/2D) sum |d1 - d2|
  double weight_bound = 0.0;       // (1/4D) sum |w1 - w2|
  bool holds = true;
};

/// Requires undirected networks on the same vertex set with equal total
/// degree and a zero-one identity cost. Throws PreconditionViolated.
LowerBoundReport verify_lower_bounds(const Network& g1, const Network& g2,
                                     const OtcSolution& solution);

/// psi(u) = argmax_v pi_v(u, v); ties go to the lowest index.
std::vector<Index> hard_alignment(const Eigen::MatrixXd& vertex_alignment);

/// Fills vertex/edge alignments from coupling.kernel and coupling.law.
void fill_alignments(OtcSolution& solution);

}  // namespace netotc
