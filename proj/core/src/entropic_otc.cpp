#include <string>

#include "netotc/error.hpp"
#include "netotc/otc.hpp"
#include "otc_detail.hpp"

namespace netotc {

namespace {

struct TruncatedEvaluation {
  Eigen::VectorXd gain;
  Eigen::VectorXd bias;
};

// gain = (1/T) sum_{t<T} R^t c and bias = sum_{t<T} R^t (c - gain).
TruncatedEvaluation truncated_evaluation(const SparseKernel& kernel, const Eigen::VectorXd& cost,
                                         int horizon) {
  Eigen::VectorXd term = cost;
  Eigen::VectorXd total = Eigen::VectorXd::Zero(cost.size());
  for (int t = 0; t < horizon; ++t) {
    total += term;
    if (t + 1 < horizon) term = kernel * term;
  }
  TruncatedEvaluation out;
  out.gain = total / horizon;
  term = out.gain;
  Eigen::VectorXd gain_total = Eigen::VectorXd::Zero(cost.size());
  for (int t = 0; t < horizon; ++t) {
    gain_total += term;
    if (t + 1 < horizon) term = kernel * term;
  }
  out.bias = total - gain_total;
  return out;
}

}  // namespace

OtcSolution solve_entropic_otc(const Network& g1, const Network& g2, const CostMatrix& cost,
                               const EntropicOptions& options) {
  if (options.outer_iterations < 1 || options.horizon < 1 || options.sinkhorn_iterations < 1 ||
      !(options.xi > 0.0))
    throw Error(ErrorCode::InvalidArgument, "entropic parameters must be positive");
  const detail::ProductSpace space = detail::make_product_space(g1, g2, cost);

  std::vector<Eigen::MatrixXd> rows(space.states());
  for (Index u = 0; u < space.nu; ++u)
    for (Index v = 0; v < space.nv; ++v) rows[space.state(u, v)] = space.independent_row(u, v);

  SolverDiagnostics diag;
  diag.solver = SolverTag::Entropic;
  std::vector<Eigen::VectorXd> scalings(space.states());
  SparseKernel kernel = detail::assemble_kernel(space, rows);
  SparseKernel best_kernel = kernel;
  PolicyEvaluation best_eval = evaluate_policy(kernel, space.cost);

  for (int iter = 0; iter < options.outer_iterations; ++iter) {
    const TruncatedEvaluation eval = truncated_evaluation(kernel, space.cost, options.horizon);
    const Eigen::VectorXd surrogate = eval.gain + eval.bias;
    for (Index u = 0; u < space.nu; ++u) {
      for (Index v = 0; v < space.nv; ++v) {
        const Index s = space.state(u, v);
        Eigen::MatrixXd grid = space.restrict(surrogate, u, v);
        grid.array() -= grid.minCoeff();
        const double range = grid.maxCoeff();
        if (range > 0.0) grid /= range;
        const SinkhornResult sk = ot_sinkhorn(space.prob_u[u], space.prob_v[v], grid, options.xi,
                                              options.sinkhorn_iterations, scalings[s]);
        scalings[s] = sk.col_scaling;
        rows[s] = round_to_marginals(sk.coupling.plan, space.prob_u[u], space.prob_v[v]);
      }
    }
    kernel = detail::assemble_kernel(space, rows);
    PolicyEvaluation exact = evaluate_policy(kernel, space.cost);
    const double objective = exact.classes[exact.best_class()].gain;
    diag.objective_history.push_back(objective);
    diag.iterations = iter + 1;
    if (objective < best_eval.classes[best_eval.best_class()].gain) {
      best_kernel = kernel;
      best_eval = std::move(exact);
    }
  }

  // The returned coupling is the best feasible iterate, the independent one included.
  return detail::finish_solution(space, std::move(best_kernel), best_eval, cost, std::move(diag));
}

}  // namespace netotc
