#include <algorithm>
#include <string>

#include "netotc/error.hpp"
#include "netotc/otc.hpp"
#include "otc_detail.hpp"

namespace netotc {

namespace {

using detail::ProductSpace;

constexpr double kRelativeTolerance = 1e-10;
constexpr double kFaceTolerance = 1e-9;

double scale_of(const Eigen::VectorXd& x) { return std::max(1.0, x.cwiseAbs().maxCoeff()); }

bool is_fixed_row(const ProductSpace& space, Index u, Index v) {
  return space.succ_u[u].size() == 1 || space.succ_v[v].size() == 1;
}

// Minimizes <plan, second> over the optimal face of `first`.
TransportSolution lexicographic_min(const ProductSpace& space, Index u, Index v,
                                    const TransportSolution& first, const Eigen::MatrixXd& first_cost,
                                    const Eigen::MatrixXd& second_cost, double face_tol) {
  const CellMask mask = first.reduced_costs(first_cost).array() <= face_tol;
  TransportOptions opts;
  opts.warm_start = &first.basis;
  opts.allowed = &mask;
  return solve_transport(space.prob_u[u], space.prob_v[v], second_cost, opts);
}

}  // namespace

OtcSolution solve_exact_otc(const Network& g1, const Network& g2, const CostMatrix& cost,
                            const ExactOptions& options) {
  const ProductSpace space = detail::make_product_space(g1, g2, cost);
  const Index n = space.states();

  std::vector<Eigen::MatrixXd> rows(n);
  for (Index u = 0; u < space.nu; ++u)
    for (Index v = 0; v < space.nv; ++v) rows[space.state(u, v)] = space.independent_row(u, v);

  SolverDiagnostics diag;
  diag.solver = SolverTag::Exact;
  std::vector<TransportSolution> g_solutions(n);

  for (int iter = 1;; ++iter) {
    const SparseKernel kernel = detail::assemble_kernel(space, rows);
    const PolicyEvaluation eval = evaluate_policy(kernel, space.cost);
    diag.iterations = iter;
    diag.objective_history.push_back(eval.classes[eval.best_class()].gain);

    const double tol_g = kRelativeTolerance * scale_of(eval.gain);
    const double tol_h = kRelativeTolerance * scale_of(eval.bias);
    const double face_g = kFaceTolerance * scale_of(eval.gain);

    bool changed = false;
#pragma omp parallel for schedule(dynamic) reduction(|| : changed)
    for (Index s = 0; s < n; ++s) {
      const Index u = s / space.nv, v = s % space.nv;
      if (is_fixed_row(space, u, v)) continue;
      const Eigen::MatrixXd g_grid = space.restrict(eval.gain, u, v);
      g_solutions[s] = solve_transport(space.prob_u[u], space.prob_v[v], g_grid);
      const double current = rows[s].cwiseProduct(g_grid).sum();
      if (current <= g_solutions[s].value + tol_g) continue;
      const Eigen::MatrixXd h_grid = space.restrict(eval.bias, u, v);
      rows[s] = lexicographic_min(space, u, v, g_solutions[s], g_grid, h_grid, face_g).plan;
      changed = true;
    }

    if (!changed) {
#pragma omp parallel for schedule(dynamic) reduction(|| : changed)
      for (Index s = 0; s < n; ++s) {
        const Index u = s / space.nv, v = s % space.nv;
        if (is_fixed_row(space, u, v)) continue;
        const Eigen::MatrixXd g_grid = space.restrict(eval.gain, u, v);
        const Eigen::MatrixXd h_grid = space.restrict(eval.bias, u, v);
        const TransportSolution best =
            lexicographic_min(space, u, v, g_solutions[s], g_grid, h_grid, face_g);
        if (rows[s].cwiseProduct(h_grid).sum() > best.value + tol_h) {
          rows[s] = best.plan;
          changed = true;
        }
      }
    }

    if (!changed) return detail::finish_solution(space, kernel, eval, cost, std::move(diag));
    if (iter >= options.iteration_cap)
      throw Error(ErrorCode::IterationCapExceeded,
                  "policy iteration did not settle within " + std::to_string(options.iteration_cap) +
                      " iterations");
  }
}

OtcSolution one_step_otc_baseline(const Network& g1, const Network& g2, const CostMatrix& cost) {
  const ProductSpace space = detail::make_product_space(g1, g2, cost);
  std::vector<Eigen::MatrixXd> rows(space.states());
  for (Index u = 0; u < space.nu; ++u)
    for (Index v = 0; v < space.nv; ++v)
      rows[space.state(u, v)] =
          solve_transport(space.prob_u[u], space.prob_v[v], space.restrict(space.cost, u, v)).plan;
  const SparseKernel kernel = detail::assemble_kernel(space, rows);
  const PolicyEvaluation eval = evaluate_policy(kernel, space.cost);
  SolverDiagnostics diag;
  diag.solver = SolverTag::OneStepBaseline;
  diag.iterations = 1;
  diag.objective_history.push_back(eval.classes[eval.best_class()].gain);
  return detail::finish_solution(space, kernel, eval, cost, std::move(diag));
}

}  // namespace netotc
