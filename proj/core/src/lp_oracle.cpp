#include <algorithm>
#include <string>

#include "netotc/error.hpp"
#include "netotc/linear_program.hpp"
#include "netotc/otc.hpp"
#include "otc_detail.hpp"

namespace netotc {

namespace {
constexpr Index kMaxStates = 64;
constexpr double kMassFloor = 1e-12;
}  // namespace

OtcSolution solve_lp_oracle(const Network& g1, const Network& g2, const CostMatrix& cost) {
  if (g1.size() * g2.size() > kMaxStates)
    throw Error(ErrorCode::InstanceTooLarge,
                "LP oracle is limited to " + std::to_string(kMaxStates) + " product states");
  const detail::ProductSpace space = detail::make_product_space(g1, g2, cost);
  const Index n = space.states();

  // Variable block per state s: x(s, i, j) for successors su[i], sv[j].
  std::vector<Index> offset(n + 1, 0);
  for (Index u = 0; u < space.nu; ++u)
    for (Index v = 0; v < space.nv; ++v) {
      const Index s = space.state(u, v);
      offset[s + 1] = offset[s] + space.succ_u[u].size() * space.succ_v[v].size();
    }
  const Index vars = offset[n];

  Index rows = 1 + n;
  for (Index u = 0; u < space.nu; ++u)
    for (Index v = 0; v < space.nv; ++v) rows += space.succ_u[u].size() + space.succ_v[v].size();

  LinearProgram lp;
  lp.a = Eigen::MatrixXd::Zero(rows, vars);
  lp.b = Eigen::VectorXd::Zero(rows);
  lp.c = Eigen::VectorXd::Zero(vars);
  lp.a.row(0).setOnes();
  lp.b(0) = 1.0;

  Index r = 1 + n;
  for (Index u = 0; u < space.nu; ++u) {
    for (Index v = 0; v < space.nv; ++v) {
      const Index s = space.state(u, v);
      const auto& su = space.succ_u[u];
      const auto& sv = space.succ_v[v];
      for (Index i = 0; i < su.size(); ++i) {
        for (Index j = 0; j < sv.size(); ++j) {
          const Index x = offset[s] + i * sv.size() + j;
          lp.c(x) = space.cost(s);
          lp.a(1 + s, x) += 1.0;                          // outflow of s
          lp.a(1 + space.state(su[i], sv[j]), x) -= 1.0;  // inflow of the successor
          lp.a(r + i, x) += 1.0;
          lp.a(r + su.size() + j, x) += 1.0;
          for (Index k = 0; k < su.size(); ++k) lp.a(r + k, x) -= space.prob_u[u](k);
          for (Index k = 0; k < sv.size(); ++k) lp.a(r + su.size() + k, x) -= space.prob_v[v](k);
        }
      }
      r += su.size() + sv.size();
    }
  }

  const LpResult res = solve_linear_program(lp);
  if (res.status != LpStatus::Optimal)
    throw Error(ErrorCode::NumericalNonConvergence, "occupation LP did not reach optimality");

  Eigen::VectorXd mass(n);
  std::vector<Eigen::MatrixXd> plans(n);
  for (Index u = 0; u < space.nu; ++u) {
    for (Index v = 0; v < space.nv; ++v) {
      const Index s = space.state(u, v);
      const Index ni = space.succ_u[u].size(), nj = space.succ_v[v].size();
      Eigen::MatrixXd block(ni, nj);
      for (Index i = 0; i < ni; ++i)
        for (Index j = 0; j < nj; ++j) block(i, j) = std::max(0.0, res.x(offset[s] + i * nj + j));
      mass(s) = block.sum();
      plans[s] = mass(s) > kMassFloor ? Eigen::MatrixXd(block / mass(s))
                                      : space.independent_row(u, v);
    }
  }

  OtcSolution sol;
  sol.coupling.source_size = space.nu;
  sol.coupling.target_size = space.nv;
  sol.coupling.kernel = detail::assemble_kernel(space, plans);
  sol.coupling.law = mass / mass.sum();
  sol.cost = cost;
  sol.rho = sol.coupling.law.dot(space.cost);
  sol.diagnostics.solver = SolverTag::LpOracle;
  sol.diagnostics.iterations = res.pivots;
  sol.diagnostics.objective_history.push_back(res.value);
  const PolicyEvaluation eval = evaluate_policy(sol.coupling.kernel, space.cost);
  sol.diagnostics.evaluation_residual = eval.residual;
  sol.diagnostics.recurrent_classes = eval.classes.size();
  fill_alignments(sol);
  return sol;
}

}  // namespace netotc
