#include <algorithm>
#include <cmath>
#include <string>

#include "netotc/error.hpp"
#include "netotc/otc.hpp"
#include "otc_detail.hpp"

namespace netotc {

namespace detail {

Eigen::MatrixXd ProductSpace::restrict(const Eigen::VectorXd& values, Index u, Index v) const {
  const auto& su = succ_u[u];
  const auto& sv = succ_v[v];
  Eigen::MatrixXd out(su.size(), sv.size());
  for (Index i = 0; i < su.size(); ++i)
    for (Index j = 0; j < sv.size(); ++j) out(i, j) = values(state(su[i], sv[j]));
  return out;
}

Eigen::MatrixXd ProductSpace::independent_row(Index u, Index v) const {
  return prob_u[u] * prob_v[v].transpose();
}

ProductSpace make_product_space(const Network& g1, const Network& g2, const CostMatrix& cost) {
  if (cost.rows() != g1.size() || cost.cols() != g2.size())
    throw Error(ErrorCode::DimensionMismatch,
                "cost is " + std::to_string(cost.rows()) + "x" + std::to_string(cost.cols()) +
                    " but networks have " + std::to_string(g1.size()) + " and " +
                    std::to_string(g2.size()) + " vertices");
  if (!is_strongly_connected(g1))
    throw Error(ErrorCode::NotStronglyConnected, "first network is not strongly connected");
  if (!is_strongly_connected(g2))
    throw Error(ErrorCode::NotStronglyConnected, "second network is not strongly connected");

  ProductSpace space;
  space.p = transition_kernel(g1);
  space.q = transition_kernel(g2);
  space.nu = g1.size();
  space.nv = g2.size();
  auto fill = [](const MarkovKernel& k, std::vector<std::vector<Index>>& succ,
                 std::vector<Eigen::VectorXd>& prob) {
    succ.resize(k.size());
    prob.resize(k.size());
    for (Index u = 0; u < k.size(); ++u) {
      succ[u] = k.support(u);
      prob[u].resize(succ[u].size());
      for (Index i = 0; i < succ[u].size(); ++i) prob[u](i) = k(u, succ[u][i]);
    }
  };
  fill(space.p, space.succ_u, space.prob_u);
  fill(space.q, space.succ_v, space.prob_v);
  space.cost.resize(space.states());
  for (Index u = 0; u < space.nu; ++u)
    for (Index v = 0; v < space.nv; ++v) space.cost(space.state(u, v)) = cost(u, v);
  return space;
}

SparseKernel assemble_kernel(const ProductSpace& space, const std::vector<Eigen::MatrixXd>& rows,
                             double snap) {
  std::vector<Eigen::Triplet<double>> trip;
  for (Index u = 0; u < space.nu; ++u) {
    for (Index v = 0; v < space.nv; ++v) {
      const Index s = space.state(u, v);
      const Eigen::MatrixXd& plan = rows[s];
      const double total = (plan.array() > snap).select(plan, 0.0).sum();
      for (Index i = 0; i < space.succ_u[u].size(); ++i)
        for (Index j = 0; j < space.succ_v[v].size(); ++j)
          if (plan(i, j) > snap)
            trip.emplace_back(s, space.state(space.succ_u[u][i], space.succ_v[v][j]),
                              plan(i, j) / total);
    }
  }
  SparseKernel k(space.states(), space.states());
  k.setFromTriplets(trip.begin(), trip.end());
  k.makeCompressed();
  return k;
}

OtcSolution finish_solution(const ProductSpace& space, SparseKernel kernel,
                            const PolicyEvaluation& evaluation, const CostMatrix& cost,
                            SolverDiagnostics diagnostics) {
  OtcSolution sol;
  sol.coupling.source_size = space.nu;
  sol.coupling.target_size = space.nv;
  sol.coupling.kernel = std::move(kernel);
  sol.coupling.law = evaluation.best_law(space.states());
  sol.cost = cost;
  sol.rho = sol.coupling.law.dot(space.cost);
  diagnostics.evaluation_residual = evaluation.residual;
  diagnostics.recurrent_classes = evaluation.classes.size();
  sol.diagnostics = std::move(diagnostics);
  fill_alignments(sol);
  return sol;
}

}  // namespace detail

std::string_view to_string(SolverTag tag) noexcept {
  switch (tag) {
    case SolverTag::Exact: return "exact";
    case SolverTag::Entropic: return "entropic";
    case SolverTag::LpOracle: return "lp_oracle";
    case SolverTag::OneStepBaseline: return "one_step_baseline";
  }
  return "exact";
}

CouplingCheck check_transition_coupling(const TransitionCoupling& coupling, const MarkovKernel& p,
                                        const MarkovKernel& q) {
  const Index nu = coupling.source_size, nv = coupling.target_size;
  if (p.size() != nu || q.size() != nv || static_cast<Index>(coupling.kernel.rows()) != nu * nv)
    throw Error(ErrorCode::DimensionMismatch, "coupling does not match kernels");
  CouplingCheck check;
  Eigen::VectorXd row_u(nu), row_v(nv);
  for (Index u = 0; u < nu; ++u) {
    for (Index v = 0; v < nv; ++v) {
      const Index s = coupling.state(u, v);
      row_u.setZero();
      row_v.setZero();
      double total = 0.0;
      for (SparseKernel::InnerIterator it(coupling.kernel, static_cast<Eigen::Index>(s)); it; ++it) {
        const Index t = static_cast<Index>(it.col());
        row_u(t / nv) += it.value();
        row_v(t % nv) += it.value();
        total += it.value();
      }
      check.row_sum_violation = std::max(check.row_sum_violation, std::abs(total - 1.0));
      check.marginal_violation = std::max(
          {check.marginal_violation, (row_u - p.matrix.row(u).transpose()).cwiseAbs().maxCoeff(),
           (row_v - q.matrix.row(v).transpose()).cwiseAbs().maxCoeff()});
    }
  }
  const Eigen::VectorXd moved = coupling.kernel.transpose() * coupling.law;
  check.stationarity_residual = (moved - coupling.law).lpNorm<1>();
  check.mass_error = std::abs(coupling.law.sum() - 1.0);
  return check;
}

TransitionCoupling independent_coupling(const MarkovKernel& p, const MarkovKernel& q) {
  const Index nu = p.size(), nv = q.size();
  TransitionCoupling out;
  out.source_size = nu;
  out.target_size = nv;
  std::vector<Eigen::Triplet<double>> trip;
  for (Index u = 0; u < nu; ++u)
    for (Index v = 0; v < nv; ++v)
      for (Index a = 0; a < nu; ++a) {
        if (p(u, a) <= 0.0) continue;
        for (Index b = 0; b < nv; ++b)
          if (q(v, b) > 0.0) trip.emplace_back(u * nv + v, a * nv + b, p(u, a) * q(v, b));
      }
  out.kernel.resize(nu * nv, nu * nv);
  out.kernel.setFromTriplets(trip.begin(), trip.end());
  out.kernel.makeCompressed();
  const Eigen::VectorXd ps = stationary_distribution(p).probs;
  const Eigen::VectorXd qs = stationary_distribution(q).probs;
  out.law.resize(nu * nv);
  for (Index u = 0; u < nu; ++u)
    for (Index v = 0; v < nv; ++v) out.law(u * nv + v) = ps(u) * qs(v);
  return out;
}

TransportResult marginal_ot_baseline(const Network& g1, const Network& g2, const CostMatrix& cost) {
  if (cost.rows() != g1.size() || cost.cols() != g2.size())
    throw Error(ErrorCode::DimensionMismatch, "cost shape does not match networks");
  const Eigen::VectorXd p = stationary_distribution(transition_kernel(g1)).probs;
  const Eigen::VectorXd q = stationary_distribution(transition_kernel(g2)).probs;
  return ot_exact(p, q, cost.values());
}

double multistep_average_cost(const OtcSolution& solution, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
  const TransitionCoupling& c = solution.coupling;
  Eigen::VectorXd flat(c.states());
  for (Index u = 0; u < c.source_size; ++u)
    for (Index v = 0; v < c.target_size; ++v) flat(c.state(u, v)) = solution.cost(u, v);
  Eigen::VectorXd mu = c.law;
  double total = 0.0;
  for (int j = 0; j < k; ++j) {
    total += mu.dot(flat);
    if (j + 1 < k) mu = c.kernel.transpose() * mu;
  }
  return total / k;
}

LowerBoundReport verify_lower_bounds(const Network& g1, const Network& g2,
                                     const OtcSolution& solution) {
  if (g1.directed() || g2.directed())
    throw Error(ErrorCode::PreconditionViolated, "lower bounds need undirected networks");
  if (g1.size() != g2.size())
    throw Error(ErrorCode::PreconditionViolated, "lower bounds need a common vertex set");
  if (solution.cost.rule() != CostRule::ZeroOneIdentity)
    throw Error(ErrorCode::PreconditionViolated, "lower bounds need the zero-one identity cost");
  const Eigen::VectorXd d1 = degree_vector(g1, DegreeMode::Undirected);
  const Eigen::VectorXd d2 = degree_vector(g2, DegreeMode::Undirected);
  const double total = d1.sum();
  if (std::abs(total - d2.sum()) > 1e-9 * total)
    throw Error(ErrorCode::PreconditionViolated, "networks must have equal total degree");

  LowerBoundReport r;
  r.rho = solution.rho;
  r.degree_bound = (d1 - d2).cwiseAbs().sum() / (2.0 * total);
  r.weight_bound = (g1.weights() - g2.weights()).cwiseAbs().sum() / (4.0 * total);
  r.marginal_ot_bound = marginal_ot_baseline(g1, g2, solution.cost).value;
  constexpr double slack = 1e-9;
  r.holds = r.rho >= r.degree_bound - slack && r.rho >= r.weight_bound - slack &&
            r.rho >= r.marginal_ot_bound - slack;
  return r;
}

std::vector<Index> hard_alignment(const Eigen::MatrixXd& vertex_alignment) {
  std::vector<Index> psi(vertex_alignment.rows(), 0);
  for (Eigen::Index u = 0; u < vertex_alignment.rows(); ++u) {
    Index best = 0;
    for (Eigen::Index v = 1; v < vertex_alignment.cols(); ++v)
      if (vertex_alignment(u, v) > vertex_alignment(u, static_cast<Eigen::Index>(best)))
        best = static_cast<Index>(v);
    psi[u] = best;
  }
  return psi;
}

void fill_alignments(OtcSolution& solution) {
  const TransitionCoupling& c = solution.coupling;
  const Index nv = c.target_size;
  solution.vertex_alignment.resize(c.source_size, nv);
  for (Index u = 0; u < c.source_size; ++u)
    for (Index v = 0; v < nv; ++v) solution.vertex_alignment(u, v) = c.law(c.state(u, v));
  solution.edge_alignment.clear();
  for (Index s = 0; s < c.states(); ++s) {
    if (!(c.law(s) > 0.0)) continue;
    for (SparseKernel::InnerIterator it(c.kernel, static_cast<Eigen::Index>(s)); it; ++it) {
      const Index t = static_cast<Index>(it.col());
      const double mass = c.law(s) * it.value();
      if (mass > 0.0) solution.edge_alignment.push_back({s / nv, t / nv, s % nv, t % nv, mass});
    }
  }
}

}  // namespace netotc
