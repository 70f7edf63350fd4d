#include "netotc/transport.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "netotc/error.hpp"

namespace netotc {

namespace {

constexpr double kMarginalTol = 1e-9;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void validate_distribution(const Eigen::VectorXd& d, const char* name) {
  if (d.size() == 0) throw Error(ErrorCode::MarginalInvalid, std::string(name) + " is empty");
  if (!d.allFinite() || d.minCoeff() < 0.0)
    throw Error(ErrorCode::MarginalInvalid, std::string(name) + " has negative or non-finite mass");
  if (std::abs(d.sum() - 1.0) > kMarginalTol)
    throw Error(ErrorCode::MarginalInvalid,
                std::string(name) + " sums to " + std::to_string(d.sum()) + ", expected 1");
}

void validate_problem(const Eigen::VectorXd& mu, const Eigen::VectorXd& nu,
                      const Eigen::MatrixXd& cost) {
  validate_distribution(mu, "mu");
  validate_distribution(nu, "nu");
  if (cost.rows() != mu.size() || cost.cols() != nu.size())
    throw Error(ErrorCode::DimensionMismatch, "cost shape does not match marginals");
  if (!cost.allFinite()) throw Error(ErrorCode::InvalidArgument, "cost has non-finite entries");
}

std::vector<Index> positive_indices(const Eigen::VectorXd& d) {
  std::vector<Index> out;
  for (Eigen::Index i = 0; i < d.size(); ++i)
    if (d(i) > 0.0) out.push_back(static_cast<Index>(i));
  return out;
}

Eigen::VectorXd gather(const Eigen::VectorXd& d, const std::vector<Index>& idx) {
  Eigen::VectorXd out(idx.size());
  for (Index k = 0; k < idx.size(); ++k) out(k) = d(idx[k]);
  return out;
}

Eigen::MatrixXd gather(const Eigen::MatrixXd& m, const std::vector<Index>& rows,
                       const std::vector<Index>& cols) {
  Eigen::MatrixXd out(rows.size(), cols.size());
  for (Index i = 0; i < rows.size(); ++i)
    for (Index j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
  return out;
}

double log_sum_exp(const Eigen::VectorXd& v) {
  const double mx = v.maxCoeff();
  if (mx == kNegInf) return kNegInf;
  return mx + std::log((v.array() - mx).exp().sum());
}

// Spanning-tree bookkeeping for the transportation simplex. Nodes 0..m-1 are
// rows, m..m+n-1 are columns.
class TransportTree {
 public:
  TransportTree(Index m, Index n) : m_(m), n_(n) {}

  // Flows on a spanning tree are determined by the supplies: peel leaves.
  Eigen::VectorXd flows(const std::vector<Cell>& cells, const Eigen::VectorXd& supply,
                        const Eigen::VectorXd& demand) const {
    const Index nodes = m_ + n_;
    std::vector<std::vector<Index>> inc(nodes);
    for (Index k = 0; k < cells.size(); ++k) {
      inc[cells[k].first].push_back(k);
      inc[m_ + cells[k].second].push_back(k);
    }
    std::vector<double> residual(nodes);
    for (Index i = 0; i < m_; ++i) residual[i] = supply(i);
    for (Index j = 0; j < n_; ++j) residual[m_ + j] = demand(j);
    std::vector<Index> degree(nodes);
    std::vector<bool> used(cells.size(), false);
    std::deque<Index> leaves;
    for (Index v = 0; v < nodes; ++v) {
      degree[v] = inc[v].size();
      if (degree[v] == 1) leaves.push_back(v);
    }
    Eigen::VectorXd x = Eigen::VectorXd::Zero(cells.size());
    Index assigned = 0;
    while (!leaves.empty() && assigned < cells.size()) {
      const Index v = leaves.front();
      leaves.pop_front();
      if (degree[v] != 1) continue;
      Index edge = 0;
      for (Index k : inc[v])
        if (!used[k]) edge = k;
      used[edge] = true;
      ++assigned;
      const double amount = std::max(0.0, residual[v]);
      x(edge) = amount;
      const Index other = v < m_ ? m_ + cells[edge].second : cells[edge].first;
      residual[v] -= amount;
      residual[other] -= amount;
      --degree[v];
      if (--degree[other] == 1) leaves.push_back(other);
    }
    if (assigned != cells.size())
      throw Error(ErrorCode::InvalidArgument, "transport basis is not a spanning tree");
    return x;
  }

  // BFS from node 0: potentials, parents and depths.
  void orient(const std::vector<Cell>& cells, const Eigen::MatrixXd& cost) {
    const Index nodes = m_ + n_;
    std::vector<std::vector<Index>> inc(nodes);
    for (Index k = 0; k < cells.size(); ++k) {
      inc[cells[k].first].push_back(k);
      inc[m_ + cells[k].second].push_back(k);
    }
    potential_.assign(nodes, 0.0);
    parent_.assign(nodes, kNone);
    parent_edge_.assign(nodes, kNone);
    depth_.assign(nodes, kNone);
    depth_[0] = 0;
    std::deque<Index> queue{0};
    while (!queue.empty()) {
      const Index v = queue.front();
      queue.pop_front();
      for (Index k : inc[v]) {
        const Index w = v < m_ ? m_ + cells[k].second : cells[k].first;
        if (depth_[w] != kNone) continue;
        depth_[w] = depth_[v] + 1;
        parent_[w] = v;
        parent_edge_[w] = k;
        // u_i + v_j = c_ij on basic cells, u_0 = 0.
        potential_[w] = cost(cells[k].first, cells[k].second) - potential_[v];
        queue.push_back(w);
      }
    }
    for (Index v = 0; v < nodes; ++v)
      if (depth_[v] == kNone)
        throw Error(ErrorCode::InvalidArgument, "transport basis is not a spanning tree");
  }

  double row_potential(Index i) const { return potential_[i]; }
  double col_potential(Index j) const { return potential_[m_ + j]; }

  // Tree edges on the path from column node of `col` to row node `row`, in
  // walking order starting at the column.
  std::vector<Index> path(Index row, Index col) const {
    Index a = m_ + col;
    Index b = row;
    std::vector<Index> from_a, from_b;
    while (depth_[a] > depth_[b]) {
      from_a.push_back(parent_edge_[a]);
      a = parent_[a];
    }
    while (depth_[b] > depth_[a]) {
      from_b.push_back(parent_edge_[b]);
      b = parent_[b];
    }
    while (a != b) {
      from_a.push_back(parent_edge_[a]);
      a = parent_[a];
      from_b.push_back(parent_edge_[b]);
      b = parent_[b];
    }
    from_a.insert(from_a.end(), from_b.rbegin(), from_b.rend());
    return from_a;
  }

 private:
  static constexpr Index kNone = static_cast<Index>(-1);
  Index m_, n_;
  std::vector<double> potential_;
  std::vector<Index> parent_, parent_edge_, depth_;
};

std::vector<Cell> north_west_corner(const Eigen::VectorXd& supply, const Eigen::VectorXd& demand) {
  const Index m = supply.size(), n = demand.size();
  std::vector<Cell> cells;
  cells.reserve(m + n - 1);
  double ra = supply(0), rb = demand(0);
  Index i = 0, j = 0;
  cells.emplace_back(0, 0);
  while (i + 1 < m || j + 1 < n) {
    const double x = std::min(ra, rb);
    ra -= x;
    rb -= x;
    const bool advance_row = (j + 1 == n) || (i + 1 < m && ra <= rb);
    if (advance_row) {
      ++i;
      ra = supply(i);
    } else {
      ++j;
      rb = demand(j);
    }
    cells.emplace_back(i, j);
  }
  return cells;
}

}  // namespace

double Coupling::marginal_error() const {
  const double r = (plan.rowwise().sum() - row_marginal).cwiseAbs().maxCoeff();
  const double c = (plan.colwise().sum().transpose() - col_marginal).cwiseAbs().maxCoeff();
  return std::max(r, c);
}

Eigen::MatrixXd TransportSolution::reduced_costs(const Eigen::MatrixXd& cost) const {
  Eigen::MatrixXd rc = cost;
  rc.colwise() -= row_potential;
  rc.rowwise() -= col_potential.transpose();
  return rc;
}

TransportSolution solve_transport(const Eigen::VectorXd& supply, const Eigen::VectorXd& demand,
                                  const Eigen::MatrixXd& cost, const TransportOptions& options) {
  const Index m = supply.size(), n = demand.size();
  if (m == 0 || n == 0 || cost.rows() != supply.size() || cost.cols() != demand.size())
    throw Error(ErrorCode::DimensionMismatch, "transport problem shape mismatch");
  if (supply.minCoeff() <= 0.0 || demand.minCoeff() <= 0.0)
    throw Error(ErrorCode::MarginalInvalid, "transport supplies and demands must be positive");

  TransportTree tree(m, n);
  std::vector<Cell> basis = options.warm_start ? *options.warm_start : north_west_corner(supply, demand);
  if (basis.size() != m + n - 1)
    throw Error(ErrorCode::InvalidArgument, "transport basis has the wrong size");
  Eigen::VectorXd x = tree.flows(basis, supply, demand);

  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> is_basic =
      Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(m, n, false);
  for (const auto& [i, j] : basis) is_basic(i, j) = true;

  const double scale = std::max(1.0, cost.cwiseAbs().maxCoeff());
  const double tol = options.tolerance * scale;
  const int max_pivots = static_cast<int>(50 * (m + n) * (m + n) + 1000);
  const Index bland_after = 2 * (m + n);

  int pivots = 0;
  Index degenerate_run = 0;
  for (;;) {
    tree.orient(basis, cost);
    // Pricing: Dantzig's rule, Bland's rule while stalling on degenerate pivots.
    const bool bland = degenerate_run >= bland_after;
    double best = -tol;
    Cell entering{m, n};
    for (Index i = 0; i < m && !(bland && entering.first < m); ++i) {
      for (Index j = 0; j < n; ++j) {
        if (is_basic(i, j)) continue;
        if (options.allowed && !(*options.allowed)(i, j)) continue;
        const double rc = cost(i, j) - tree.row_potential(i) - tree.col_potential(j);
        if (rc < best) {
          best = rc;
          entering = {i, j};
          if (bland) break;
        }
      }
    }
    if (entering.first == m) break;
    if (++pivots > max_pivots)
      throw Error(ErrorCode::NumericalNonConvergence, "transportation simplex pivot cap reached");

    const std::vector<Index> cycle = tree.path(entering.first, entering.second);
    // Signs along the path alternate starting with a decrease.
    double theta = std::numeric_limits<double>::infinity();
    Index leaving_pos = 0;
    for (Index p = 0; p < cycle.size(); p += 2) {
      const Index k = cycle[p];
      const bool better = x(k) < theta ||
                          (bland && x(k) == theta && basis[k] < basis[cycle[leaving_pos]]);
      if (better) {
        theta = x(k);
        leaving_pos = p;
      }
    }
    degenerate_run = theta > 0.0 ? 0 : degenerate_run + 1;
    for (Index p = 0; p < cycle.size(); ++p) {
      const Index k = cycle[p];
      x(k) = (p % 2 == 0) ? x(k) - theta : x(k) + theta;
    }
    const Index leaving = cycle[leaving_pos];
    x(leaving) = 0.0;
    is_basic(basis[leaving].first, basis[leaving].second) = false;
    basis[leaving] = entering;
    x(leaving) = theta;
    is_basic(entering.first, entering.second) = true;
  }

  TransportSolution out;
  out.plan = Eigen::MatrixXd::Zero(m, n);
  for (Index k = 0; k < basis.size(); ++k)
    out.plan(basis[k].first, basis[k].second) = std::max(0.0, x(k));
  out.value = (out.plan.array() * cost.array()).sum();
  out.row_potential.resize(m);
  out.col_potential.resize(n);
  for (Index i = 0; i < m; ++i) out.row_potential(i) = tree.row_potential(i);
  for (Index j = 0; j < n; ++j) out.col_potential(j) = tree.col_potential(j);
  out.basis = std::move(basis);
  out.pivots = pivots;
  return out;
}

TransportResult ot_exact(const Eigen::VectorXd& mu, const Eigen::VectorXd& nu,
                         const Eigen::MatrixXd& cost) {
  validate_problem(mu, nu, cost);
  const auto rows = positive_indices(mu);
  const auto cols = positive_indices(nu);
  Eigen::VectorXd a = gather(mu, rows);
  Eigen::VectorXd b = gather(nu, cols);
  // Equalize totals so the tree flows close exactly.
  b *= a.sum() / b.sum();
  const TransportSolution sol = solve_transport(a, b, gather(cost, rows, cols));

  TransportResult out;
  out.coupling.plan = Eigen::MatrixXd::Zero(mu.size(), nu.size());
  for (Index i = 0; i < rows.size(); ++i)
    for (Index j = 0; j < cols.size(); ++j) out.coupling.plan(rows[i], cols[j]) = sol.plan(i, j);
  out.coupling.row_marginal = mu;
  out.coupling.col_marginal = nu;
  out.value = (out.coupling.plan.array() * cost.array()).sum();
  return out;
}

SinkhornResult ot_sinkhorn(const Eigen::VectorXd& mu, const Eigen::VectorXd& nu,
                           const Eigen::MatrixXd& cost, double xi, int iters,
                           const Eigen::VectorXd& initial_col_scaling) {
  validate_problem(mu, nu, cost);
  if (!(xi > 0.0) || !std::isfinite(xi))
    throw Error(ErrorCode::InvalidArgument, "regularization xi must be positive");
  if (iters < 1) throw Error(ErrorCode::InvalidArgument, "sinkhorn needs at least one iteration");

  const auto rows = positive_indices(mu);
  const auto cols = positive_indices(nu);
  const Index m = rows.size(), n = cols.size();
  const Eigen::VectorXd log_a = gather(mu, rows).array().log();
  const Eigen::VectorXd log_b = gather(nu, cols).array().log();
  const Eigen::MatrixXd log_kernel = -xi * gather(cost, rows, cols);
  if (!log_kernel.allFinite())
    throw Error(ErrorCode::NumericalUnderflow, "xi * cost overflows; rescale the cost");

  Eigen::VectorXd f = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
  if (initial_col_scaling.size() == nu.size()) g = gather(initial_col_scaling, cols);
  else if (initial_col_scaling.size() != 0)
    throw Error(ErrorCode::DimensionMismatch, "initial scaling does not match the column marginal");
  Eigen::MatrixXd plan(m, n);
  SinkhornResult out;
  out.residual_history.reserve(iters);
  for (int it = 0; it < iters; ++it) {
    for (Index i = 0; i < m; ++i)
      f(i) = log_a(i) - log_sum_exp(log_kernel.row(i).transpose() + g);
    for (Index j = 0; j < n; ++j) g(j) = log_b(j) - log_sum_exp(log_kernel.col(j) + f);
    if (!f.allFinite() || !g.allFinite())
      throw Error(ErrorCode::NumericalUnderflow, "sinkhorn scalings are not finite");
    plan = ((log_kernel.colwise() + f).rowwise() + g.transpose()).array().exp();
    out.residual_history.push_back((plan.rowwise().sum().array() - log_a.array().exp()).abs().sum());
  }

  out.coupling.plan = Eigen::MatrixXd::Zero(mu.size(), nu.size());
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j) out.coupling.plan(rows[i], cols[j]) = plan(i, j);
  out.coupling.row_marginal = mu;
  out.coupling.col_marginal = nu;
  out.value = (out.coupling.plan.array() * cost.array()).sum();
  out.marginal_residual = out.residual_history.back();
  out.col_scaling = Eigen::VectorXd::Zero(nu.size());
  for (Index j = 0; j < n; ++j) out.col_scaling(cols[j]) = g(j);
  return out;
}

Eigen::MatrixXd round_to_marginals(const Eigen::MatrixXd& plan, const Eigen::VectorXd& mu,
                                   const Eigen::VectorXd& nu) {
  Eigen::MatrixXd x = plan;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double s = x.row(i).sum();
    if (s > mu(i)) x.row(i) *= mu(i) / s;
  }
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double s = x.col(j).sum();
    if (s > nu(j)) x.col(j) *= nu(j) / s;
  }
  const Eigen::VectorXd err_r = (mu - x.rowwise().sum()).cwiseMax(0.0);
  const Eigen::VectorXd err_c = (nu - x.colwise().sum().transpose()).cwiseMax(0.0);
  const double total = err_r.sum();
  if (total > 0.0) x += err_r * err_c.transpose() / total;
  return x;
}

double total_variation(const Eigen::VectorXd& mu, const Eigen::VectorXd& nu) {
  if (mu.size() != nu.size())
    throw Error(ErrorCode::DimensionMismatch, "total variation needs equal-length vectors");
  return 0.5 * (mu - nu).cwiseAbs().sum();
}

}  // namespace netotc
