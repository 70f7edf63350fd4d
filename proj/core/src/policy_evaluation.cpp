#include "netotc/policy_evaluation.hpp"

#include <algorithm>
#include <string>

#include <Eigen/SparseLU>

#include "netotc/error.hpp"

namespace netotc {

namespace {

using SparseColMajor = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

Eigen::VectorXd solve_sparse(const SparseColMajor& a, const Eigen::VectorXd& rhs, const char* what) {
  Eigen::SparseLU<SparseColMajor, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success)
    throw Error(ErrorCode::NumericalNonConvergence,
                std::string("singular system while solving for ") + what);
  Eigen::VectorXd x = lu.solve(rhs);
  if (lu.info() != Eigen::Success || !x.allFinite())
    throw Error(ErrorCode::NumericalNonConvergence, std::string("solve failed for ") + what);
  return x;
}

}  // namespace

Index PolicyEvaluation::best_class() const {
  Index best = 0;
  for (Index k = 1; k < classes.size(); ++k)
    if (classes[k].gain < classes[best].gain) best = k;
  return best;
}

Eigen::VectorXd PolicyEvaluation::best_law(Index states) const {
  Eigen::VectorXd law = Eigen::VectorXd::Zero(states);
  const RecurrentClass& cls = classes[best_class()];
  for (Index k = 0; k < cls.states.size(); ++k) law(cls.states[k]) = cls.law(k);
  return law;
}

PolicyEvaluation evaluate_policy(const SparseKernel& kernel, const Eigen::VectorXd& cost) {
  const Index n = static_cast<Index>(kernel.rows());
  if (kernel.cols() != kernel.rows() || cost.size() != kernel.rows())
    throw Error(ErrorCode::DimensionMismatch, "kernel and cost sizes disagree");

  std::vector<std::vector<Index>> adjacency(n);
  for (Index s = 0; s < n; ++s)
    for (SparseKernel::InnerIterator it(kernel, static_cast<Eigen::Index>(s)); it; ++it)
      if (it.value() > 0.0) adjacency[s].push_back(static_cast<Index>(it.col()));
  const Components comps = strongly_connected_components(adjacency);

  std::vector<bool> closed(comps.count, true);
  for (Index s = 0; s < n; ++s)
    for (Index t : adjacency[s])
      if (comps.component_of[t] != comps.component_of[s]) closed[comps.component_of[s]] = false;

  PolicyEvaluation out;
  out.gain = Eigen::VectorXd::Zero(n);
  out.bias = Eigen::VectorXd::Zero(n);

  // Local position of each state inside its own block (class or transient set).
  constexpr Index kTransient = static_cast<Index>(-1);
  std::vector<Index> class_of(n, kTransient), local(n, 0);
  std::vector<std::vector<Index>> members(comps.count);
  for (Index s = 0; s < n; ++s) members[comps.component_of[s]].push_back(s);
  // Order classes by their smallest state so class indices are deterministic.
  std::vector<Index> closed_ids;
  for (Index k = 0; k < comps.count; ++k)
    if (closed[k]) closed_ids.push_back(k);
  std::sort(closed_ids.begin(), closed_ids.end(),
            [&](Index a, Index b) { return members[a].front() < members[b].front(); });

  for (Index k : closed_ids) {
    RecurrentClass cls;
    cls.states = members[k];
    const Index m = cls.states.size();
    for (Index i = 0; i < m; ++i) {
      class_of[cls.states[i]] = out.classes.size();
      local[cls.states[i]] = i;
    }
    Eigen::VectorXd c_local(m);
    for (Index i = 0; i < m; ++i) c_local(i) = cost(cls.states[i]);

    if (m == 1) {
      cls.law = Eigen::VectorXd::Ones(1);
      cls.gain = c_local(0);
      out.gain(cls.states[0]) = cls.gain;
      out.classes.push_back(std::move(cls));
      continue;
    }

    // Stationary law: (I - R_CC)^T pi = 0 with the last equation replaced by sum(pi) = 1.
    std::vector<Triplet> st, bt;
    for (Index i = 0; i < m; ++i) {
      const Index s = cls.states[i];
      if (i + 1 < m) st.emplace_back(i, i, 1.0);
      if (i != 0) bt.emplace_back(i, i, 1.0);
      for (SparseKernel::InnerIterator it(kernel, static_cast<Eigen::Index>(s)); it; ++it) {
        const Index j = local[static_cast<Index>(it.col())];
        if (j + 1 < m) st.emplace_back(j, i, -it.value());
        if (i != 0) bt.emplace_back(i, j, -it.value());
      }
      st.emplace_back(m - 1, i, 1.0);
    }
    bt.emplace_back(0, 0, 1.0);
    SparseColMajor a(m, m), b(m, m);
    a.setFromTriplets(st.begin(), st.end());
    b.setFromTriplets(bt.begin(), bt.end());

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
    rhs(m - 1) = 1.0;
    Eigen::VectorXd law = solve_sparse(a, rhs, "a class stationary law").cwiseMax(0.0);
    law /= law.sum();
    cls.gain = law.dot(c_local);

    // Bias with h(first) = 0, then shifted to zero mean under the law.
    Eigen::VectorXd brhs = c_local.array() - cls.gain;
    brhs(0) = 0.0;
    Eigen::VectorXd h = solve_sparse(b, brhs, "a class bias");
    h.array() -= law.dot(h);

    for (Index i = 0; i < m; ++i) {
      out.gain(cls.states[i]) = cls.gain;
      out.bias(cls.states[i]) = h(i);
    }
    cls.law = std::move(law);
    out.classes.push_back(std::move(cls));
  }

  std::vector<Index> transient;
  for (Index s = 0; s < n; ++s)
    if (class_of[s] == kTransient) {
      local[s] = transient.size();
      transient.push_back(s);
    }
  if (!transient.empty()) {
    const Index m = transient.size();
    std::vector<Triplet> tt;
    Eigen::VectorXd g_rhs = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd h_link = Eigen::VectorXd::Zero(m);
    for (Index i = 0; i < m; ++i) {
      const Index s = transient[i];
      tt.emplace_back(i, i, 1.0);
      for (SparseKernel::InnerIterator it(kernel, static_cast<Eigen::Index>(s)); it; ++it) {
        const Index t = static_cast<Index>(it.col());
        if (class_of[t] == kTransient) {
          tt.emplace_back(i, local[t], -it.value());
        } else {
          g_rhs(i) += it.value() * out.gain(t);
          h_link(i) += it.value() * out.bias(t);
        }
      }
    }
    SparseColMajor a(m, m);
    a.setFromTriplets(tt.begin(), tt.end());
    Eigen::SparseLU<SparseColMajor, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(a);
    if (lu.info() != Eigen::Success)
      throw Error(ErrorCode::NumericalNonConvergence, "singular transient system");
    const Eigen::VectorXd g_t = lu.solve(g_rhs);
    Eigen::VectorXd h_rhs(m);
    for (Index i = 0; i < m; ++i) h_rhs(i) = cost(transient[i]) - g_t(i) + h_link(i);
    const Eigen::VectorXd h_t = lu.solve(h_rhs);
    if (!g_t.allFinite() || !h_t.allFinite())
      throw Error(ErrorCode::NumericalNonConvergence, "transient solve produced non-finite values");
    for (Index i = 0; i < m; ++i) {
      out.gain(transient[i]) = g_t(i);
      out.bias(transient[i]) = h_t(i);
    }
  }

  const Eigen::VectorXd rg = kernel * out.gain;
  const Eigen::VectorXd rh = kernel * out.bias;
  out.residual = std::max((out.gain - rg).cwiseAbs().maxCoeff(),
                          (out.gain + out.bias - cost - rh).cwiseAbs().maxCoeff());
  return out;
}

}  // namespace netotc
