#include "netotc/network.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "netotc/error.hpp"

namespace netotc {

namespace {

constexpr double kRowSumTol = 1e-12;
constexpr double kStationaryResidualTol = 1e-10;
constexpr Index kDenseStationaryLimit = 512;

std::string edge_name(Index u, Index v) {
  return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

std::vector<std::vector<Index>> support_graph(const Eigen::MatrixXd& m) {
  std::vector<std::vector<Index>> adj(static_cast<Index>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j) > 0.0) adj[static_cast<Index>(i)].push_back(static_cast<Index>(j));
  return adj;
}

}  // namespace

Network::Network(Eigen::MatrixXd weights, bool directed, VertexAttributes attributes)
    : weights_(std::move(weights)), directed_(directed), attributes_(std::move(attributes)) {
  if (weights_.rows() != weights_.cols())
    throw Error(ErrorCode::DimensionMismatch, "weight matrix must be square");
  if (weights_.rows() == 0)
    throw Error(ErrorCode::InvalidArgument, "network needs at least one vertex");
  for (Eigen::Index i = 0; i < weights_.rows(); ++i) {
    for (Eigen::Index j = 0; j < weights_.cols(); ++j) {
      const double w = weights_(i, j);
      if (!std::isfinite(w) || w < 0.0)
        throw Error(ErrorCode::NonPositiveWeight,
                    "edge " + edge_name(static_cast<Index>(i), static_cast<Index>(j)) +
                        " has invalid weight " + std::to_string(w));
      if (!directed_ && w != weights_(j, i))
        throw Error(ErrorCode::AsymmetricUndirected,
                    "undirected weight matrix is not symmetric at " +
                        edge_name(static_cast<Index>(i), static_cast<Index>(j)));
    }
  }
  if (attributes_.has_labels() && attributes_.labels.size() != size())
    throw Error(ErrorCode::DimensionMismatch, "label count does not match vertex count");
  if (attributes_.has_embedding() && static_cast<Index>(attributes_.embedding.rows()) != size())
    throw Error(ErrorCode::DimensionMismatch, "embedding rows do not match vertex count");
}

Index Network::edge_count() const {
  return static_cast<Index>((weights_.array() > 0.0).count());
}

std::vector<WeightedEdge> Network::edges() const {
  std::vector<WeightedEdge> out;
  for (Index u = 0; u < size(); ++u)
    for (Index v = 0; v < size(); ++v)
      if (has_edge(u, v)) out.push_back({u, v, weights_(u, v)});
  return out;
}

std::vector<Index> Network::successors(Index u) const {
  std::vector<Index> out;
  for (Index v = 0; v < size(); ++v)
    if (has_edge(u, v)) out.push_back(v);
  return out;
}

Network Network::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor))
    throw Error(ErrorCode::InvalidArgument, "scale factor must be positive");
  return Network(weights_ * factor, directed_, attributes_);
}

Network Network::with_attributes(VertexAttributes attributes) const {
  return Network(weights_, directed_, std::move(attributes));
}

std::vector<Index> MarkovKernel::support(Index from) const {
  std::vector<Index> out;
  for (Index v = 0; v < size(); ++v)
    if (matrix(from, v) > 0.0) out.push_back(v);
  return out;
}

Network build_network(Index n, std::span<const WeightedEdge> edges, bool directed,
                      VertexAttributes attributes) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "network needs at least one vertex");
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : edges) {
    if (e.from >= n || e.to >= n)
      throw Error(ErrorCode::IndexOutOfRange,
                  "edge " + edge_name(e.from, e.to) + " out of range for n=" + std::to_string(n));
    if (!(e.weight > 0.0) || !std::isfinite(e.weight))
      throw Error(ErrorCode::NonPositiveWeight,
                  "edge " + edge_name(e.from, e.to) + " has non-positive weight " +
                      std::to_string(e.weight));
    if (w(e.from, e.to) != 0.0 && w(e.from, e.to) != e.weight) {
      if (!directed)
        throw Error(ErrorCode::AsymmetricUndirected,
                    "edge " + edge_name(e.from, e.to) + " listed with conflicting weights");
      throw Error(ErrorCode::InvalidArgument, "duplicate edge " + edge_name(e.from, e.to));
    }
    w(e.from, e.to) = e.weight;
    if (!directed) {
      // The reverse orientation may already be present from an explicit listing.
      if (w(e.to, e.from) != 0.0 && w(e.to, e.from) != e.weight)
        throw Error(ErrorCode::AsymmetricUndirected,
                    "edge " + edge_name(e.from, e.to) + " disagrees with its reverse");
      w(e.to, e.from) = e.weight;
    }
  }
  return Network(std::move(w), directed, std::move(attributes));
}

MarkovKernel transition_kernel(const Network& net) {
  const Eigen::VectorXd out_degree = net.weights().rowwise().sum();
  MarkovKernel k{Eigen::MatrixXd(net.size(), net.size())};
  for (Index u = 0; u < net.size(); ++u) {
    if (!(out_degree(u) > 0.0))
      throw Error(ErrorCode::ZeroOutDegree, "vertex " + std::to_string(u) + " has no out-edge");
    k.matrix.row(u) = net.weights().row(u) / out_degree(u);
    // Re-normalize so rounding in the division does not leave the row off by > 1 ulp-scale.
    const double s = k.matrix.row(u).sum();
    if (std::abs(s - 1.0) > kRowSumTol) k.matrix.row(u) /= s;
  }
  return k;
}

bool is_strongly_connected(const Network& net) {
  return strongly_connected_components(support_graph(net.weights())).count == 1;
}

StationaryDistribution stationary_distribution(const MarkovKernel& kernel) {
  const Index n = kernel.size();
  if (strongly_connected_components(support_graph(kernel.matrix)).count != 1)
    throw Error(ErrorCode::NotStronglyConnected, "kernel is not irreducible");

  Eigen::VectorXd p(n);
  if (n <= kDenseStationaryLimit) {
    Eigen::MatrixXd a = kernel.matrix.transpose() - Eigen::MatrixXd::Identity(n, n);
    a.row(n - 1).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs(n - 1) = 1.0;
    p = a.fullPivLu().solve(rhs);
  } else {
    // Lazy chain avoids oscillation on periodic kernels.
    p = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    for (int it = 0; it < 200000; ++it) {
      Eigen::VectorXd next = 0.5 * (p + kernel.matrix.transpose() * p);
      const double delta = (next - p).lpNorm<1>();
      p = std::move(next);
      if (delta < 1e-15) break;
    }
  }
  p = p.cwiseMax(0.0);
  p /= p.sum();
  const double residual = (kernel.matrix.transpose() * p - p).lpNorm<1>();
  if (!(residual <= kStationaryResidualTol))
    throw Error(ErrorCode::NumericalNonConvergence,
                "stationary residual " + std::to_string(residual) + " exceeds tolerance");
  return {std::move(p)};
}

Eigen::VectorXd degree_vector(const Network& net, DegreeMode mode) {
  switch (mode) {
    case DegreeMode::Out:
      return net.weights().rowwise().sum();
    case DegreeMode::In:
      return net.weights().colwise().sum().transpose();
    case DegreeMode::Undirected:
      if (net.directed())
        throw Error(ErrorCode::ModeInvalidForDirected,
                    "undirected degree requested for a directed network");
      return net.weights().rowwise().sum();
  }
  return {};
}

bool networks_equivalent(const Network& g1, const Network& g2) {
  if (g1.directed() || g2.directed())
    throw Error(ErrorCode::DirectedInput, "equivalence is defined for undirected networks");
  if (g1.size() != g2.size()) return false;
  const auto& w1 = g1.weights();
  const auto& w2 = g2.weights();
  double ratio = 0.0;
  for (Index u = 0; u < g1.size(); ++u) {
    for (Index v = 0; v < g1.size(); ++v) {
      const bool e1 = w1(u, v) > 0.0;
      const bool e2 = w2(u, v) > 0.0;
      if (e1 != e2) return false;
      if (!e1) continue;
      const double r = w1(u, v) / w2(u, v);
      if (ratio == 0.0) {
        ratio = r;
      } else if (std::abs(r - ratio) > 1e-12 * ratio) {
        return false;
      }
    }
  }
  return true;
}

Components strongly_connected_components(const std::vector<std::vector<Index>>& adjacency) {
  // Iterative Tarjan.
  const Index n = adjacency.size();
  constexpr Index kUnset = static_cast<Index>(-1);
  Components out{std::vector<Index>(n, kUnset), 0};
  std::vector<Index> index(n, kUnset), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<Index> stack;
  std::vector<std::pair<Index, Index>> call;  // (vertex, next child position)
  Index counter = 0;

  for (Index root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    call.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, pos] = call.back();
      if (pos < adjacency[v].size()) {
        const Index w = adjacency[v][pos++];
        if (index[w] == kUnset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const Index done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        Index w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          out.component_of[w] = out.count;
        } while (w != done);
        ++out.count;
      }
    }
  }
  return out;
}

}  // namespace netotc
