#include "netotc/cost.hpp"

#include <cmath>

#include "netotc/error.hpp"

namespace netotc {

std::string_view to_string(CostRule rule) noexcept {
  switch (rule) {
    case CostRule::ZeroOneIdentity: return "zero_one_identity";
    case CostRule::AttributeZeroOne: return "attribute_zero_one";
    case CostRule::DegreeSquared: return "degree_squared";
    case CostRule::StandardizedDegreeSquared: return "standardized_degree_squared";
    case CostRule::Euclidean: return "euclidean";
    case CostRule::SquaredEuclidean: return "squared_euclidean";
    case CostRule::Custom: return "custom";
  }
  return "custom";
}

CostMatrix::CostMatrix(Eigen::MatrixXd values, CostRule rule)
    : values_(std::move(values)), rule_(rule) {
  if (!values_.allFinite() || (values_.size() > 0 && values_.minCoeff() < 0.0))
    throw Error(ErrorCode::InvariantViolation, "cost entries must be finite and nonnegative");
}

CostMatrix cost_zero_one_identity(Index n) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Ones(n, n);
  c.diagonal().setZero();
  return CostMatrix(std::move(c), CostRule::ZeroOneIdentity);
}

CostMatrix cost_attribute(std::span<const std::string> labels1,
                          std::span<const std::string> labels2) {
  if (labels1.empty() || labels2.empty())
    throw Error(ErrorCode::MissingAttributes, "attribute cost needs labels on both networks");
  Eigen::MatrixXd c(labels1.size(), labels2.size());
  for (Index u = 0; u < labels1.size(); ++u)
    for (Index v = 0; v < labels2.size(); ++v) c(u, v) = labels1[u] == labels2[v] ? 0.0 : 1.0;
  return CostMatrix(std::move(c), CostRule::AttributeZeroOne);
}

CostMatrix cost_attribute(const Network& g1, const Network& g2) {
  return cost_attribute(g1.attributes().labels, g2.attributes().labels);
}

CostMatrix cost_degree(const Network& g1, const Network& g2, bool standardized, DegreeMode mode) {
  // Undirected networks are symmetric, so out-degree is the undirected degree.
  Eigen::VectorXd d1 = degree_vector(g1, mode);
  Eigen::VectorXd d2 = degree_vector(g2, mode);
  if (standardized) {
    d1 /= d1.sum();
    d2 /= d2.sum();
  }
  Eigen::MatrixXd c(d1.size(), d2.size());
  for (Eigen::Index u = 0; u < d1.size(); ++u)
    for (Eigen::Index v = 0; v < d2.size(); ++v) {
      const double diff = d1(u) - d2(v);
      c(u, v) = diff * diff;
    }
  return CostMatrix(std::move(c), standardized ? CostRule::StandardizedDegreeSquared
                                               : CostRule::DegreeSquared);
}

CostMatrix cost_embedding(const Eigen::MatrixXd& emb1, const Eigen::MatrixXd& emb2, bool squared) {
  if (emb1.cols() != emb2.cols())
    throw Error(ErrorCode::DimensionMismatch,
                "embedding dimensions differ: " + std::to_string(emb1.cols()) + " vs " +
                    std::to_string(emb2.cols()));
  Eigen::MatrixXd c(emb1.rows(), emb2.rows());
  for (Eigen::Index u = 0; u < emb1.rows(); ++u)
    for (Eigen::Index v = 0; v < emb2.rows(); ++v) {
      const double sq = (emb1.row(u) - emb2.row(v)).squaredNorm();
      c(u, v) = squared ? sq : std::sqrt(sq);
    }
  return CostMatrix(std::move(c), squared ? CostRule::SquaredEuclidean : CostRule::Euclidean);
}

CostMatrix cost_embedding(const Network& g1, const Network& g2, bool squared) {
  if (!g1.attributes().has_embedding() || !g2.attributes().has_embedding())
    throw Error(ErrorCode::MissingAttributes, "embedding cost needs embeddings on both networks");
  return cost_embedding(g1.attributes().embedding, g2.attributes().embedding, squared);
}

}  // namespace netotc
