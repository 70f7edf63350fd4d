#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "netotc/network.hpp"

namespace netotc {

enum class CostRule {
  ZeroOneIdentity,
  AttributeZeroOne,
  DegreeSquared,
  StandardizedDegreeSquared,
  Euclidean,
  SquaredEuclidean,
  Custom,
};

std::string_view to_string(CostRule rule) noexcept;

/// Nonnegative finite |U| x |V| cost c(u, v), tagged with the rule that built it.
class CostMatrix {
 public:
  CostMatrix() = default;
  /// Throws InvariantViolation on negative or non-finite entries.
  explicit CostMatrix(Eigen::MatrixXd values, CostRule rule = CostRule::Custom);

  const Eigen::MatrixXd& values() const { return values_; }
  CostRule rule() const { return rule_; }
  Index rows() const { return static_cast<Index>(values_.rows()); }
  Index cols() const { return static_cast<Index>(values_.cols()); }
  double operator()(Index u, Index v) const { return values_(u, v); }

 private:
  Eigen::MatrixXd values_;
  CostRule rule_ = CostRule::Custom;
};

/// c(u,v) = 1 if u != v, else 0.
CostMatrix cost_zero_one_identity(Index n);

/// c(u,v) = 1 unless the discrete labels agree. Throws MissingAttributes.
CostMatrix cost_attribute(std::span<const std::string> labels1,
                          std::span<const std::string> labels2);
CostMatrix cost_attribute(const Network& g1, const Network& g2);

/// c(u,v) = (deg(u) - deg(v))^2 on weighted degrees; `standardized` divides
/// each degree by its network's total degree first.
CostMatrix cost_degree(const Network& g1, const Network& g2, bool standardized,
                       DegreeMode mode = DegreeMode::Out);

/// Pairwise (squared) Euclidean distance between embedding rows.
/// Throws DimensionMismatch.
CostMatrix cost_embedding(const Eigen::MatrixXd& emb1, const Eigen::MatrixXd& emb2,
                          bool squared);
/// Uses the networks' stored embeddings. Throws MissingAttributes.
CostMatrix cost_embedding(const Network& g1, const Network& g2, bool squared);

}  // namespace netotc
