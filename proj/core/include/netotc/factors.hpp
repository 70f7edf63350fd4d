#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "netotc/cost.hpp"
#include "netotc/network.hpp"
#include "netotc/otc.hpp"

namespace netotc {

/// Total map f: U -> V, with V = {0, ..., target_size - 1}.
struct FactorMap {
  std::vector<Index> map;
  Index target_size = 0;

  Index operator()(Index u) const { return map[u]; }
  /// F(u, v) = 1 iff f(u) = v.
  Eigen::MatrixXd indicator() const;
  /// f^{-1}(v) for every v, each in increasing order.
  std::vector<std::vector<Index>> fibers() const;
};

struct FactorCheck {
  bool exact = false;
  /// Largest absolute violation of the fiber weight identity.
  double max_violation = 0.0;
  /// max |PF - FQ|.
  double matrix_violation = 0.0;
};

/// Checks sum_{u' in f^-1(v')} w1(u,u') = (d1(u)/d2(f(u))) w2(f(u),v') and
/// PF = FQ. `tol` is relative to the largest right-hand side.
/// Throws NotSurjective, IndexOutOfRange, DimensionMismatch.
FactorCheck verify_factor(const Network& g1, const Network& g2, const FactorMap& f,
                          double tol = 1e-9);

/// Deterministic coupling (X, f(X)). Throws NotAFactor.
TransitionCoupling factor_coupling(const Network& g1, const Network& g2, const FactorMap& f);

/// c(u, f(u)) <= c(u, v) for every u, v.
bool check_cost_compatible(const CostMatrix& cost, const FactorMap& f);

/// Relatively independent coupling of g1 and g2 over their common factor g3.
/// Its law is p(u) q(v) / r(w) on matched fibers when that is stationary,
/// otherwise a stationary law of the same kernel on the matched states.
/// Throws NotAFactor, CommonFactorMismatch.
TransitionCoupling relatively_independent_coupling(const Network& g1, const Network& g2,
                                                   const Network& g3, const FactorMap& f,
                                                   const FactorMap& g);

struct FactorPairSpec {
  Index blocks = 6;
  Index per_block = 5;
  double sigma = 2.5;
  bool directed = false;
  /// 0 for an exact factor, otherwise the allowed relative error.
  double epsilon = 0.0;
};

/// g1 and g2 carry their embeddings as vertex attributes. f(u) = u / per_block.
struct FactorPair {
  Network g1;
  Network g2;
  FactorMap f;
};

/// Throws InvalidArgument, GenerationFailed.
FactorPair generate_factor_pair(const FactorPairSpec& spec, std::uint64_t seed);

}  // namespace netotc
