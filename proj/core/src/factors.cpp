#include "netotc/factors.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "netotc/error.hpp"

namespace netotc {

namespace {

void validate_map(const Network& g1, const Network& g2, const FactorMap& f) {
  if (f.map.size() != g1.size() || f.target_size != g2.size())
    throw Error(ErrorCode::DimensionMismatch, "factor map does not match the network sizes");
  std::vector<bool> hit(g2.size(), false);
  for (Index u = 0; u < f.map.size(); ++u) {
    if (f.map[u] >= g2.size())
      throw Error(ErrorCode::IndexOutOfRange,
                  "f(" + std::to_string(u) + ") = " + std::to_string(f.map[u]) + " is out of range");
    hit[f.map[u]] = true;
  }
  for (Index v = 0; v < hit.size(); ++v)
    if (!hit[v]) throw Error(ErrorCode::NotSurjective, "vertex " + std::to_string(v) + " has no preimage");
}

void require_factor(const Network& g1, const Network& g2, const FactorMap& f) {
  const FactorCheck check = verify_factor(g1, g2, f);
  if (!check.exact)
    throw Error(ErrorCode::NotAFactor,
                "factor identity violated by " + std::to_string(check.max_violation));
}

void add_independent_row(std::vector<Eigen::Triplet<double>>& trip, const MarkovKernel& p,
                         const MarkovKernel& q, Index u, Index v) {
  const Index nv = q.size();
  for (Index a : p.support(u))
    for (Index b : q.support(v)) trip.emplace_back(u * nv + v, a * nv + b, p(u, a) * q(v, b));
}

TransitionCoupling make_coupling(Index nu, Index nv, std::vector<Eigen::Triplet<double>>& trip,
                                 Eigen::VectorXd law) {
  TransitionCoupling out;
  out.source_size = nu;
  out.target_size = nv;
  out.kernel.resize(nu * nv, nu * nv);
  out.kernel.setFromTriplets(trip.begin(), trip.end());
  out.kernel.makeCompressed();
  out.law = std::move(law);
  return out;
}

// Coupling of positive marginals r and c (equal totals) that is neither
// independent nor deterministic: a convex mix of the product plan and a
// north-west-corner plan on randomly ordered rows and columns.
Eigen::MatrixXd random_block(const Eigen::VectorXd& r, const Eigen::VectorXd& c, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double beta = 0.9 * unit(rng);
  std::vector<Index> ro(r.size()), co(c.size());
  std::iota(ro.begin(), ro.end(), 0);
  std::iota(co.begin(), co.end(), 0);
  std::shuffle(ro.begin(), ro.end(), rng);
  std::shuffle(co.begin(), co.end(), rng);
  Eigen::MatrixXd nw = Eigen::MatrixXd::Zero(r.size(), c.size());
  Eigen::VectorXd rr = r, cc = c;
  Index i = 0, j = 0;
  while (i < ro.size() && j < co.size()) {
    const double m = std::min(rr(ro[i]), cc(co[j]));
    nw(ro[i], co[j]) += m;
    rr(ro[i]) -= m;
    cc(co[j]) -= m;
    if (rr(ro[i]) <= cc(co[j])) ++i;
    else ++j;
  }
  return (1.0 - beta) * (r * c.transpose()) / r.sum() + beta * nw;
}

// Zero-mean (under weights t) perturbation with max |delta| = eta.
Eigen::VectorXd perturbation(const Eigen::VectorXd& t, double eta, std::mt19937_64& rng) {
  if (eta <= 0.0 || t.size() < 2) return Eigen::VectorXd::Zero(t.size());
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  Eigen::VectorXd z(t.size());
  for (auto& x : z) x = sym(rng);
  z.array() -= t.dot(z) / t.sum();
  const double peak = z.cwiseAbs().maxCoeff();
  return peak > 0.0 ? Eigen::VectorXd(z * (eta / peak)) : Eigen::VectorXd::Zero(t.size());
}

Eigen::MatrixXd factor_weights(const FactorPairSpec& spec, const Eigen::MatrixXd& w2,
                               std::mt19937_64& rng) {
  const Index b = spec.blocks, m = spec.per_block;
  const double eta = spec.epsilon / (2.0 + spec.epsilon);
  std::uniform_real_distribution<double> share(0.2, 1.0);
  std::gamma_distribution<double> gamma(1.0, 1.0);

  std::vector<Eigen::VectorXd> t(b);
  for (auto& tv : t) {
    tv.resize(m);
    for (auto& x : tv) x = share(rng);
    tv /= tv.sum();
  }

  Eigen::MatrixXd w1 = Eigen::MatrixXd::Zero(b * m, b * m);
  for (Index a = 0; a < b; ++a) {
    for (Index c = spec.directed ? 0 : a; c < b; ++c) {
      if (w2(a, c) <= 0.0) continue;
      auto block = w1.block(a * m, c * m, m, m);
      if (spec.directed) {
        const Eigen::VectorXd row = w2(a, c) * t[a].cwiseProduct(
                                                   (1.0 + perturbation(t[a], eta, rng).array()).matrix());
        for (Index i = 0; i < m; ++i) {
          Eigen::VectorXd split(m);
          for (auto& x : split) x = gamma(rng) + 1e-12;
          block.row(i) = (row(i) / split.sum()) * split.transpose();
        }
      } else if (a == c) {
        const Eigen::VectorXd r = w2(a, a) * t[a];
        const Eigen::MatrixXd x = random_block(r, r, rng);
        block = 0.5 * (x + x.transpose());
      } else {
        const Eigen::VectorXd r =
            w2(a, c) * t[a].cwiseProduct((1.0 + perturbation(t[a], eta, rng).array()).matrix());
        const Eigen::VectorXd col =
            w2(a, c) * t[c].cwiseProduct((1.0 + perturbation(t[c], eta, rng).array()).matrix());
        block = random_block(r, col, rng);
        w1.block(c * m, a * m, m, m) = block.transpose();
      }
    }
  }
  return w1;
}

}  // namespace

Eigen::MatrixXd FactorMap::indicator() const {
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(map.size(), target_size);
  for (Index u = 0; u < map.size(); ++u) f(u, map[u]) = 1.0;
  return f;
}

std::vector<std::vector<Index>> FactorMap::fibers() const {
  std::vector<std::vector<Index>> out(target_size);
  for (Index u = 0; u < map.size(); ++u) out[map[u]].push_back(u);
  return out;
}

FactorCheck verify_factor(const Network& g1, const Network& g2, const FactorMap& f, double tol) {
  validate_map(g1, g2, f);
  const Eigen::MatrixXd ind = f.indicator();
  const Eigen::VectorXd d1 = g1.weights().rowwise().sum();
  const Eigen::VectorXd d2 = g2.weights().rowwise().sum();
  const Eigen::MatrixXd lhs = g1.weights() * ind;

  FactorCheck check;
  double scale = 0.0;
  for (Index u = 0; u < g1.size(); ++u) {
    const Index v = f(u);
    for (Index v2 = 0; v2 < g2.size(); ++v2) {
      const double rhs = d2(v) > 0.0 ? d1(u) / d2(v) * g2.weight(v, v2) : 0.0;
      scale = std::max(scale, std::abs(rhs));
      check.max_violation = std::max(check.max_violation, std::abs(lhs(u, v2) - rhs));
    }
  }
  // PF = FQ on rows with positive degree; a zero row on either side is a violation of one.
  for (Index u = 0; u < g1.size(); ++u) {
    const Index v = f(u);
    for (Index v2 = 0; v2 < g2.size(); ++v2) {
      const double pf = d1(u) > 0.0 ? lhs(u, v2) / d1(u) : 0.0;
      const double fq = d2(v) > 0.0 ? g2.weight(v, v2) / d2(v) : 0.0;
      check.matrix_violation = std::max(check.matrix_violation, std::abs(pf - fq));
    }
    if ((d1(u) > 0.0) != (d2(v) > 0.0)) check.matrix_violation = std::max(check.matrix_violation, 1.0);
  }
  check.exact = check.max_violation <= tol * std::max(1.0, scale) && check.matrix_violation <= tol;
  return check;
}

TransitionCoupling factor_coupling(const Network& g1, const Network& g2, const FactorMap& f) {
  require_factor(g1, g2, f);
  const MarkovKernel p = transition_kernel(g1);
  const MarkovKernel q = transition_kernel(g2);
  const Index nu = g1.size(), nv = g2.size();
  std::vector<Eigen::Triplet<double>> trip;
  for (Index u = 0; u < nu; ++u)
    for (Index v = 0; v < nv; ++v) {
      if (f(u) != v) {
        add_independent_row(trip, p, q, u, v);
        continue;
      }
      for (Index a : p.support(u)) trip.emplace_back(u * nv + v, a * nv + f(a), p(u, a));
    }
  const Eigen::VectorXd pu = stationary_distribution(p).probs;
  Eigen::VectorXd law = Eigen::VectorXd::Zero(nu * nv);
  for (Index u = 0; u < nu; ++u) law(u * nv + f(u)) = pu(u);
  return make_coupling(nu, nv, trip, std::move(law));
}

bool check_cost_compatible(const CostMatrix& cost, const FactorMap& f) {
  if (cost.rows() != f.map.size() || cost.cols() != f.target_size)
    throw Error(ErrorCode::DimensionMismatch, "cost shape does not match the factor map");
  for (Index u = 0; u < cost.rows(); ++u)
    if (cost(u, f(u)) > cost.values().row(static_cast<Eigen::Index>(u)).minCoeff()) return false;
  return true;
}

TransitionCoupling relatively_independent_coupling(const Network& g1, const Network& g2,
                                                   const Network& g3, const FactorMap& f,
                                                   const FactorMap& g) {
  if (f.target_size != g3.size() || g.target_size != g3.size())
    throw Error(ErrorCode::CommonFactorMismatch, "maps do not share the common factor's vertex set");
  require_factor(g1, g3, f);
  require_factor(g2, g3, g);
  const MarkovKernel p = transition_kernel(g1);
  const MarkovKernel q = transition_kernel(g2);
  const MarkovKernel z = transition_kernel(g3);
  const Eigen::VectorXd pu = stationary_distribution(p).probs;
  const Eigen::VectorXd qv = stationary_distribution(q).probs;
  const Eigen::VectorXd pz = stationary_distribution(z).probs;
  const Index nu = g1.size(), nv = g2.size();

  std::vector<Eigen::Triplet<double>> trip;
  Eigen::VectorXd law = Eigen::VectorXd::Zero(nu * nv);
  for (Index u = 0; u < nu; ++u)
    for (Index v = 0; v < nv; ++v) {
      const Index w = f(u);
      if (w != g(v)) {
        add_independent_row(trip, p, q, u, v);
        continue;
      }
      law(u * nv + v) = pu(u) * qv(v) / pz(w);
      for (Index a : p.support(u))
        for (Index b : q.support(v))
          if (f(a) == g(b)) trip.emplace_back(u * nv + v, a * nv + b, p(u, a) * q(v, b) / z(w, f(a)));
    }
  TransitionCoupling out = make_coupling(nu, nv, trip, std::move(law));
  const Eigen::RowVectorXd drift = out.law.transpose() * out.kernel - out.law.transpose();
  if (drift.lpNorm<1>() > 1e-12) {
    // Directed factors need not be reverse lumpable; take a stationary law of
    // the same kernel on the closed set of fiber-matched states instead.
    Eigen::VectorXd off_fiber = Eigen::VectorXd::Ones(nu * nv);
    for (Index u = 0; u < nu; ++u)
      for (Index v = 0; v < nv; ++v)
        if (f(u) == g(v)) off_fiber(u * nv + v) = 0.0;
    out.law = evaluate_policy(out.kernel, off_fiber).best_law(nu * nv);
  }
  return out;
}

FactorPair generate_factor_pair(const FactorPairSpec& spec, std::uint64_t seed) {
  if (spec.blocks < 1 || spec.per_block < 1 || !(spec.sigma > 0.0) || spec.epsilon < 0.0 ||
      spec.epsilon >= 1.0)
    throw Error(ErrorCode::InvalidArgument, "invalid factor pair parameters");
  constexpr int kRetries = 100;
  constexpr Index kDim = 5;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<int> weight(1, 10);
  const Index b = spec.blocks, m = spec.per_block;

  for (int attempt = 0; attempt < kRetries; ++attempt) {
    Eigen::MatrixXd w2 = Eigen::MatrixXd::Zero(b, b);
    if (b == 1) {
      w2(0, 0) = weight(rng);
    } else {
      for (Index a = 0; a < b; ++a)
        for (Index c = spec.directed ? 0 : a + 1; c < b; ++c) {
          if (a == c) continue;
          w2(a, c) = weight(rng);
          if (!spec.directed) w2(c, a) = w2(a, c);
        }
    }
    const Eigen::MatrixXd w1 = factor_weights(spec, w2, rng);

    VertexAttributes a2, a1;
    a2.embedding.resize(b, kDim);
    for (Index i = 0; i < b; ++i)
      for (Index d = 0; d < kDim; ++d) a2.embedding(i, d) = spec.sigma * normal(rng);
    a1.embedding.resize(b * m, kDim);
    for (Index u = 0; u < b * m; ++u)
      for (Index d = 0; d < kDim; ++d) a1.embedding(u, d) = a2.embedding(u / m, d) + normal(rng);

    Network g1(w1, spec.directed, std::move(a1));
    Network g2(w2, spec.directed, std::move(a2));
    if (!is_strongly_connected(g1) || !is_strongly_connected(g2)) continue;
    FactorMap f;
    f.target_size = b;
    f.map.resize(b * m);
    for (Index u = 0; u < b * m; ++u) f.map[u] = u / m;
    return FactorPair{std::move(g1), std::move(g2), std::move(f)};
  }
  throw Error(ErrorCode::GenerationFailed, "no strongly connected factor pair after retries");
}

}  // namespace netotc
