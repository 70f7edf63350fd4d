#include "netotc/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <string>

#include "netotc/error.hpp"

namespace netotc {

namespace {

constexpr int kMaxRedraws = 1000;

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

double mean_of(const std::vector<double>& x) {
  return x.empty() ? 0.0 : std::accumulate(x.begin(), x.end(), 0.0) / x.size();
}

double sd_of(const std::vector<double>& x) {
  if (x.size() < 2) return 0.0;
  const double m = mean_of(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return std::sqrt(ss / (x.size() - 1));
}

std::string join(const std::vector<Index>& xs) {
  std::string out;
  for (Index i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
  return out;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t base, std::uint64_t index) {
  // splitmix64 finalizer
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::Exact: return "exact";
    case Method::Entropic: return "entropic";
    case Method::OneStep: return "onestep";
    case Method::MarginalOt: return "ot";
  }
  return "exact";
}

Alignment align(const Network& g1, const Network& g2, const CostMatrix& cost,
                const MethodConfig& config) {
  Alignment out;
  if (config.method == Method::MarginalOt) {
    const TransportResult ot = marginal_ot_baseline(g1, g2, cost);
    const MarkovKernel p = transition_kernel(g1);
    const MarkovKernel q = transition_kernel(g2);
    out.rho = ot.value;
    out.vertex = ot.coupling.plan;
    for (Index u = 0; u < g1.size(); ++u)
      for (Index v = 0; v < g2.size(); ++v) {
        const double m = out.vertex(u, v);
        if (!(m > 0.0)) continue;
        for (Index a : p.support(u))
          for (Index b : q.support(v)) out.edges.push_back({u, a, v, b, m * p(u, a) * q(v, b)});
      }
    return out;
  }
  OtcSolution sol;
  switch (config.method) {
    case Method::Exact: sol = solve_exact_otc(g1, g2, cost); break;
    case Method::Entropic: sol = solve_entropic_otc(g1, g2, cost, config.entropic); break;
    default: sol = one_step_otc_baseline(g1, g2, cost); break;
  }
  out.rho = sol.rho;
  out.vertex = std::move(sol.vertex_alignment);
  out.edges = std::move(sol.edge_alignment);
  return out;
}

double BenchResult::mean() const {
  std::vector<double> x;
  for (const auto& r : records) x.push_back(r.score);
  return mean_of(x);
}

double BenchResult::sd() const {
  std::vector<double> x;
  for (const auto& r : records) x.push_back(r.score);
  return sd_of(x);
}

double BenchResult::secondary_mean() const {
  std::vector<double> x;
  for (const auto& r : records) x.push_back(r.secondary);
  return mean_of(x);
}

double BenchResult::secondary_sd() const {
  std::vector<double> x;
  for (const auto& r : records) x.push_back(r.secondary);
  return sd_of(x);
}

std::string GraphClassSpec::name() const {
  switch (kind) {
    case GraphClassKind::ErdosRenyi:
      return "erdos_renyi(n=" + std::to_string(n_range.lo) + ".." + std::to_string(n_range.hi) +
             ",p=" + std::to_string(p) + ")";
    case GraphClassKind::Sbm: return "sbm(" + join(blocks) + ")";
    case GraphClassKind::RandomWeighted: {
      std::string a;
      for (Index i = 0; i < alphabet.size(); ++i) a += (i ? "," : "") + std::to_string(alphabet[i]);
      return "random_weighted({" + a + "})";
    }
    case GraphClassKind::Lollipop: return "lollipop";
  }
  return "unknown";
}

Network sample_graph_class(const GraphClassSpec& spec, std::uint64_t seed) {
  switch (spec.kind) {
    case GraphClassKind::ErdosRenyi: {
      std::mt19937_64 rng(seed);
      const Index n = std::uniform_int_distribution<Index>(spec.n_range.lo, spec.n_range.hi)(rng);
      return gen_erdos_renyi(n, spec.p, rng());
    }
    case GraphClassKind::Sbm: return gen_sbm(spec.blocks, spec.p_within, spec.p_between, seed).network;
    case GraphClassKind::RandomWeighted:
      return gen_random_weighted_adjacency(spec.weighted_n_range, spec.alphabet, seed);
    case GraphClassKind::Lollipop: return gen_lollipop(spec.candy, spec.stick, spec.chord_p, seed);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown graph class");
}

bool isomorphism_success(const Network& g1, const Network& g2, const Eigen::MatrixXd& pi_v) {
  const Index n = g1.size();
  if (g2.size() != n || static_cast<Index>(pi_v.rows()) != n ||
      static_cast<Index>(pi_v.cols()) != n)
    return false;
  const std::vector<Index> psi = hard_alignment(pi_v);
  std::vector<Index> inverse(n, n);
  for (Index u = 0; u < n; ++u) {
    if (inverse[psi[u]] != n) return false;
    inverse[psi[u]] = u;
  }
  for (const WeightedEdge& e : g1.edges())
    if (!g2.has_edge(psi[e.from], psi[e.to]) || g2.weight(psi[e.from], psi[e.to]) != e.weight)
      return false;
  for (const WeightedEdge& e : g2.edges())
    if (!g1.has_edge(inverse[e.from], inverse[e.to]) ||
        g1.weight(inverse[e.from], inverse[e.to]) != e.weight)
      return false;
  return true;
}

BenchResult run_isomorphism_bench(const GraphClassSpec& spec, int trials,
                                  const MethodConfig& config, std::uint64_t seed) {
  BenchResult result;
  result.experiment = "isomorphism/" + spec.name() + "/" + std::string(to_string(config.method));
  std::uint64_t draw = 0;
  for (int t = 0; t < trials; ++t) {
    int redraws = 0;
    for (;; ++draw) {
      const std::uint64_t s = trial_seed(seed, draw);
      const Network g1 = sample_graph_class(spec, s);
      if (g1.edge_count() == 0 || !is_strongly_connected(g1)) {
        ++result.skipped;
        if (++redraws > kMaxRedraws)
          throw Error(ErrorCode::GenerationFailed, "graph class rarely yields connected draws");
        continue;
      }
      const PermutedNetwork g2 = permuted_copy(g1, trial_seed(s, 1));
      const auto start = std::chrono::steady_clock::now();
      const Alignment a = align(g1, g2.network, cost_degree(g1, g2.network, false), config);
      TrialRecord rec;
      rec.seed = s;
      rec.runtime_ms = elapsed_ms(start);
      rec.rho = a.rho;
      rec.score = isomorphism_success(g1, g2.network, a.vertex) ? 1.0 : 0.0;
      rec.secondary = hard_alignment(a.vertex) == g2.phi ? 1.0 : 0.0;
      result.records.push_back(rec);
      ++draw;
      break;
    }
  }
  return result;
}

SbmAccuracy sbm_alignment_accuracy(const Eigen::MatrixXd& pi_v,
                                   const std::vector<EdgeAlignmentEntry>& pi_e,
                                   const std::vector<Index>& labels1,
                                   const std::vector<Index>& labels2) {
  if (labels1.size() != static_cast<Index>(pi_v.rows()) ||
      labels2.size() != static_cast<Index>(pi_v.cols()))
    throw Error(ErrorCode::LabelMismatch, "labels do not cover every vertex");
  SbmAccuracy acc;
  for (Index u = 0; u < labels1.size(); ++u)
    for (Index v = 0; v < labels2.size(); ++v)
      if (labels1[u] == labels2[v]) acc.vertex += pi_v(u, v);
  for (const auto& e : pi_e) {
    if (e.u >= labels1.size() || e.u_next >= labels1.size() || e.v >= labels2.size() ||
        e.v_next >= labels2.size())
      throw Error(ErrorCode::LabelMismatch, "edge alignment refers to an unlabeled vertex");
    if (labels1[e.u] == labels2[e.v] && labels1[e.u_next] == labels2[e.v_next]) acc.edge += e.mass;
  }
  return acc;
}

BenchResult run_sbm_bench(const SbmBenchSpec& spec, int trials, const MethodConfig& config,
                          std::uint64_t seed) {
  BenchResult result;
  result.experiment = "sbm/" + std::string(to_string(config.method));
  std::uint64_t draw = 0;
  for (int t = 0; t < trials; ++t) {
    int redraws = 0;
    for (;; ++draw) {
      const std::uint64_t s = trial_seed(seed, draw);
      const SbmNetwork a = gen_sbm(spec.sizes1, spec.p_within, spec.p_between, s);
      const SbmNetwork b = gen_sbm(spec.sizes2, spec.p_within, spec.p_between, trial_seed(s, 1));
      if (!is_strongly_connected(a.network) || !is_strongly_connected(b.network)) {
        ++result.skipped;
        if (++redraws > kMaxRedraws)
          throw Error(ErrorCode::GenerationFailed, "SBM parameters rarely yield connected draws");
        continue;
      }
      const auto start = std::chrono::steady_clock::now();
      const Alignment al = align(a.network, b.network, cost_degree(a.network, b.network, true), config);
      const SbmAccuracy acc = sbm_alignment_accuracy(al.vertex, al.edges, a.labels, b.labels);
      result.records.push_back({s, acc.vertex, acc.edge, al.rho, elapsed_ms(start)});
      ++draw;
      break;
    }
  }
  return result;
}

BenchResult run_factor_bench(const FactorPairSpec& spec, int trials, const MethodConfig& config,
                             std::uint64_t seed) {
  BenchResult result;
  result.experiment = "factor/sigma=" + std::to_string(spec.sigma) +
                      "/eps=" + std::to_string(spec.epsilon) + "/" +
                      std::string(to_string(config.method));
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s = trial_seed(seed, t);
    const FactorPair pair = generate_factor_pair(spec, s);
    const auto start = std::chrono::steady_clock::now();
    const Alignment al = align(pair.g1, pair.g2, cost_embedding(pair.g1, pair.g2, true), config);
    double acc = 0.0;
    for (Index u = 0; u < pair.g1.size(); ++u) acc += al.vertex(u, pair.f(u));
    result.records.push_back({s, acc, 0.0, al.rho, elapsed_ms(start)});
  }
  return result;
}

KnnResult knn_classify(const Eigen::MatrixXd& distances, const std::vector<int>& labels, int k,
                       double train_fraction, int repeats, std::uint64_t seed) {
  const Index n = labels.size();
  if (distances.rows() != distances.cols() || static_cast<Index>(distances.rows()) != n)
    throw Error(ErrorCode::DimensionMismatch, "distance matrix does not match the labels");
  if (k < 1 || repeats < 1 || !(train_fraction > 0.0 && train_fraction < 1.0))
    throw Error(ErrorCode::InvalidArgument, "need k >= 1, repeats >= 1, train fraction in (0, 1)");
  const Index n_train = static_cast<Index>(std::llround(train_fraction * n));
  if (n_train == 0 || n_train >= n)
    throw Error(ErrorCode::DegenerateSplit, "split leaves an empty training or test set");
  const Eigen::MatrixXd d = 0.5 * (distances + distances.transpose());

  KnnResult out;
  std::mt19937_64 rng(seed);
  std::vector<Index> order(n);
  for (int r = 0; r < repeats; ++r) {
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const std::vector<Index> train(order.begin(), order.begin() + n_train);
    Index correct = 0;
    for (Index i = n_train; i < n; ++i) {
      const Index x = order[i];
      std::vector<Index> near = train;
      const Index kk = std::min<Index>(k, near.size());
      std::partial_sort(near.begin(), near.begin() + kk, near.end(), [&](Index a, Index b) {
        return d(x, a) != d(x, b) ? d(x, a) < d(x, b) : a < b;
      });
      std::map<int, std::pair<Index, double>> votes;  // label -> (count, distance sum)
      for (Index j = 0; j < kk; ++j) {
        auto& v = votes[labels[near[j]]];
        ++v.first;
        v.second += d(x, near[j]);
      }
      int best = votes.begin()->first;
      for (const auto& [label, v] : votes) {
        const auto& b = votes[best];
        const double mean_v = v.second / v.first, mean_b = b.second / b.first;
        if (v.first > b.first || (v.first == b.first && mean_v < mean_b)) best = label;
      }
      if (best == labels[x]) ++correct;
    }
    out.accuracies.push_back(static_cast<double>(correct) / (n - n_train));
  }
  out.mean = mean_of(out.accuracies);
  out.sd = sd_of(out.accuracies);
  return out;
}

}  // namespace netotc
