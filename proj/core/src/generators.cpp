#include "netotc/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "netotc/error.hpp"

namespace netotc {

namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidArgument, "probability outside [0, 1]");
}

Index draw_size(IndexRange r, std::mt19937_64& rng) {
  if (r.lo > r.hi) throw Error(ErrorCode::InvalidArgument, "empty size range");
  return std::uniform_int_distribution<Index>(r.lo, r.hi)(rng);
}

void connect(Eigen::MatrixXd& w, Index a, Index b, double weight = 1.0) {
  w(a, b) = weight;
  w(b, a) = weight;
}

}  // namespace

Network gen_erdos_renyi(Index n, double p, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "need at least two vertices");
  check_probability(p);
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b)
      if (coin(rng)) connect(w, a, b);
  return Network(std::move(w), false);
}

SbmNetwork gen_sbm(const std::vector<Index>& block_sizes, const std::vector<double>& p_within,
                   double p_between, std::uint64_t seed) {
  if (block_sizes.empty() || p_within.size() != block_sizes.size())
    throw Error(ErrorCode::InvalidArgument, "one within-block probability per block is required");
  for (Index s : block_sizes)
    if (s == 0) throw Error(ErrorCode::InvalidArgument, "block sizes must be positive");
  for (double p : p_within) check_probability(p);
  check_probability(p_between);

  std::vector<Index> labels;
  for (Index k = 0; k < block_sizes.size(); ++k) labels.insert(labels.end(), block_sizes[k], k);
  const Index n = labels.size();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b) {
      const double p = labels[a] == labels[b] ? p_within[labels[a]] : p_between;
      if (unit(rng) < p) connect(w, a, b);
    }
  return SbmNetwork{Network(std::move(w), false), std::move(labels)};
}

SbmNetwork gen_sbm(const std::vector<Index>& block_sizes, double p_within, double p_between,
                   std::uint64_t seed) {
  return gen_sbm(block_sizes, std::vector<double>(block_sizes.size(), p_within), p_between, seed);
}

Network gen_lollipop(IndexRange candy, IndexRange stick, double chord_p, std::uint64_t seed) {
  check_probability(chord_p);
  std::mt19937_64 rng(seed);
  const Index nc = draw_size(candy, rng);
  const Index ns = draw_size(stick, rng);
  if (nc < 3) throw Error(ErrorCode::InvalidArgument, "candy needs at least three vertices");
  const Index n = nc + ns;
  std::bernoulli_distribution coin(chord_p);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (Index a = 0; a < nc; ++a) connect(w, a, (a + 1) % nc);
  for (Index a = 0; a < nc; ++a)
    for (Index b = a + 2; b < nc; ++b)
      if (!(a == 0 && b == nc - 1) && coin(rng)) connect(w, a, b);
  for (Index k = 0; k < ns; ++k) connect(w, k == 0 ? 0 : nc + k - 1, nc + k);
  return Network(std::move(w), false);
}

Network gen_random_weighted_adjacency(IndexRange n_range, const std::vector<int>& alphabet,
                                      std::uint64_t seed) {
  if (alphabet.empty()) throw Error(ErrorCode::InvalidArgument, "empty weight alphabet");
  for (int a : alphabet)
    if (a < 0) throw Error(ErrorCode::InvalidArgument, "weight alphabet must be nonnegative");
  std::mt19937_64 rng(seed);
  const Index n = draw_size(n_range, rng);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b) connect(w, a, b, alphabet[pick(rng)]);
  return Network(std::move(w), false);
}

Network permute(const Network& net, const std::vector<Index>& phi) {
  const Index n = net.size();
  std::vector<bool> seen(n, false);
  if (phi.size() != n) throw Error(ErrorCode::InvalidArgument, "permutation has the wrong length");
  for (Index x : phi) {
    if (x >= n || seen[x]) throw Error(ErrorCode::InvalidArgument, "not a permutation");
    seen[x] = true;
  }
  Eigen::MatrixXd w(n, n);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) w(phi[a], phi[b]) = net.weight(a, b);
  VertexAttributes attrs;
  const VertexAttributes& src = net.attributes();
  if (src.has_labels()) {
    attrs.labels.resize(n);
    for (Index a = 0; a < n; ++a) attrs.labels[phi[a]] = src.labels[a];
  }
  if (src.has_embedding()) {
    attrs.embedding.resize(n, src.embedding.cols());
    for (Index a = 0; a < n; ++a) attrs.embedding.row(phi[a]) = src.embedding.row(a);
  }
  return Network(std::move(w), net.directed(), std::move(attrs));
}

PermutedNetwork permuted_copy(const Network& net, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Index> phi(net.size());
  std::iota(phi.begin(), phi.end(), 0);
  std::shuffle(phi.begin(), phi.end(), rng);
  return PermutedNetwork{permute(net, phi), std::move(phi)};
}

}  // namespace netotc
