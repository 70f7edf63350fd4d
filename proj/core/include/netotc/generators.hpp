#pragma once

#include <cstdint>
#include <vector>

#include "netotc/network.hpp"

namespace netotc {

/// Undirected unit-weight G(n, p). Connectivity is not enforced.
Network gen_erdos_renyi(Index n, double p, std::uint64_t seed);

struct SbmNetwork {
  Network network;
  /// Block index of each vertex.
  std::vector<Index> labels;
};

/// Stochastic block model with one within-block probability per block.
SbmNetwork gen_sbm(const std::vector<Index>& block_sizes, const std::vector<double>& p_within,
                   double p_between, std::uint64_t seed);
/// Same within-block probability for every block.
SbmNetwork gen_sbm(const std::vector<Index>& block_sizes, double p_within, double p_between,
                   std::uint64_t seed);

struct IndexRange {
  Index lo = 7;
  Index hi = 15;
};

/// Candy: a cycle plus random chords with probability `chord_p`. Stick: a
/// path hanging off candy vertex 0. Sizes are uniform in their ranges.
Network gen_lollipop(IndexRange candy, IndexRange stick, double chord_p, std::uint64_t seed);

/// Symmetric weights drawn uniformly from `alphabet` on the upper triangle
/// (diagonal excluded); zero means no edge. n is uniform in `n_range`.
Network gen_random_weighted_adjacency(IndexRange n_range, const std::vector<int>& alphabet,
                                      std::uint64_t seed);

struct PermutedNetwork {
  Network network;
  /// Vertex u of the input becomes phi[u].
  std::vector<Index> phi;
};

/// Uniformly random relabeling; attributes are permuted along with vertices.
PermutedNetwork permuted_copy(const Network& net, std::uint64_t seed);
/// Relabeling by a given permutation. Throws InvalidArgument.
Network permute(const Network& net, const std::vector<Index>& phi);

}  // namespace netotc
