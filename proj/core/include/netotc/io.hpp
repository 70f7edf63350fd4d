#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "netotc/network.hpp"
#include "netotc/otc.hpp"

namespace netotc {

/// {"n", "directed", "edges": [[u, v, w], ...], "attributes": {"labels", "embedding"}}.
/// Throws ParseError on malformed documents, InvariantViolation when the
/// content does not form a valid network.
Network parse_network_json(const std::string& text);
/// Adds MissingFile to the errors above.
Network parse_network_file(const std::filesystem::path& path);

/// Undirected edges are written once with u <= v.
std::string serialize_network(const Network& net);
void write_network_file(const Network& net, const std::filesystem::path& path);

struct TuDataset {
  std::vector<Network> graphs;
  std::vector<int> graph_labels;
};

/// Reads <name>_A.txt, <name>_graph_indicator.txt, <name>_graph_labels.txt
/// and, when present, <name>_node_labels.txt from `dir`. Graphs are
/// undirected with unit weights. Throws MissingFile, CrossGraphEdge,
/// IndexError, ParseError.
TuDataset parse_tu_dataset(const std::filesystem::path& dir, const std::string& name);

/// rho, diagnostics and both alignments as one JSON document.
std::string solution_to_json(const OtcSolution& solution, int indent = 2);
/// "u,v,mass" rows with a header line.
std::string vertex_alignment_csv(const Eigen::MatrixXd& pi_v);
/// "u,u_next,v,v_next,mass" rows with a header line.
std::string edge_alignment_csv(const std::vector<EdgeAlignmentEntry>& pi_e);

}  // namespace netotc
