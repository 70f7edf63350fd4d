#include "netotc/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "netotc/error.hpp"

namespace netotc {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const json& field(const json& doc, const char* key) {
  if (!doc.contains(key)) parse_fail(std::string("missing field '") + key + "'");
  return doc.at(key);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingFile, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_double(double x) {
  std::ostringstream ss;
  ss.precision(17);
  ss << x;
  return ss.str();
}

// Splits a TU line on commas and whitespace into integers.
std::vector<long long> integers(const std::string& line, const std::string& file, Index lineno) {
  std::vector<long long> out;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      parse_fail(file + ":" + std::to_string(lineno) + ": not an integer: '" + token + "'");
    }
    token.clear();
  };
  for (char ch : line) {
    if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) flush();
    else token += ch;
  }
  flush();
  return out;
}

std::vector<std::vector<long long>> read_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::MissingFile, "cannot open " + path.string());
  std::vector<std::vector<long long>> rows;
  std::string line;
  Index lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto row = integers(line, path.filename().string(), lineno);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Network parse_network_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) parse_fail("network document must be an object");
  const json& jn = field(doc, "n");
  if (!jn.is_number_integer() || jn.get<long long>() < 1) parse_fail("'n' must be a positive integer");
  const Index n = jn.get<Index>();
  const json& jd = field(doc, "directed");
  if (!jd.is_boolean()) parse_fail("'directed' must be a boolean");
  const json& je = field(doc, "edges");
  if (!je.is_array()) parse_fail("'edges' must be an array");

  std::vector<WeightedEdge> edges;
  for (Index i = 0; i < je.size(); ++i) {
    const json& e = je[i];
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer() ||
        !e[2].is_number())
      parse_fail("edges[" + std::to_string(i) + "] must be [u, v, w]");
    const long long u = e[0].get<long long>(), v = e[1].get<long long>();
    if (u < 0 || v < 0)
      throw Error(ErrorCode::InvariantViolation, "edges[" + std::to_string(i) + "] has a negative index");
    edges.push_back({static_cast<Index>(u), static_cast<Index>(v), e[2].get<double>()});
  }

  VertexAttributes attrs;
  if (doc.contains("attributes")) {
    const json& ja = doc.at("attributes");
    if (!ja.is_object()) parse_fail("'attributes' must be an object");
    if (ja.contains("labels")) {
      for (const json& l : ja.at("labels")) {
        if (l.is_string()) attrs.labels.push_back(l.get<std::string>());
        else if (l.is_number_integer()) attrs.labels.push_back(std::to_string(l.get<long long>()));
        else parse_fail("labels must be strings or integers");
      }
    }
    if (ja.contains("embedding")) {
      const json& jm = ja.at("embedding");
      if (!jm.is_array() || jm.empty() || !jm[0].is_array()) parse_fail("embedding must be a matrix");
      const Index dim = jm[0].size();
      attrs.embedding.resize(jm.size(), dim);
      for (Index r = 0; r < jm.size(); ++r) {
        if (!jm[r].is_array() || jm[r].size() != dim) parse_fail("embedding rows must share a length");
        for (Index c = 0; c < dim; ++c) {
          if (!jm[r][c].is_number()) parse_fail("embedding entries must be numbers");
          attrs.embedding(r, c) = jm[r][c].get<double>();
        }
      }
    }
  }

  try {
    return build_network(n, edges, jd.get<bool>(), std::move(attrs));
  } catch (const Error& e) {
    throw Error(ErrorCode::InvariantViolation, std::string(to_string(e.code())) + ": " + e.what());
  }
}

Network parse_network_file(const std::filesystem::path& path) {
  return parse_network_json(read_file(path));
}

std::string serialize_network(const Network& net) {
  json doc;
  doc["n"] = net.size();
  doc["directed"] = net.directed();
  json edges = json::array();
  for (const WeightedEdge& e : net.edges())
    if (net.directed() || e.from <= e.to) edges.push_back({e.from, e.to, e.weight});
  doc["edges"] = std::move(edges);
  const VertexAttributes& a = net.attributes();
  if (a.has_labels() || a.has_embedding()) {
    json attrs = json::object();
    if (a.has_labels()) attrs["labels"] = a.labels;
    if (a.has_embedding()) {
      json m = json::array();
      for (Eigen::Index r = 0; r < a.embedding.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < a.embedding.cols(); ++c) row.push_back(a.embedding(r, c));
        m.push_back(std::move(row));
      }
      attrs["embedding"] = std::move(m);
    }
    doc["attributes"] = std::move(attrs);
  }
  return doc.dump();
}

void write_network_file(const Network& net, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::MissingFile, "cannot write " + path.string());
  out << serialize_network(net) << '\n';
}

TuDataset parse_tu_dataset(const std::filesystem::path& dir, const std::string& name) {
  const auto file = [&](const char* suffix) { return dir / (name + suffix); };
  const auto edges = read_table(file("_A.txt"));
  const auto indicator = read_table(file("_graph_indicator.txt"));
  const auto glabels = read_table(file("_graph_labels.txt"));
  std::vector<std::vector<long long>> nlabels;
  const bool has_node_labels = std::filesystem::exists(file("_node_labels.txt"));
  if (has_node_labels) nlabels = read_table(file("_node_labels.txt"));

  const Index n_graphs = glabels.size();
  const Index n_nodes = indicator.size();
  if (has_node_labels && nlabels.size() != n_nodes)
    throw Error(ErrorCode::IndexError, "node label count differs from node count");

  std::vector<Index> graph_of(n_nodes), local(n_nodes);
  std::vector<Index> sizes(n_graphs, 0);
  for (Index i = 0; i < n_nodes; ++i) {
    if (indicator[i].size() != 1) parse_fail("graph indicator lines hold one integer");
    const long long g = indicator[i][0];
    if (g < 1 || static_cast<Index>(g) > n_graphs)
      throw Error(ErrorCode::IndexError, "node " + std::to_string(i + 1) + " names graph " +
                                             std::to_string(g) + " which has no label");
    graph_of[i] = static_cast<Index>(g - 1);
    local[i] = sizes[graph_of[i]]++;
  }

  std::vector<std::vector<WeightedEdge>> lists(n_graphs);
  for (const auto& e : edges) {
    if (e.size() != 2) parse_fail("edge lines hold two integers");
    if (e[0] < 1 || e[1] < 1 || static_cast<Index>(e[0]) > n_nodes || static_cast<Index>(e[1]) > n_nodes)
      throw Error(ErrorCode::IndexError, "edge (" + std::to_string(e[0]) + ", " +
                                             std::to_string(e[1]) + ") names an unknown node");
    const Index a = e[0] - 1, b = e[1] - 1;
    if (graph_of[a] != graph_of[b])
      throw Error(ErrorCode::CrossGraphEdge, "edge (" + std::to_string(e[0]) + ", " +
                                                 std::to_string(e[1]) + ") joins two graphs");
    lists[graph_of[a]].push_back({local[a], local[b], 1.0});
  }

  TuDataset out;
  for (Index g = 0; g < n_graphs; ++g) {
    if (glabels[g].size() != 1) parse_fail("graph label lines hold one integer");
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(sizes[g], sizes[g]);
    for (const WeightedEdge& e : lists[g]) {
      w(e.from, e.to) = 1.0;
      w(e.to, e.from) = 1.0;
    }
    out.graphs.emplace_back(std::move(w), false, VertexAttributes{});
    out.graph_labels.push_back(static_cast<int>(glabels[g][0]));
  }
  if (has_node_labels) {
    std::vector<VertexAttributes> attrs(n_graphs);
    for (Index g = 0; g < n_graphs; ++g) attrs[g].labels.resize(sizes[g]);
    for (Index i = 0; i < n_nodes; ++i) {
      if (nlabels[i].empty()) parse_fail("empty node label line");
      attrs[graph_of[i]].labels[local[i]] = std::to_string(nlabels[i][0]);
    }
    for (Index g = 0; g < n_graphs; ++g) out.graphs[g] = out.graphs[g].with_attributes(attrs[g]);
  }
  return out;
}

std::string solution_to_json(const OtcSolution& s, int indent) {
  json doc;
  doc["rho"] = s.rho;
  doc["solver"] = std::string(to_string(s.diagnostics.solver));
  doc["cost_rule"] = std::string(to_string(s.cost.rule()));
  doc["diagnostics"] = {{"iterations", s.diagnostics.iterations},
                        {"objective_history", s.diagnostics.objective_history},
                        {"evaluation_residual", s.diagnostics.evaluation_residual},
                        {"recurrent_classes", s.diagnostics.recurrent_classes}};
  json pv = json::array();
  for (Eigen::Index u = 0; u < s.vertex_alignment.rows(); ++u) {
    json row = json::array();
    for (Eigen::Index v = 0; v < s.vertex_alignment.cols(); ++v) row.push_back(s.vertex_alignment(u, v));
    pv.push_back(std::move(row));
  }
  doc["vertex_alignment"] = std::move(pv);
  json pe = json::array();
  for (const auto& e : s.edge_alignment) pe.push_back({e.u, e.u_next, e.v, e.v_next, e.mass});
  doc["edge_alignment"] = std::move(pe);
  return doc.dump(indent);
}

std::string vertex_alignment_csv(const Eigen::MatrixXd& pi_v) {
  std::string out = "u,v,mass\n";
  for (Eigen::Index u = 0; u < pi_v.rows(); ++u)
    for (Eigen::Index v = 0; v < pi_v.cols(); ++v)
      if (pi_v(u, v) > 0.0)
        out += std::to_string(u) + "," + std::to_string(v) + "," + format_double(pi_v(u, v)) + "\n";
  return out;
}

std::string edge_alignment_csv(const std::vector<EdgeAlignmentEntry>& pi_e) {
  std::string out = "u,u_next,v,v_next,mass\n";
  for (const auto& e : pi_e)
    out += std::to_string(e.u) + "," + std::to_string(e.u_next) + "," + std::to_string(e.v) + "," +
           std::to_string(e.v_next) + "," + format_double(e.mass) + "\n";
  return out;
}

}  // namespace netotc
