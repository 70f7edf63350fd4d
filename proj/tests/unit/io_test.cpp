#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include <nlohmann/json.hpp>

#include <netotc/io.hpp>

#include "error_code.hpp"
#include "instances.hpp"

namespace netotc {
namespace {

using testing::code_of;
using testing::Rng;

const std::filesystem::path kFixtures = NETOTC_FIXTURE_DIR;

TEST(NetworkJson, RoundTrip) {
  Rng rng(91);
  for (int t = 0; t < 100; ++t) {
    const Index n = 2 + t % 6;
    Network g = t % 2 ? testing::random_directed(rng, n) : testing::random_undirected(rng, n, 0.6, true);
    if (t % 3 == 0) {
      VertexAttributes a;
      for (Index i = 0; i < n; ++i) a.labels.push_back("L" + std::to_string(i % 3));
      a.embedding = testing::random_points(rng, n, 3);
      g = g.with_attributes(a);
    }
    const Network back = parse_network_json(serialize_network(g));
    EXPECT_EQ(back.directed(), g.directed());
    EXPECT_EQ(back.weights(), g.weights());
    EXPECT_EQ(back.attributes().labels, g.attributes().labels);
    EXPECT_EQ(back.attributes().embedding, g.attributes().embedding);
  }
}

TEST(NetworkJson, FileRoundTrip) {
  const Network g = parse_network_file(kFixtures / "networks" / "column_source.json");
  EXPECT_EQ(g.size(), 5u);
  EXPECT_EQ(g.attributes().labels[2], "b");
  const std::filesystem::path tmp = std::filesystem::temp_directory_path() / "netotc_io_roundtrip.json";
  write_network_file(g, tmp);
  EXPECT_EQ(parse_network_file(tmp).weights(), g.weights());
  std::filesystem::remove(tmp);
}

TEST(NetworkJson, ParseErrors) {
  for (const char* text : {"{", "[]", R"({"directed": true, "edges": []})",
                           R"({"n": 0, "directed": true, "edges": []})",
                           R"({"n": 2, "directed": "yes", "edges": []})",
                           R"({"n": 2, "directed": true, "edges": [[0, 1]]})",
                           R"({"n": 2, "directed": true, "edges": [[0, 1, 1]], "attributes": {"embedding": [[1], [1, 2]]}})"})
    EXPECT_EQ(code_of([&] { parse_network_json(text); }), ErrorCode::ParseError) << text;
}

TEST(NetworkJson, InvariantViolations) {
  EXPECT_EQ(code_of([] { parse_network_file(kFixtures / "networks" / "negative_weight.json"); }),
            ErrorCode::InvariantViolation);
  for (const char* text : {R"({"n": 2, "directed": true, "edges": [[0, 2, 1]]})",
                           R"({"n": 2, "directed": true, "edges": [[-1, 0, 1]]})",
                           R"({"n": 2, "directed": false, "edges": [[0, 1, 1], [1, 0, 2]]})",
                           R"({"n": 2, "directed": true, "edges": [], "attributes": {"labels": ["a"]}})"})
    EXPECT_EQ(code_of([&] { parse_network_json(text); }), ErrorCode::InvariantViolation) << text;
}

TEST(NetworkJson, MissingFile) {
  EXPECT_EQ(code_of([] { parse_network_file(kFixtures / "networks" / "absent.json"); }),
            ErrorCode::MissingFile);
}

TEST(TuDataset, ToyDataset) {
  const TuDataset d = parse_tu_dataset(kFixtures / "tu", "TOY");
  ASSERT_EQ(d.graphs.size(), 2u);
  EXPECT_EQ(d.graph_labels, (std::vector<int>{1, -1}));
  EXPECT_EQ(d.graphs[0].size(), 3u);
  EXPECT_EQ(d.graphs[0].edge_count(), 6u);
  EXPECT_EQ(d.graphs[1].size(), 4u);
  EXPECT_EQ(d.graphs[1].edge_count(), 8u);
  EXPECT_FALSE(d.graphs[1].directed());
  EXPECT_TRUE(d.graphs[1].has_edge(0, 3));
  EXPECT_FALSE(d.graphs[1].has_edge(0, 2));
  EXPECT_EQ(d.graphs[1].attributes().labels, (std::vector<std::string>{"2", "2", "1", "1"}));
}

TEST(TuDataset, Errors) {
  const std::filesystem::path dir = kFixtures / "tu";
  EXPECT_EQ(code_of([&] { parse_tu_dataset(dir, "CROSS"); }), ErrorCode::CrossGraphEdge);
  EXPECT_EQ(code_of([&] { parse_tu_dataset(dir, "IDX"); }), ErrorCode::IndexError);
  EXPECT_EQ(code_of([&] { parse_tu_dataset(dir, "PARSE"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([&] { parse_tu_dataset(dir, "NONE"); }), ErrorCode::MissingFile);
}

double csv_mass(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  double total = 0.0;
  while (std::getline(in, line)) total += std::stod(line.substr(line.rfind(',') + 1));
  return total;
}

TEST(SolutionOutput, CsvAndJsonCarryAllMass) {
  Rng rng(92);
  const Network g1 = testing::random_undirected(rng, 4), g2 = testing::random_undirected(rng, 3);
  const OtcSolution s = solve_exact_otc(g1, g2, testing::random_cost(rng, 4, 3));
  EXPECT_NEAR(csv_mass(vertex_alignment_csv(s.vertex_alignment)), 1.0, 1e-12);
  EXPECT_NEAR(csv_mass(edge_alignment_csv(s.edge_alignment)), 1.0, 1e-12);
  EXPECT_EQ(vertex_alignment_csv(Eigen::MatrixXd::Zero(1, 1)), "u,v,mass\n");

  const nlohmann::json doc = nlohmann::json::parse(solution_to_json(s));
  EXPECT_DOUBLE_EQ(doc.at("rho").get<double>(), s.rho);
  EXPECT_EQ(doc.at("solver"), "exact");
  double vertex = 0.0, edge = 0.0;
  for (const auto& row : doc.at("vertex_alignment"))
    for (const auto& x : row) vertex += x.get<double>();
  for (const auto& e : doc.at("edge_alignment")) edge += e[4].get<double>();
  EXPECT_NEAR(vertex, 1.0, 1e-12);
  EXPECT_NEAR(edge, 1.0, 1e-12);
}

}  // namespace
}  // namespace netotc
