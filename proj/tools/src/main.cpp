#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <netotc/bench.hpp>
#include <netotc/error.hpp>
#include <netotc/io.hpp>
#include <netotc/otc.hpp>

namespace {

using namespace netotc;
using nlohmann::json;

struct SolverFlags {
  std::string solver = "exact";
  std::string cost = "sdegree";
  EntropicOptions entropic;

  MethodConfig config() const {
    static const std::map<std::string, Method> methods{{"exact", Method::Exact},
                                                       {"entropic", Method::Entropic},
                                                       {"onestep", Method::OneStep},
                                                       {"ot", Method::MarginalOt}};
    return {methods.at(solver), entropic};
  }
};

void add_solver_flags(CLI::App* app, SolverFlags& f, bool with_cost) {
  app->add_option("--solver", f.solver, "Alignment method")
      ->check(CLI::IsMember({"exact", "entropic", "onestep", "ot"}))
      ->capture_default_str();
  if (with_cost)
    app->add_option("--cost", f.cost, "Vertex cost rule")
        ->check(CLI::IsMember({"identity", "attr", "degree", "sdegree", "eucl", "sqeucl"}))
        ->capture_default_str();
  app->add_option("--L", f.entropic.outer_iterations, "Entropic outer iterations")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--T", f.entropic.horizon, "Entropic evaluation horizon")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--xi", f.entropic.xi, "Entropic regularization strength")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--sinkhorn-iters", f.entropic.sinkhorn_iterations, "Sinkhorn iterations per state")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

CostMatrix make_cost(const std::string& rule, const Network& g1, const Network& g2) {
  if (rule == "identity") {
    if (g1.size() != g2.size())
      throw Error(ErrorCode::DimensionMismatch, "identity cost needs equal vertex counts");
    return cost_zero_one_identity(g1.size());
  }
  if (rule == "attr") return cost_attribute(g1, g2);
  if (rule == "degree") return cost_degree(g1, g2, false);
  if (rule == "sdegree") return cost_degree(g1, g2, true);
  return cost_embedding(g1, g2, rule == "sqeucl");
}

OtcSolution solve(const Network& g1, const Network& g2, const CostMatrix& cost, const SolverFlags& f) {
  if (f.solver == "entropic") return solve_entropic_otc(g1, g2, cost, f.entropic);
  if (f.solver == "onestep") return one_step_otc_baseline(g1, g2, cost);
  return solve_exact_otc(g1, g2, cost);
}

json diagnostics_json(const SolverDiagnostics& d) {
  return {{"solver", std::string(to_string(d.solver))},
          {"iterations", d.iterations},
          {"objective_history", d.objective_history},
          {"evaluation_residual", d.evaluation_residual},
          {"recurrent_classes", d.recurrent_classes}};
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out);
  if (!file) throw Error(ErrorCode::MissingFile, "cannot write " + out);
  file << text;
}

std::string pct(double mean, double sd) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f ± %.2f", 100.0 * mean, 100.0 * sd);
  return buf;
}

// compare / align

struct PairArgs {
  std::string first, second, out, format = "json";
  bool hard = false;
  SolverFlags flags;
};

int run_compare(const PairArgs& a) {
  const Network g1 = parse_network_file(a.first), g2 = parse_network_file(a.second);
  const CostMatrix cost = make_cost(a.flags.cost, g1, g2);
  json doc;
  doc["cost_rule"] = std::string(to_string(cost.rule()));
  if (a.flags.solver == "ot") {
    doc["rho"] = marginal_ot_baseline(g1, g2, cost).value;
    doc["solver"] = "ot";
  } else {
    const OtcSolution s = solve(g1, g2, cost, a.flags);
    doc["rho"] = s.rho;
    doc["solver"] = std::string(to_string(s.diagnostics.solver));
    doc["diagnostics"] = diagnostics_json(s.diagnostics);
  }
  emit(doc.dump(2) + "\n", a.out);
  return 0;
}

int run_align(const PairArgs& a) {
  const Network g1 = parse_network_file(a.first), g2 = parse_network_file(a.second);
  const CostMatrix cost = make_cost(a.flags.cost, g1, g2);
  const Alignment al = align(g1, g2, cost, a.flags.config());
  const std::vector<Index> psi = hard_alignment(al.vertex);

  std::string text;
  if (a.format == "csv") {
    text = vertex_alignment_csv(al.vertex) + "\n" + edge_alignment_csv(al.edges);
    if (a.hard) {
      text += "\nu,psi\n";
      for (Index u = 0; u < psi.size(); ++u) text += std::to_string(u) + "," + std::to_string(psi[u]) + "\n";
    }
  } else {
    json doc;
    doc["rho"] = al.rho;
    doc["solver"] = a.flags.solver;
    doc["cost_rule"] = std::string(to_string(cost.rule()));
    json pv = json::array();
    for (Eigen::Index u = 0; u < al.vertex.rows(); ++u) {
      json row = json::array();
      for (Eigen::Index v = 0; v < al.vertex.cols(); ++v) row.push_back(al.vertex(u, v));
      pv.push_back(std::move(row));
    }
    doc["vertex_alignment"] = std::move(pv);
    json pe = json::array();
    for (const auto& e : al.edges) pe.push_back({e.u, e.u_next, e.v, e.v_next, e.mass});
    doc["edge_alignment"] = std::move(pe);
    if (a.hard) doc["psi"] = psi;
    text = doc.dump(2) + "\n";
  }
  emit(text, a.out);
  return 0;
}

// Benchmarks

struct BenchArgs {
  std::uint64_t seed = 0;
  int trials = 0;
  std::string out;
  SolverFlags flags;
};

int run_isomorph(const BenchArgs& a, const std::vector<std::string>& classes) {
  std::string table = "class,method,success,exact_permutation,skipped\n";
  for (const std::string& name : classes) {
    GraphClassSpec spec;
    if (name == "er") spec.kind = GraphClassKind::ErdosRenyi;
    else if (name == "weighted") spec.kind = GraphClassKind::RandomWeighted;
    else if (name == "lollipop") spec.kind = GraphClassKind::Lollipop;
    const BenchResult r = run_isomorphism_bench(spec, a.trials, a.flags.config(), a.seed);
    table += spec.name() + "," + a.flags.solver + "," + pct(r.mean(), r.sd()) + "," +
             pct(r.secondary_mean(), r.secondary_sd()) + "," + std::to_string(r.skipped) + "\n";
  }
  emit(table, a.out);
  return 0;
}

int run_sbm(const BenchArgs& a) {
  const BenchResult r = run_sbm_bench({}, a.trials, a.flags.config(), a.seed);
  emit("method,vertex_accuracy,edge_accuracy,skipped\n" + a.flags.solver + "," + pct(r.mean(), r.sd()) + "," +
           pct(r.secondary_mean(), r.secondary_sd()) + "," + std::to_string(r.skipped) + "\n",
       a.out);
  return 0;
}

int run_factor(const BenchArgs& a, const std::vector<double>& sigmas, double epsilon, bool directed) {
  std::string table = "sigma,epsilon,method,accuracy\n";
  for (double sigma : sigmas) {
    FactorPairSpec spec;
    spec.sigma = sigma;
    spec.epsilon = epsilon;
    spec.directed = directed;
    const BenchResult r = run_factor_bench(spec, a.trials, a.flags.config(), a.seed);
    char head[64];
    std::snprintf(head, sizeof head, "%g,%g,", sigma, epsilon);
    table += head + a.flags.solver + "," + pct(r.mean(), r.sd()) + "\n";
  }
  emit(table, a.out);
  return 0;
}

int run_classify(const BenchArgs& a, const std::string& dir, const std::string& name, int k,
                 double train, int repeats) {
  const TuDataset data = parse_tu_dataset(dir, name);
  std::vector<Index> kept;
  for (Index i = 0; i < data.graphs.size(); ++i)
    if (data.graphs[i].size() > 0 && is_strongly_connected(data.graphs[i])) kept.push_back(i);
  const Index n = kept.size();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  std::vector<int> labels(n);
  const MethodConfig config = a.flags.config();
  for (Index i = 0; i < n; ++i) {
    labels[i] = data.graph_labels[kept[i]];
    for (Index j = i + 1; j < n; ++j) {
      const Network& g1 = data.graphs[kept[i]];
      const Network& g2 = data.graphs[kept[j]];
      d(i, j) = d(j, i) = align(g1, g2, make_cost(a.flags.cost, g1, g2), config).rho;
    }
  }
  const KnnResult r = knn_classify(d, labels, k, train, repeats, a.seed);
  emit("dataset,method,cost,graphs,skipped,accuracy\n" + name + "," + a.flags.solver + "," + a.flags.cost +
           "," + std::to_string(n) + "," + std::to_string(data.graphs.size() - n) + "," + pct(r.mean, r.sd) + "\n",
       a.out);
  return 0;
}

int run_oracle_check(const BenchArgs& a) {
  int mismatches = 0;
  double worst = 0.0;
  std::uint64_t draw = 0;
  for (int t = 0; t < a.trials; ++draw) {
    std::mt19937_64 rng(trial_seed(a.seed, draw));
    const Index n1 = 2 + rng() % 3, n2 = 2 + rng() % 3;
    const Network g1 = gen_random_weighted_adjacency({n1, n1}, {0, 1, 2, 3}, rng());
    const Network g2 = gen_random_weighted_adjacency({n2, n2}, {0, 1, 2, 3}, rng());
    if (!is_strongly_connected(g1) || !is_strongly_connected(g2)) continue;
    Eigen::MatrixXd c(n1, n2);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = unit(rng);
    const CostMatrix cost(c);
    const double gap = std::abs(solve_exact_otc(g1, g2, cost).rho - solve_lp_oracle(g1, g2, cost).rho);
    worst = std::max(worst, gap);
    mismatches += gap > 1e-7;
    ++t;
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "%d instances, %d mismatches, worst gap %.3e\n", a.trials, mismatches, worst);
  emit(buf, a.out);
  return mismatches == 0 ? 0 : 1;
}

void report_error(const std::string& code, const std::string& message) {
  std::cerr << json{{"error", code}, {"message", message}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Network optimal transition coupling toolkit"};
  app.require_subcommand(1);

  PairArgs pair;
  auto* compare = app.add_subcommand("compare", "Transition-coupling cost of two network files");
  auto* align_cmd = app.add_subcommand("align", "Vertex and edge alignments of two network files");
  for (auto* cmd : {compare, align_cmd}) {
    cmd->add_option("first", pair.first, "First network (JSON)")->required();
    cmd->add_option("second", pair.second, "Second network (JSON)")->required();
    cmd->add_option("--out", pair.out, "Write the result here instead of stdout");
    add_solver_flags(cmd, pair.flags, true);
  }
  align_cmd->add_flag("--hard", pair.hard, "Also emit the hard alignment psi");
  align_cmd->add_option("--format", pair.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  BenchArgs bench;
  std::vector<std::string> classes{"sbm", "weighted", "lollipop"};
  std::vector<double> sigmas{2.5};
  double epsilon = 0.0;
  bool directed = false;
  std::string tu_dir, tu_name;
  int k = 5, repeats = 5;
  double train = 0.8;

  auto* isomorph = app.add_subcommand("isomorph", "Isomorphism detection on permuted copies");
  isomorph->add_option("--class", classes, "Graph classes")
      ->check(CLI::IsMember({"sbm", "weighted", "lollipop", "er"}));
  auto* sbm = app.add_subcommand("sbm-bench", "Block alignment of two stochastic block models");
  auto* factor = app.add_subcommand("factor-bench", "Factor recovery on Gaussian-mixture networks");
  factor->add_option("--sigma", sigmas, "Embedding spreads")->check(CLI::PositiveNumber);
  factor->add_option("--epsilon", epsilon, "Allowed factor error")->check(CLI::Range(0.0, 0.999999));
  factor->add_flag("--directed", directed, "Generate directed pairs");
  auto* classify = app.add_subcommand("classify", "k-NN classification of a TU dataset");
  classify->add_option("--dir", tu_dir, "Dataset directory")->required();
  classify->add_option("--name", tu_name, "Dataset name prefix")->required();
  classify->add_option("--k", k, "Neighbours")->check(CLI::PositiveNumber);
  classify->add_option("--train", train, "Training fraction")->check(CLI::Range(0.0, 1.0));
  classify->add_option("--repeats", repeats, "Random splits")->check(CLI::PositiveNumber);
  auto* oracle = app.add_subcommand("oracle-check", "Policy iteration against the LP oracle");

  for (auto* cmd : {isomorph, sbm, factor, classify, oracle}) {
    cmd->add_option("--seed", bench.seed, "Base seed")->required();
    cmd->add_option("--trials", bench.trials, "Number of trials")->check(CLI::PositiveNumber);
    cmd->add_option("--out", bench.out, "Write the result here instead of stdout");
    add_solver_flags(cmd, bench.flags, cmd == classify);
  }
  isomorph->get_option("--trials")->default_val(30);
  sbm->get_option("--trials")->default_val(10);
  factor->get_option("--trials")->default_val(20);
  oracle->get_option("--trials")->default_val(200);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*compare) return run_compare(pair);
    if (*align_cmd) return run_align(pair);
    if (*isomorph) return run_isomorph(bench, classes);
    if (*sbm) return run_sbm(bench);
    if (*factor) return run_factor(bench, sigmas, epsilon, directed);
    if (*classify) return run_classify(bench, tu_dir, tu_name, k, train, repeats);
    if (*oracle) return run_oracle_check(bench);
  } catch (const Error& e) {
    report_error(std::string(to_string(e.code())), e.what());
    return 1;
  } catch (const std::exception& e) {
    report_error("Internal", e.what());
    return 1;
  }
  return 2;
}
