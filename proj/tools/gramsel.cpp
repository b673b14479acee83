// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// gramsel: actuator selection and submodularity diagnostics from the shell.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gramsel/errors.hpp"
#include "gramsel/estimators.hpp"
#include "gramsel/guarantees.hpp"
#include "gramsel/harness.hpp"
#include "gramsel/networks.hpp"
#include "gramsel/selection.hpp"
#include "gramsel/simd.hpp"

namespace fs = std::filesystem;
using namespace gramsel;
using nlohmann::json;

namespace {

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path.string() + "'");
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Writes to `path`, or to stdout when it is empty or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text(path, text);
  }
}

std::string fmt(double v, int digits = 6) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string list(const std::vector<int>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + "}";
}

std::string list(const ActuatorSet& s) { return list(std::vector<int>(s.indices().begin(), s.indices().end())); }

struct LoadedInstance {
  LinearSystem system;
  json extra;
};

// Instance epsilon: --epsilon, else the file's, else the metric default.
LoadedInstance load_instance(const std::string& path, MetricKind kind,
                             std::optional<double> epsilon) {
  InstanceFile file = parse_instance(read_json(path));
  if (epsilon) {
    file.system.epsilon = *epsilon;
  } else if (!file.epsilon_given) {
    file.system.epsilon = default_epsilon(file.system, kind);
  }
  return {std::move(file.system), std::move(file.extra)};
}

std::string selection_table(const SelectionReport& r) {
  std::ostringstream out;
  out << "metric " << metric_name(r.metric) << ", k = " << r.picks.size() << "\n";
  out << "  step  pick  f(S)            gain\n";
  out << "  ----  ----  --------------  --------------\n";
  for (std::size_t i = 0; i <= r.picks.size(); ++i) {
    char line[128];
    if (i == 0) {
      std::snprintf(line, sizeof line, "  %4d  %4s  %14s  %14s\n", 0, "-", fmt(r.values[0]).c_str(),
                    "-");
    } else {
      std::snprintf(line, sizeof line, "  %4zu  %4d  %14s  %14s\n", i, r.picks[i - 1],
                    fmt(r.values[i]).c_str(), fmt(r.values[i] - r.values[i - 1]).c_str());
    }
    out << line;
  }
  out << "greedy set " << list(r.picks) << ", " << r.evaluations << " evaluations\n";
  if (r.optimum) {
    out << "optimum    " << list(r.optimum->set) << ", f* = " << fmt(r.optimum->value, 10) << "\n";
    out << "ratio      " << fmt(*r.ratio, 10) << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
  std::string kind = "er";
  std::size_t n = 50;
  double p = 0.08;
  int m_attach = 2;
  int arm_width = 3;
  int arm_len = 0;
  bool symmetric = false;
  std::uint64_t seed = 0;
  std::optional<double> epsilon;
  std::string out;
};

int run_generate(const GenerateArgs& a) {
  GraphSpec spec;
  spec.kind = parse_graph_kind(a.kind);
  spec.n = a.n;
  spec.p = a.p;
  spec.m_attach = a.m_attach;
  spec.arm_width = a.arm_width;
  spec.arm_len = a.arm_len;
  spec.symmetric_weights = a.symmetric;
  spec.seed = a.seed;
  const WeightedNetwork net = generate(spec);
  for (const auto& w : net.warnings) std::cerr << "warning: " << w << "\n";
  json j = network_instance_json(net, a.epsilon.value_or(0.0));
  // Without --epsilon the consumer picks the metric-dependent default.
  if (!a.epsilon) j["epsilon"] = nullptr;
  emit(a.out, dump(j));
  return 0;
}

struct SelectArgs {
  std::string instance;
  std::string metric = "lmin";
  int k = 1;
  bool brute = false;
  std::uint64_t cap = BruteForceOptions{}.cap;
  std::optional<double> epsilon;
  int jobs = 1;
  std::string out;
};

int run_select(const SelectArgs& a) {
  const MetricKind kind = parse_metric(a.metric);
  const LoadedInstance inst = load_instance(a.instance, kind, a.epsilon);
  const GramianBundle bundle = build_bundle(inst.system, a.jobs);
  SelectionReport report = greedy(bundle, kind, a.k, a.jobs);
  if (a.brute) attach_optimum(report, bundle, BruteForceOptions{a.cap, a.jobs});
  json j = to_json(report);
  j["epsilon"] = inst.system.epsilon;
  if (a.out.empty() || a.out == "-") {
    std::cout << dump(j);
    std::cerr << selection_table(report);
  } else {
    write_text(a.out, dump(j));
    std::cout << selection_table(report);
  }
  return 0;
}

struct BoundsArgs {
  std::string instance;
  std::string metric = "lmin";
  std::optional<double> epsilon;
  int jobs = 1;
  std::string out;
};

int run_bounds(const BoundsArgs& a) {
  const MetricKind kind = parse_metric(a.metric);
  if (kind != MetricKind::kLambdaMin && kind != MetricKind::kNegTraceInv) {
    throw InvalidArgument("closed-form bounds exist only for lmin and ntrinv");
  }
  const LoadedInstance inst = load_instance(a.instance, kind, a.epsilon);
  const GuaranteeBound b = bounds_for(kind, build_bundle(inst.system, a.jobs));
  json j;
  j["gamma_lb"] = b.gamma_lb;
  j["alpha_ub"] = b.alpha_ub;
  j["factor"] = b.factor;
  j["vacuous"] = b.vacuous;
  j["source"] = bound_source_name(b.source);
  j["epsilon"] = inst.system.epsilon;
  emit(a.out, dump(j));
  return 0;
}

struct EstimateArgs {
  std::string instance;
  std::string metric = "ntrinv";
  std::uint64_t pairs = 5000;
  std::uint64_t seed = 0;
  bool exhaustive = false;
  bool all_pairs = false;
  std::optional<double> epsilon;
  int jobs = 1;
  std::string out;
};

int run_estimate(const EstimateArgs& a) {
  const MetricKind kind = parse_metric(a.metric);
  const LoadedInstance inst = load_instance(a.instance, kind, a.epsilon);
  const GramianBundle bundle = build_bundle(inst.system, a.jobs);
  RatioEstimate est;
  if (a.exhaustive) {
    est = exhaustive_gamma_alpha(bundle, kind);
  } else {
    SamplePlan plan;
    plan.pairs = a.pairs;
    plan.seed = a.seed;
    plan.all_pairs = a.all_pairs;
    plan.jobs = a.jobs;
    est = estimate_ratios(bundle, kind, plan);
  }
  json j = to_json(est);
  j["metric"] = metric_name(kind);
  j["epsilon"] = inst.system.epsilon;
  if (!a.exhaustive && !a.all_pairs) {
    j["pairs"] = a.pairs;
    j["seed"] = a.seed;
  }
  emit(a.out, dump(j));
  return 0;
}

// ---------------------------------------------------------------------------

struct ExperimentArgs {
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string out_dir = "results";
  std::size_t instances = 0;  // 0 = experiment default
};

void write_runtime(const fs::path& dir, const std::string& name, double seconds, int jobs) {
  json j{{"experiment", name}, {"runtime_seconds", seconds}, {"jobs", jobs}};
  write_text(dir / (name + "_runtime.json"), dump(j));
}

struct Table1Args {
  std::string metric = "ntrinv";
  std::uint64_t pairs = 5000;
  std::size_t n = 50;
  double p = 0.08;
  int m_attach = 2;
};

int run_experiment_table1(const ExperimentArgs& e, const Table1Args& a) {
  Table1Config config = Table1Config::defaults();
  config.metric = parse_metric(a.metric);
  config.pairs = a.pairs;
  config.master_seed = e.seed;
  config.jobs = e.jobs;
  for (auto& ens : config.ensembles) {
    ens.graph.n = a.n;
    ens.graph.p = a.p;
    ens.graph.m_attach = a.m_attach;
    if (e.instances > 0) ens.instances = e.instances;
  }
  const Table1Report report = run_table1(config);
  const fs::path dir(e.out_dir);
  write_text(dir / "table1.json", dump(to_json(report)));
  write_text(dir / "table1.csv", table1_csv(report));
  write_runtime(dir, "table1", report.runtime_seconds, e.jobs);

  std::printf("%-8s %-10s %-22s %-10s %s\n", "network", "gamma_emp", "alpha_emp range",
              "alpha_avg", "violations");
  for (const auto& row : report.table) {
    const std::string range = "[" + fmt(row.alpha_min, 3) + ", " + fmt(row.alpha_max, 3) + "]";
    std::printf("%-8s %-10s %-22s %-10s %llu\n", row.network.c_str(), fmt(row.gamma_emp).c_str(),
                range.c_str(), fmt(row.alpha_avg, 3).c_str(),
                static_cast<unsigned long long>(row.violations));
  }
  for (const auto& row : report.rows) {
    if (row.gamma.violations > 0 && row.gamma.witness) {
      std::cerr << "note: " << row.network << " instance " << row.instance
                << " has a submodularity violation; worst S = " << list(row.gamma.witness->s)
                << ", O = " << list(row.gamma.witness->omega)
                << ", ratio = " << fmt(row.gamma.witness->ratio, 12) << "\n";
    }
  }
  std::cerr << "wrote " << (dir / "table1.json").string() << " and table1.csv in "
            << fmt(report.runtime_seconds, 3) << " s\n";
  return 0;
}

struct OptimalityArgs {
  std::vector<std::string> metrics{"lmin", "ntrinv"};
  int k = 4;
  std::size_t n = 16;
  double p = 0.25;
};

int run_experiment_optimality(const ExperimentArgs& e, const OptimalityArgs& a) {
  OptimalityConfig config = OptimalityConfig::defaults(e.instances > 0 ? e.instances : 500);
  config.metrics.clear();
  for (const auto& m : a.metrics) config.metrics.push_back(parse_metric(m));
  config.k = a.k;
  config.master_seed = e.seed;
  config.jobs = e.jobs;
  for (auto& ens : config.ensembles) {
    ens.graph.n = a.n;
    ens.graph.p = a.p;
  }
  const OptimalityReport report = run_optimality_study(config);
  const fs::path dir(e.out_dir);
  write_text(dir / "optimality.json", dump(to_json(report)));
  write_text(dir / "optimality.csv", optimality_csv(report));
  write_runtime(dir, "optimality", report.runtime_seconds, e.jobs);

  std::printf("%-8s %-7s %6s %-11s %-11s %s\n", "network", "metric", "count", "mean_ratio",
              "min_ratio", "exact_fraction");
  for (const auto& row : report.summary) {
    std::printf("%-8s %-7s %6zu %-11s %-11s %s\n", row.network.c_str(),
                std::string(metric_name(row.metric)).c_str(), row.count,
                fmt(row.mean_ratio, 5).c_str(), fmt(row.min_ratio, 5).c_str(),
                fmt(row.exact_fraction, 4).c_str());
  }
  std::cerr << "wrote " << (dir / "optimality.json").string() << " and optimality.csv in "
            << fmt(report.runtime_seconds, 3) << " s\n";
  return 0;
}

struct FigureArgs {
  std::string instance;  // optional; otherwise a network is generated
  std::string kind = "ba";
  std::size_t n = 50;
  double p = 0.08;
  int m_attach = 2;
  std::string metric = "ntrinv";
  int k = 10;
  std::optional<double> epsilon;
};

int run_experiment_figure(const ExperimentArgs& e, const FigureArgs& a) {
  const MetricKind kind = parse_metric(a.metric);
  WeightedNetwork net;
  LinearSystem sys;
  if (!a.instance.empty()) {
    LoadedInstance inst = load_instance(a.instance, kind, a.epsilon);
    sys = inst.system;
    net.a = sys.a;
    if (inst.extra.contains("adjacency")) {
      net.edges = inst.extra.at("adjacency").get<std::vector<Edge>>();
    }
  } else {
    GraphSpec spec;
    spec.kind = parse_graph_kind(a.kind);
    spec.n = a.n;
    spec.p = a.p;
    spec.m_attach = a.m_attach;
    spec.seed = instance_seed(e.seed, 0, 0);
    net = generate(spec);
    for (const auto& w : net.warnings) std::cerr << "warning: " << w << "\n";
    sys.a = net.a;
    sys.candidates = LinearSystem::standard_basis(spec.n);
    sys.epsilon = a.epsilon.value_or(kExperimentEpsilon);
  }
  const GramianBundle bundle = build_bundle(sys, e.jobs);
  const SelectionReport report = greedy(bundle, kind, a.k, e.jobs);
  json fig = emit_selection_figure_data(net, report);
  fig["values"] = report.values;
  const fs::path dir(e.out_dir);
  write_text(dir / "figure.json", dump(fig));
  write_text(dir / "figure_nodes.csv", figure_nodes_csv(fig));
  std::ostringstream edges;
  edges << "source,target\n";
  for (const auto& [i, j] : net.edges) edges << i << ',' << j << '\n';
  write_text(dir / "figure_edges.csv", edges.str());
  std::cout << "selected " << list(report.picks) << "\n";
  std::cerr << "wrote " << (dir / "figure.json").string()
            << ", figure_nodes.csv and figure_edges.csv\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Actuator selection for linear networks via Gramian metrics"};
  app.require_subcommand(1);
  std::string simd;
  app.add_option("--simd", simd, "Kernel backend override: scalar|avx2|neon");

  const std::string metric_help = "Metric: trace|logdet|rank|lmin|ntrinv";
  auto metric_check = CLI::IsMember({"trace", "logdet", "rank", "lmin", "ntrinv"});

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Generate a stabilized random network instance");
  g->add_option("--kind", gen.kind, "Network kind: er|ba|lmesh|rss")
      ->check(CLI::IsMember({"er", "ba", "lmesh", "rss"}))
      ->capture_default_str();
  g->add_option("--n", gen.n, "Number of nodes")->capture_default_str();
  g->add_option("--p", gen.p, "Erdos-Renyi edge probability")->capture_default_str();
  g->add_option("--m-attach", gen.m_attach, "Barabasi-Albert edges per new node")
      ->capture_default_str();
  g->add_option("--arm-width", gen.arm_width, "L-mesh arm width")->capture_default_str();
  g->add_option("--arm-len", gen.arm_len, "L-mesh side (0 = smallest fitting n)")
      ->capture_default_str();
  g->add_flag("--symmetric", gen.symmetric, "Use one weight per undirected edge");
  g->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  g->add_option("--epsilon", gen.epsilon, "Regularizer stored in the instance");
  g->add_option("--out", gen.out, "Output file (default stdout)");

  SelectArgs sel;
  auto* s = app.add_subcommand("select", "Greedy actuator selection");
  s->add_option("--instance", sel.instance, "Instance JSON")->required();
  s->add_option("--metric", sel.metric, metric_help)->check(metric_check)->capture_default_str();
  s->add_option("--k", sel.k, "Number of actuators")->required();
  s->add_flag("--brute", sel.brute, "Also compute the optimum by enumeration");
  s->add_option("--cap", sel.cap, "Maximum subsets to enumerate")->capture_default_str();
  s->add_option("--epsilon", sel.epsilon, "Override the regularizer");
  s->add_option("--jobs", sel.jobs, "Worker threads")->capture_default_str();
  s->add_option("--out", sel.out, "Write JSON here and the table to stdout");

  BoundsArgs bnd;
  auto* b = app.add_subcommand("bounds", "Closed-form submodularity ratio and curvature bounds");
  b->add_option("--instance", bnd.instance, "Instance JSON")->required();
  b->add_option("--metric", bnd.metric, "Metric: lmin|ntrinv")
      ->check(CLI::IsMember({"lmin", "ntrinv"}))
      ->capture_default_str();
  b->add_option("--epsilon", bnd.epsilon, "Override the regularizer");
  b->add_option("--jobs", bnd.jobs, "Worker threads")->capture_default_str();
  b->add_option("--out", bnd.out, "Output file (default stdout)");

  EstimateArgs est;
  auto* e = app.add_subcommand("estimate", "Empirical submodularity ratio and curvature");
  e->add_option("--instance", est.instance, "Instance JSON")->required();
  e->add_option("--metric", est.metric, metric_help)->check(metric_check)->capture_default_str();
  e->add_option("--pairs", est.pairs, "Sampled subset pairs")->capture_default_str();
  e->add_option("--seed", est.seed, "Sampling seed")->capture_default_str();
  auto* exh = e->add_flag("--exhaustive", est.exhaustive, "Exact values over all subsets (M <= 6)");
  e->add_flag("--all-pairs", est.all_pairs, "Walk every pair instead of sampling (M <= 6)")
      ->excludes(exh);
  e->add_option("--epsilon", est.epsilon, "Override the regularizer");
  e->add_option("--jobs", est.jobs, "Worker threads")->capture_default_str();
  e->add_option("--out", est.out, "Output file (default stdout)");

  ExperimentArgs exp;
  auto* x = app.add_subcommand("experiment", "Reproducible experiment suites");
  x->require_subcommand(1);
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", exp.seed, "Master seed")->capture_default_str();
    sub->add_option("--jobs", exp.jobs, "Worker threads")->capture_default_str();
    sub->add_option("--out-dir", exp.out_dir, "Output directory")->capture_default_str();
  };

  Table1Args t1;
  auto* xt = x->add_subcommand("table1", "Empirical ratio table for ER, BA and L-mesh networks");
  add_common(xt);
  xt->add_option("--instances", exp.instances, "Instances per network kind (default 1)");
  xt->add_option("--metric", t1.metric, metric_help)->check(metric_check)->capture_default_str();
  xt->add_option("--pairs", t1.pairs, "Sampled pairs per instance")->capture_default_str();
  xt->add_option("--n", t1.n, "Nodes per network")->capture_default_str();
  xt->add_option("--p", t1.p, "Erdos-Renyi edge probability")->capture_default_str();
  xt->add_option("--m-attach", t1.m_attach, "Barabasi-Albert edges per new node")
      ->capture_default_str();

  OptimalityArgs opt;
  auto* xo = x->add_subcommand("optimality", "Greedy against brute force on small networks");
  add_common(xo);
  xo->add_option("--instances", exp.instances, "Instances per network kind (default 500)");
  xo->add_option("--metrics", opt.metrics, "Metrics to study")
      ->check(metric_check)
      ->capture_default_str();
  xo->add_option("--k", opt.k, "Actuators per instance")->capture_default_str();
  xo->add_option("--n", opt.n, "Nodes per network")->capture_default_str();
  xo->add_option("--p", opt.p, "Erdos-Renyi edge probability")->capture_default_str();

  FigureArgs fig;
  auto* xf = x->add_subcommand("figure", "Selected-node data for network plots");
  add_common(xf);
  xf->add_option("--instance", fig.instance, "Instance JSON (default: generate one)");
  xf->add_option("--kind", fig.kind, "Network kind when generating")
      ->check(CLI::IsMember({"er", "ba", "lmesh", "rss"}))
      ->capture_default_str();
  xf->add_option("--n", fig.n, "Nodes when generating")->capture_default_str();
  xf->add_option("--p", fig.p, "Erdos-Renyi edge probability")->capture_default_str();
  xf->add_option("--m-attach", fig.m_attach, "Barabasi-Albert edges per new node")
      ->capture_default_str();
  xf->add_option("--metric", fig.metric, metric_help)->check(metric_check)->capture_default_str();
  xf->add_option("--k", fig.k, "Actuators to select")->capture_default_str();
  xf->add_option("--epsilon", fig.epsilon, "Override the regularizer");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!simd.empty()) {
      if (simd == "scalar") simd::set_backend(simd::Backend::kScalar);
      else if (simd == "avx2") simd::set_backend(simd::Backend::kAvx2);
      else if (simd == "neon") simd::set_backend(simd::Backend::kNeon);
      else throw InvalidArgument("unknown SIMD backend '" + simd + "'");
    }
    if (g->parsed()) return run_generate(gen);
    if (s->parsed()) return run_select(sel);
    if (b->parsed()) return run_bounds(bnd);
    if (e->parsed()) return run_estimate(est);
    if (xt->parsed()) return run_experiment_table1(exp, t1);
    if (xo->parsed()) return run_experiment_optimality(exp, opt);
    if (xf->parsed()) return run_experiment_figure(exp, fig);
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 0;
}
