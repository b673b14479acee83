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

#include "gramsel/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <set>
#include <sstream>

#include "gramsel/errors.hpp"
#include "gramsel/parallel.hpp"
#include "gramsel/rng.hpp"

namespace gramsel {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::vector<int>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

std::vector<int> to_vector(const ActuatorSet& s) { return {s.indices().begin(), s.indices().end()}; }

nlohmann::json spec_json(const GraphSpec& g) {
  nlohmann::json j;
  j["kind"] = graph_kind_name(g.kind);
  j["n"] = g.n;
  switch (g.kind) {
    case GraphKind::kErdosRenyi: j["p"] = g.p; break;
    case GraphKind::kBarabasiAlbert: j["m_attach"] = g.m_attach; break;
    case GraphKind::kLMesh:
      j["arm_width"] = g.arm_width;
      j["arm_len"] = g.arm_len > 0 ? g.arm_len : l_mesh_side(g.n, g.arm_width);
      break;
    case GraphKind::kRandomStable: break;
  }
  j["symmetric_weights"] = g.symmetric_weights;
  return j;
}

nlohmann::json ensembles_json(const std::vector<EnsembleSpec>& ensembles) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : ensembles) {
    nlohmann::json j = spec_json(e.graph);
    j["instances"] = e.instances;
    out.push_back(j);
  }
  return out;
}

struct Job {
  std::size_t kind_index;
  std::size_t instance;
};

std::vector<Job> flatten(const std::vector<EnsembleSpec>& ensembles) {
  std::vector<Job> jobs;
  for (std::size_t c = 0; c < ensembles.size(); ++c) {
    if (ensembles[c].instances == 0) throw InvalidArgument("ensemble instance count must be >= 1");
    ensembles[c].graph.validate();
    for (std::size_t i = 0; i < ensembles[c].instances; ++i) jobs.push_back({c, i});
  }
  return jobs;
}

LinearSystem instance_system(const GraphSpec& tmpl, std::uint64_t seed, double epsilon) {
  GraphSpec g = tmpl;
  g.seed = seed;
  LinearSystem sys;
  sys.a = generate(g).a;
  sys.candidates = LinearSystem::standard_basis(g.n);
  sys.epsilon = epsilon;
  return sys;
}

}  // namespace

std::uint64_t instance_seed(std::uint64_t master, std::size_t kind_index, std::size_t instance) {
  return derive_seed(derive_seed(master, kind_index), instance);
}

std::string ensemble_label(const GraphSpec& g) { return std::string(graph_kind_name(g.kind)); }

Table1Config Table1Config::defaults() {
  Table1Config c;
  GraphSpec er;
  er.kind = GraphKind::kErdosRenyi;
  er.n = 50;
  er.p = 0.08;
  GraphSpec ba;
  ba.kind = GraphKind::kBarabasiAlbert;
  ba.n = 50;
  ba.m_attach = 2;
  GraphSpec mesh;
  mesh.kind = GraphKind::kLMesh;
  mesh.n = 50;
  c.ensembles = {{er, 1}, {ba, 1}, {mesh, 1}};
  return c;
}

OptimalityConfig OptimalityConfig::defaults(std::size_t instances) {
  OptimalityConfig c;
  GraphSpec rss;
  rss.kind = GraphKind::kRandomStable;
  rss.n = 16;
  GraphSpec er;
  er.kind = GraphKind::kErdosRenyi;
  er.n = 16;
  er.p = 0.25;
  GraphSpec ba;
  ba.kind = GraphKind::kBarabasiAlbert;
  ba.n = 16;
  ba.m_attach = 2;
  c.ensembles = {{rss, instances}, {er, instances}, {ba, instances}};
  return c;
}

// ---------------------------------------------------------------------------

Table1Report run_table1(const Table1Config& config) {
  const auto start = Clock::now();
  const std::vector<Job> jobs = flatten(config.ensembles);
  Table1Report report;
  report.config = config;
  report.rows.resize(jobs.size());
  parallel_for(jobs.size(), config.jobs, [&](std::size_t idx) {
    const Job& job = jobs[idx];
    const GraphSpec& g = config.ensembles[job.kind_index].graph;
    Table1Row& row = report.rows[idx];
    row.network = ensemble_label(g);
    row.instance = job.instance;
    row.seed = instance_seed(config.master_seed, job.kind_index, job.instance);
    const GramianBundle bundle = build_bundle(instance_system(g, row.seed, config.epsilon));
    SamplePlan plan;
    plan.pairs = config.pairs;
    plan.seed = derive_seed(row.seed, 1);
    row.gamma = estimate_gamma(bundle, config.metric, plan);
    row.alpha = estimate_alpha(bundle, config.metric, plan);
  });
  report.table = aggregate_table1(report.rows);
  report.runtime_seconds = seconds_since(start);
  return report;
}

std::vector<Table1Aggregate> aggregate_table1(const std::vector<Table1Row>& rows) {
  std::vector<Table1Aggregate> out;
  for (const Table1Row& row : rows) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const Table1Aggregate& a) { return a.network == row.network; });
    if (it == out.end()) {
      Table1Aggregate a;
      a.network = row.network;
      a.gamma_emp = row.gamma.gamma;
      a.alpha_min = row.alpha.min;
      a.alpha_max = row.alpha.max;
      a.alpha_avg = 0.0;
      out.push_back(a);
      it = out.end() - 1;
    }
    it->gamma_emp = std::min(it->gamma_emp, row.gamma.gamma);
    it->alpha_min = std::min(it->alpha_min, row.alpha.min);
    it->alpha_max = std::max(it->alpha_max, row.alpha.max);
    it->violations += row.gamma.violations;
  }
  for (Table1Aggregate& a : out) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const Table1Row& row : rows) {
      if (row.network != a.network) continue;
      sum += row.alpha.average;
      ++count;
    }
    a.alpha_avg = sum / static_cast<double>(count);
  }
  return out;
}

// ---------------------------------------------------------------------------

OptimalityReport run_optimality_study(const OptimalityConfig& config) {
  const auto start = Clock::now();
  if (config.metrics.empty()) throw InvalidArgument("optimality study needs at least one metric");
  const std::vector<Job> jobs = flatten(config.ensembles);
  const std::size_t per_job = config.metrics.size();

  OptimalityReport report;
  report.config = config;
  report.rows.resize(jobs.size() * per_job);
  parallel_for(jobs.size(), config.jobs, [&](std::size_t idx) {
    const Job& job = jobs[idx];
    const GraphSpec& g = config.ensembles[job.kind_index].graph;
    const std::uint64_t seed = instance_seed(config.master_seed, job.kind_index, job.instance);
    const GramianBundle bundle = build_bundle(instance_system(g, seed, config.epsilon));
    for (std::size_t mi = 0; mi < per_job; ++mi) {
      OptimalityRow& row = report.rows[idx * per_job + mi];
      row.network = ensemble_label(g);
      row.metric = config.metrics[mi];
      row.instance = job.instance;
      row.seed = seed;
      SelectionReport sel = greedy(bundle, row.metric, config.k);
      attach_optimum(sel, bundle);
      row.greedy_picks = sel.picks;
      row.f_empty = sel.values.front();
      row.f_greedy = sel.final_value();
      row.optimal_set = to_vector(sel.optimum->set);
      row.f_opt = sel.optimum->value;
      row.ratio = *sel.ratio;
      row.exact = row.f_greedy == row.f_opt;
    }
  });
  report.summary = aggregate_optimality(report.rows, config.metrics);
  report.runtime_seconds = seconds_since(start);
  return report;
}

std::vector<OptimalityAggregate> aggregate_optimality(const std::vector<OptimalityRow>& rows,
                                                      const std::vector<MetricKind>& metrics) {
  std::vector<std::string> networks;
  for (const auto& r : rows) {
    if (std::find(networks.begin(), networks.end(), r.network) == networks.end()) {
      networks.push_back(r.network);
    }
  }
  networks.push_back("all");

  std::vector<OptimalityAggregate> out;
  for (MetricKind metric : metrics) {
    for (const std::string& net : networks) {
      OptimalityAggregate a;
      a.network = net;
      a.metric = metric;
      double sum = 0.0;
      std::size_t hits = 0;
      for (const auto& r : rows) {
        if (r.metric != metric || (net != "all" && r.network != net)) continue;
        if (a.count == 0) {
          a.min_ratio = r.ratio;
          a.max_ratio = r.ratio;
        }
        ++a.count;
        sum += r.ratio;
        a.min_ratio = std::min(a.min_ratio, r.ratio);
        a.max_ratio = std::max(a.max_ratio, r.ratio);
        hits += r.exact ? 1 : 0;
      }
      if (a.count == 0) continue;
      a.mean_ratio = sum / static_cast<double>(a.count);
      a.exact_fraction = static_cast<double>(hits) / static_cast<double>(a.count);
      out.push_back(a);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

nlohmann::json emit_selection_figure_data(const WeightedNetwork& net,
                                          const SelectionReport& report) {
  const std::size_t n = net.a.rows();
  const std::set<int> picked(report.picks.begin(), report.picks.end());
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t i = 0; i < n; ++i) {
    nodes.push_back({{"id", i}, {"selected", picked.count(static_cast<int>(i)) > 0}});
  }
  nlohmann::json j;
  j["metric"] = metric_name(report.metric);
  j["k"] = report.picks.size();
  j["picks"] = report.picks;
  j["nodes"] = nodes;
  j["edges"] = net.edges;
  return j;
}

std::string figure_nodes_csv(const nlohmann::json& figure) {
  std::ostringstream out;
  out << "id,selected\n";
  for (const auto& node : figure.at("nodes")) {
    out << node.at("id").get<std::size_t>() << ',' << (node.at("selected").get<bool>() ? 1 : 0)
        << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------

nlohmann::json to_json(const GammaEstimate& g) {
  nlohmann::json j;
  j["gamma_emp"] = g.gamma;
  j["samples"] = g.samples;
  j["skipped"] = g.skipped;
  j["violations"] = g.violations;
  if (g.witness) {
    j["witness"] = {{"S", to_vector(g.witness->s)},
                    {"Omega", to_vector(g.witness->omega)},
                    {"ratio", g.witness->ratio}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

nlohmann::json to_json(const AlphaEstimate& a) {
  nlohmann::json j;
  j["alpha_emp_range"] = {a.min, a.max};
  j["alpha_emp_avg"] = a.average;
  j["samples"] = a.samples;
  j["skipped"] = a.skipped;
  if (a.witness) {
    j["witness"] = {{"S", to_vector(a.witness->s)},
                    {"Omega", to_vector(a.witness->omega)},
                    {"j", a.witness->j},
                    {"alpha", a.witness->alpha}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

nlohmann::json to_json(const RatioEstimate& r) {
  nlohmann::json j;
  j["mode"] = estimate_mode_name(r.mode);
  j["gamma"] = to_json(r.gamma);
  j["alpha"] = to_json(r.alpha);
  return j;
}

nlohmann::json to_json(const SelectionReport& r) {
  nlohmann::json j;
  j["metric"] = metric_name(r.metric);
  j["k"] = r.picks.size();
  j["picks"] = r.picks;
  j["values"] = r.values;
  j["evaluations"] = r.evaluations;
  if (r.optimum) {
    j["optimum"] = {{"set", to_vector(r.optimum->set)}, {"value", r.optimum->value}};
  } else {
    j["optimum"] = nullptr;
  }
  j["ratio"] = r.ratio ? nlohmann::json(*r.ratio) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const Table1Report& r) {
  nlohmann::json j;
  j["config"] = {{"ensembles", ensembles_json(r.config.ensembles)},
                 {"metric", metric_name(r.config.metric)},
                 {"pairs", r.config.pairs},
                 {"epsilon", r.config.epsilon},
                 {"master_seed", r.config.master_seed}};
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"network", row.network},
                    {"instance", row.instance},
                    {"seed", row.seed},
                    {"gamma", to_json(row.gamma)},
                    {"alpha", to_json(row.alpha)}});
  }
  j["instances"] = rows;
  nlohmann::json table = nlohmann::json::array();
  for (const auto& a : r.table) {
    table.push_back({{"network", a.network},
                     {"gamma_emp", a.gamma_emp},
                     {"alpha_range", {a.alpha_min, a.alpha_max}},
                     {"alpha_avg", a.alpha_avg},
                     {"violations", a.violations}});
  }
  j["table"] = table;
  return j;
}

nlohmann::json to_json(const OptimalityReport& r) {
  nlohmann::json metrics = nlohmann::json::array();
  for (MetricKind m : r.config.metrics) metrics.push_back(metric_name(m));
  nlohmann::json j;
  j["config"] = {{"ensembles", ensembles_json(r.config.ensembles)},
                 {"metrics", metrics},
                 {"k", r.config.k},
                 {"epsilon", r.config.epsilon},
                 {"master_seed", r.config.master_seed}};
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"network", row.network},
                    {"metric", metric_name(row.metric)},
                    {"instance", row.instance},
                    {"seed", row.seed},
                    {"greedy_picks", row.greedy_picks},
                    {"f_empty", row.f_empty},
                    {"f_greedy", row.f_greedy},
                    {"optimal_set", row.optimal_set},
                    {"f_opt", row.f_opt},
                    {"ratio", row.ratio},
                    {"exact", row.exact}});
  }
  j["instances"] = rows;
  nlohmann::json summary = nlohmann::json::array();
  for (const auto& a : r.summary) {
    summary.push_back({{"network", a.network},
                       {"metric", metric_name(a.metric)},
                       {"count", a.count},
                       {"mean_ratio", a.mean_ratio},
                       {"min_ratio", a.min_ratio},
                       {"max_ratio", a.max_ratio},
                       {"exact_fraction", a.exact_fraction}});
  }
  j["summary"] = summary;
  return j;
}

std::string table1_csv(const Table1Report& r) {
  std::ostringstream out;
  out << "network,instance,seed,gamma_emp,gamma_samples,gamma_skipped,violations,"
         "alpha_min,alpha_max,alpha_avg,alpha_samples,alpha_skipped\n";
  for (const auto& row : r.rows) {
    out << row.network << ',' << row.instance << ',' << row.seed << ',' << num(row.gamma.gamma)
        << ',' << row.gamma.samples << ',' << row.gamma.skipped << ',' << row.gamma.violations
        << ',' << num(row.alpha.min) << ',' << num(row.alpha.max) << ','
        << num(row.alpha.average) << ',' << row.alpha.samples << ',' << row.alpha.skipped << '\n';
  }
  return out.str();
}

std::string optimality_csv(const OptimalityReport& r) {
  std::ostringstream out;
  out << "network,metric,instance,seed,greedy_picks,f_empty,f_greedy,optimal_set,f_opt,ratio,"
         "exact\n";
  for (const auto& row : r.rows) {
    out << row.network << ',' << metric_name(row.metric) << ',' << row.instance << ','
        << row.seed << ',' << join(row.greedy_picks, ' ') << ',' << num(row.f_empty) << ','
        << num(row.f_greedy) << ',' << join(row.optimal_set, ' ') << ',' << num(row.f_opt)
        << ',' << num(row.ratio) << ',' << (row.exact ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace gramsel
