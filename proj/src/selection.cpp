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

#include "gramsel/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "gramsel/errors.hpp"
#include "gramsel/linalg.hpp"
#include "gramsel/parallel.hpp"

namespace gramsel {
namespace {

double checked_evaluate(MetricKind kind, const GramianBundle& bundle, const ActuatorSet& s) {
  try {
    return evaluate(kind, bundle, s);
  } catch (const EvaluationError&) {
    throw;
  } catch (const Error& e) {
    throw EvaluationError(e.what(), std::vector<int>(s.indices().begin(), s.indices().end()));
  }
}

struct Candidate {
  int index = -1;
  double value = 0.0;
  double secondary = 0.0;  // lambda_n of the assembled Gramian, Rank only
};

bool tied(double a, double b, double scale_a, double scale_b) {
  if (a == b) return true;  // covers -inf == -inf
  if (!std::isfinite(a) || !std::isfinite(b)) return false;
  return std::abs(a - b) <= kGainTieTolerance * std::max(std::abs(scale_a), std::abs(scale_b));
}

// True when `c` should replace the current `best`; candidates arrive in
// increasing index order so a tie keeps `best`.
bool beats(const Candidate& c, const Candidate& best, double f_current, MetricKind kind) {
  const bool finite_base = std::isfinite(f_current);
  const double gain_c = finite_base ? c.value - f_current : c.value;
  const double gain_b = finite_base ? best.value - f_current : best.value;
  if (tied(c.value, best.value, gain_c, gain_b)) {
    if (kind != MetricKind::kRank) return false;
    if (tied(c.secondary, best.secondary, c.secondary, best.secondary)) return false;
    return c.secondary > best.secondary;
  }
  return c.value > best.value;
}

void require_k(const GramianBundle& bundle, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > bundle.num_candidates()) {
    throw InvalidArgument("k must satisfy 1 <= k <= M (k = " + std::to_string(k) +
                          ", M = " + std::to_string(bundle.num_candidates()) + ")");
  }
}

}  // namespace

SelectionReport greedy(const GramianBundle& bundle, MetricKind kind, int k, int jobs) {
  require_k(bundle, k);
  const int m = static_cast<int>(bundle.num_candidates());

  SelectionReport report;
  report.metric = kind;
  ActuatorSet current;
  double f_current = checked_evaluate(kind, bundle, current);
  report.values.push_back(f_current);
  report.evaluations = 1;

  for (int round = 0; round < k; ++round) {
    std::vector<int> remaining;
    for (int e = 0; e < m; ++e) {
      if (!current.contains(e)) remaining.push_back(e);
    }
    std::vector<Candidate> scored(remaining.size());
    parallel_for(remaining.size(), jobs, [&](std::size_t r) {
      const ActuatorSet trial = current.with(remaining[r]);
      Candidate& c = scored[r];
      c.index = remaining[r];
      if (kind == MetricKind::kRank) {
        const SymMatrix w = assemble(bundle, trial);
        const Spectrum s = sym_eigenvalues(w);
        c.value = static_cast<double>(numerical_rank(s));
        c.secondary = psd_clamp(s.min(), s.max());
      } else {
        c.value = checked_evaluate(kind, bundle, trial);
      }
    });
    report.evaluations += scored.size();

    Candidate best = scored.front();
    for (std::size_t r = 1; r < scored.size(); ++r) {
      if (beats(scored[r], best, f_current, kind)) best = scored[r];
    }
    current = current.with(best.index);
    f_current = best.value;
    report.picks.push_back(best.index);
    report.values.push_back(f_current);
  }
  return report;
}

std::uint64_t binomial(std::uint64_t m, std::uint64_t k) {
  if (k > m) return 0;
  k = std::min(k, m - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // r * (m - k + i) / i stays integral at every step.
    const unsigned __int128 next = static_cast<unsigned __int128>(r) * (m - k + i) / i;
    if (next > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    r = static_cast<std::uint64_t>(next);
  }
  return r;
}

SelectionReport brute_force(const GramianBundle& bundle, MetricKind kind, int k,
                            const BruteForceOptions& options) {
  require_k(bundle, k);
  const int m = static_cast<int>(bundle.num_candidates());
  const std::uint64_t total = binomial(static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(k));
  if (total > options.cap) {
    throw CapExceeded("brute force would enumerate C(" + std::to_string(m) + ", " +
                          std::to_string(k) + ") subsets, above the cap of " +
                          std::to_string(options.cap),
                      total);
  }

  constexpr std::size_t kBatch = 4096;
  std::vector<int> comb(static_cast<std::size_t>(k));
  std::iota(comb.begin(), comb.end(), 0);
  bool more = true;
  auto advance = [&] {
    int i = k - 1;
    while (i >= 0 && comb[static_cast<std::size_t>(i)] == m - k + i) --i;
    if (i < 0) {
      more = false;
      return;
    }
    ++comb[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
    }
  };

  std::optional<Optimum> best;
  std::vector<ActuatorSet> batch;
  std::vector<double> values;
  while (more) {
    batch.clear();
    while (more && batch.size() < kBatch) {
      batch.emplace_back(comb);
      advance();
    }
    values.assign(batch.size(), 0.0);
    parallel_for(batch.size(), options.jobs,
                 [&](std::size_t i) { values[i] = checked_evaluate(kind, bundle, batch[i]); });
    for (std::size_t i = 0; i < batch.size(); ++i) {
      if (!best || values[i] > best->value) best = Optimum{batch[i], values[i]};
    }
  }

  SelectionReport report;
  report.metric = kind;
  report.picks.assign(best->set.indices().begin(), best->set.indices().end());
  report.values = {checked_evaluate(kind, bundle, ActuatorSet{}), best->value};
  report.optimum = best;
  report.evaluations = total + 1;
  return report;
}

double normalized_ratio(double f_greedy, double f_opt, double f_empty, double f_full) {
  if (!std::isfinite(f_empty)) {
    throw InvalidArgument("normalized ratio needs a finite f(empty); regularize the base Gramian");
  }
  const double tol = 1e-12 * (1.0 + std::abs(f_full - f_empty));
  const double gain_opt = f_opt - f_empty;
  if (gain_opt <= tol) return 1.0;
  return (f_greedy - f_empty) / gain_opt;
}

void attach_optimum(SelectionReport& report, const GramianBundle& bundle,
                    const BruteForceOptions& options) {
  const int k = static_cast<int>(report.picks.size());
  const SelectionReport opt = brute_force(bundle, report.metric, k, options);
  std::vector<int> all(bundle.num_candidates());
  std::iota(all.begin(), all.end(), 0);
  const double f_full = checked_evaluate(report.metric, bundle, ActuatorSet(all));
  report.optimum = opt.optimum;
  report.ratio = normalized_ratio(report.final_value(), opt.optimum->value, report.values.front(),
                                  f_full);
  report.evaluations += opt.evaluations + 1;
}

EnsembleStats summarize_ratios(std::vector<double> ratios, std::vector<std::uint8_t> exact) {
  EnsembleStats stats;
  stats.ratios = std::move(ratios);
  stats.exact = std::move(exact);
  if (stats.ratios.empty()) return stats;
  double sum = 0.0;
  stats.min = stats.ratios.front();
  for (double r : stats.ratios) {
    sum += r;
    stats.min = std::min(stats.min, r);
  }
  stats.mean = sum / static_cast<double>(stats.ratios.size());
  const auto hits = std::count(stats.exact.begin(), stats.exact.end(), std::uint8_t{1});
  stats.exact_fraction = static_cast<double>(hits) / static_cast<double>(stats.exact.size());
  return stats;
}

EnsembleStats greedy_vs_optimal(const std::function<LinearSystem(std::uint64_t)>& make_instance,
                                MetricKind kind, int k, std::uint64_t seeds, int jobs) {
  std::vector<double> ratios(seeds);
  std::vector<std::uint8_t> exact(seeds);
  parallel_for(seeds, jobs, [&](std::size_t i) {
    const GramianBundle bundle = build_bundle(make_instance(i));
    SelectionReport report = greedy(bundle, kind, k);
    attach_optimum(report, bundle);
    ratios[i] = *report.ratio;
    exact[i] = report.final_value() == report.optimum->value ? 1 : 0;
  });
  return summarize_ratios(std::move(ratios), std::move(exact));
}

}  // namespace gramsel
