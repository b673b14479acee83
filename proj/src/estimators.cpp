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

#include "gramsel/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "gramsel/errors.hpp"
#include "gramsel/parallel.hpp"
#include "gramsel/rng.hpp"

namespace gramsel {
namespace {

constexpr std::uint64_t kGammaStream = 0x67616d6d61ULL;  // "gamma"
constexpr std::uint64_t kAlphaStream = 0x616c706861ULL;  // "alpha"
constexpr int kMaxRedraws = 10000;

// Normalized metric f(S) - f(empty) with the degeneracy tolerance.
class NormalizedMetric {
 public:
  NormalizedMetric(const GramianBundle& bundle, MetricKind kind)
      : bundle_(bundle), kind_(kind), m_(static_cast<int>(bundle.num_candidates())) {
    if (m_ == 0) throw InvalidArgument("estimators need at least one candidate");
    try {
      f_empty_ = evaluate(kind_, bundle_, ActuatorSet{});
    } catch (const SingularMatrix&) {
      f_empty_ = -std::numeric_limits<double>::infinity();
    }
    if (!std::isfinite(f_empty_)) {
      throw InvalidArgument("f(empty) is not finite; regularize the base Gramian");
    }
    std::vector<int> all(static_cast<std::size_t>(m_));
    std::iota(all.begin(), all.end(), 0);
    tol_ = 1e-12 * (1.0 + std::abs(operator()(ActuatorSet(all))));
  }

  double operator()(const ActuatorSet& s) const {
    if (s.empty()) return 0.0;
    return evaluate(kind_, bundle_, s) - f_empty_;
  }
  int m() const { return m_; }
  double tol() const { return tol_; }

 private:
  const GramianBundle& bundle_;
  MetricKind kind_;
  int m_;
  double f_empty_ = 0.0;
  double tol_ = 0.0;
};

// Gains that agree to within the tolerance are equal: modular metrics then
// give exactly gamma = 1 and alpha = 0 instead of rounding noise.
double snap_ratio(double num, double den, double tol) {
  return std::abs(num - den) <= tol ? 1.0 : num / den;
}

struct GammaSample {
  bool admissible = false;
  double ratio = 0.0;
  ActuatorSet s, omega;
};

struct AlphaSample {
  bool admissible = false;
  double alpha = 0.0;
  ActuatorSet s, omega;
  int j = -1;
};

GammaSample gamma_constraint(const NormalizedMetric& f, const ActuatorSet& s,
                             const ActuatorSet& omega) {
  GammaSample out{false, 0.0, s, omega};
  const double fs = f(s);
  const double den = f(s.united(omega)) - fs;
  if (!(den > f.tol())) return out;
  double num = 0.0;
  const ActuatorSet fresh = omega.minus(s);
  for (int w : fresh.indices()) num += f(s.with(w)) - fs;
  out.admissible = true;
  out.ratio = snap_ratio(num, den, f.tol());
  return out;
}

AlphaSample alpha_constraint(const NormalizedMetric& f, const ActuatorSet& s,
                             const ActuatorSet& omega, int j) {
  AlphaSample out{false, 0.0, s, omega, j};
  const ActuatorSet rest = s.without(j);
  const double den = f(s) - f(rest);
  if (!(den > f.tol())) return out;
  const ActuatorSet context = rest.united(omega);
  const double num = f(context.with(j)) - f(context);
  out.admissible = true;
  out.alpha = 1.0 - snap_ratio(num, den, f.tol());
  return out;
}

ActuatorSet random_subset(Rng& rng, int m, int size) {
  std::vector<int> pool(static_cast<std::size_t>(m));
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < size; ++i) {
    std::uniform_int_distribution<int> pick(i, m - 1);
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(pick(rng))]);
  }
  pool.resize(static_cast<std::size_t>(size));
  return ActuatorSet(std::move(pool));
}

std::pair<ActuatorSet, ActuatorSet> draw_pair(Rng& rng, int m) {
  std::uniform_int_distribution<int> s_size(0, m - 1);
  std::uniform_int_distribution<int> o_size(1, m);
  ActuatorSet s = random_subset(rng, m, s_size(rng));
  ActuatorSet omega = random_subset(rng, m, o_size(rng));
  return {std::move(s), std::move(omega)};
}

void require_all_pairs_size(int m) {
  if (static_cast<std::size_t>(m) > kExhaustiveMaxCandidates) {
    throw CapExceeded("all-pairs enumeration supports at most " +
                          std::to_string(kExhaustiveMaxCandidates) +
                          " candidates; constraint count would be 4^M",
                      std::uint64_t{1} << std::min(2 * m, 63));
  }
}

GammaEstimate reduce_gamma(const std::vector<GammaSample>& samples) {
  GammaEstimate est;
  double worst = std::numeric_limits<double>::infinity();
  for (const GammaSample& g : samples) {
    if (!g.admissible) {
      ++est.skipped;
      continue;
    }
    ++est.samples;
    if (g.ratio < 1.0) ++est.violations;
    if (g.ratio < worst) {
      worst = g.ratio;
      est.witness = GammaWitness{g.s, g.omega, g.ratio};
    }
  }
  if (est.samples == 0) {
    throw Error("no admissible submodularity-ratio constraint among " +
                std::to_string(samples.size()) + " drawn (all marginal gains vacuous)");
  }
  est.gamma = std::clamp(worst, 0.0, 1.0);
  return est;
}

AlphaEstimate reduce_alpha(const std::vector<AlphaSample>& samples) {
  AlphaEstimate est;
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (const AlphaSample& a : samples) {
    if (!a.admissible) {
      ++est.skipped;
      continue;
    }
    ++est.samples;
    const double clamped = std::clamp(a.alpha, 0.0, 1.0);
    sum += clamped;
    lo = std::min(lo, clamped);
    if (a.alpha > hi) {
      hi = a.alpha;
      est.witness = AlphaWitness{a.s, a.omega, a.j, a.alpha};
    }
  }
  if (est.samples == 0) {
    throw Error("no admissible curvature constraint among " + std::to_string(samples.size()) +
                " drawn (all marginal gains vacuous)");
  }
  est.max = std::clamp(hi, 0.0, 1.0);
  est.min = lo;
  est.average = sum / static_cast<double>(est.samples);
  return est;
}

}  // namespace

GammaEstimate estimate_gamma(const GramianBundle& bundle, MetricKind kind,
                             const SamplePlan& plan) {
  const NormalizedMetric f(bundle, kind);
  const int m = f.m();
  std::vector<GammaSample> samples;
  if (plan.all_pairs) {
    require_all_pairs_size(m);
    const std::uint64_t full = std::uint64_t{1} << m;
    samples.resize(full * full);
    parallel_for(samples.size(), plan.jobs, [&](std::size_t idx) {
      const std::uint64_t s = idx / full, o = idx % full;
      samples[idx] = gamma_constraint(f, ActuatorSet::from_mask(s), ActuatorSet::from_mask(o));
    });
  } else {
    if (plan.pairs == 0) throw InvalidArgument("sample plan needs at least one pair");
    const std::uint64_t stream = derive_seed(plan.seed, kGammaStream);
    samples.resize(plan.pairs);
    parallel_for(samples.size(), plan.jobs, [&](std::size_t i) {
      Rng rng(derive_seed(stream, i));
      auto [s, omega] = draw_pair(rng, m);
      samples[i] = gamma_constraint(f, s, omega);
    });
  }
  return reduce_gamma(samples);
}

AlphaEstimate estimate_alpha(const GramianBundle& bundle, MetricKind kind,
                             const SamplePlan& plan) {
  const NormalizedMetric f(bundle, kind);
  const int m = f.m();
  std::vector<AlphaSample> samples;
  if (plan.all_pairs) {
    require_all_pairs_size(m);
    const std::uint64_t full = std::uint64_t{1} << m;
    for (std::uint64_t s = 0; s < full; ++s) {
      for (std::uint64_t o = 0; o < full; ++o) {
        for (int j = 0; j < m; ++j) {
          if ((s >> j & 1u) && !(o >> j & 1u)) {
            samples.push_back({false, 0.0, ActuatorSet::from_mask(s), ActuatorSet::from_mask(o), j});
          }
        }
      }
    }
    parallel_for(samples.size(), plan.jobs, [&](std::size_t i) {
      samples[i] = alpha_constraint(f, samples[i].s, samples[i].omega, samples[i].j);
    });
  } else {
    if (plan.pairs == 0) throw InvalidArgument("sample plan needs at least one pair");
    if (m < 2) throw InvalidArgument("curvature sampling needs at least two candidates");
    const std::uint64_t stream = derive_seed(plan.seed, kAlphaStream);
    samples.resize(plan.pairs);
    parallel_for(samples.size(), plan.jobs, [&](std::size_t i) {
      Rng rng(derive_seed(stream, i));
      for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
        auto [s, omega] = draw_pair(rng, m);
        const ActuatorSet eligible = s.minus(omega);
        if (eligible.empty()) continue;
        std::uniform_int_distribution<std::size_t> pick(0, eligible.size() - 1);
        const int j = eligible.indices()[pick(rng)];
        samples[i] = alpha_constraint(f, s, omega, j);
        return;
      }
      throw Error("could not draw a curvature sample with S \\ O non-empty");
    });
  }
  return reduce_alpha(samples);
}

RatioEstimate estimate_ratios(const GramianBundle& bundle, MetricKind kind,
                              const SamplePlan& plan) {
  RatioEstimate out;
  out.mode = plan.all_pairs ? EstimateMode::kAllPairs : EstimateMode::kSampled;
  out.gamma = estimate_gamma(bundle, kind, plan);
  out.alpha = estimate_alpha(bundle, kind, plan);
  return out;
}

RatioEstimate exhaustive_gamma_alpha(const GramianBundle& bundle, MetricKind kind) {
  const NormalizedMetric f(bundle, kind);
  const int m = f.m();
  if (static_cast<std::size_t>(m) > kExhaustiveMaxCandidates) {
    throw CapExceeded("exhaustive estimation supports at most " +
                          std::to_string(kExhaustiveMaxCandidates) +
                          " candidates; constraint count would be 4^M",
                      std::uint64_t{1} << std::min(2 * m, 63));
  }
  const std::uint64_t full = std::uint64_t{1} << m;
  std::vector<double> table(full);
  for (std::uint64_t mask = 0; mask < full; ++mask) table[mask] = f(ActuatorSet::from_mask(mask));
  const double tol = f.tol();

  auto gamma_at = [&](std::uint64_t s, std::uint64_t o, GammaSample& out) {
    out.admissible = false;
    const double den = table[s | o] - table[s];
    if (!(den > tol)) return;
    double num = 0.0;
    for (int w = 0; w < m; ++w) {
      const std::uint64_t bit = std::uint64_t{1} << w;
      if ((o & bit) && !(s & bit)) num += table[s | bit] - table[s];
    }
    out.admissible = true;
    out.ratio = snap_ratio(num, den, tol);
  };
  auto alpha_at = [&](std::uint64_t s, std::uint64_t o, int j, AlphaSample& out) {
    out.admissible = false;
    const std::uint64_t bit = std::uint64_t{1} << j;
    const std::uint64_t rest = s & ~bit;
    const double den = table[s] - table[rest];
    if (!(den > tol)) return;
    const std::uint64_t context = rest | o;
    out.admissible = true;
    out.alpha = 1.0 - snap_ratio(table[context | bit] - table[context], den, tol);
  };

  // Forward scan: S outer, O inner, j ascending; this order matches the
  // all-pairs walk so witnesses and averages coincide with it.
  std::vector<GammaSample> gammas;
  std::vector<AlphaSample> alphas;
  for (std::uint64_t s = 0; s < full; ++s) {
    for (std::uint64_t o = 0; o < full; ++o) {
      GammaSample g{false, 0.0, {}, {}};
      gamma_at(s, o, g);
      if (g.admissible) {
        g.s = ActuatorSet::from_mask(s);
        g.omega = ActuatorSet::from_mask(o);
      }
      gammas.push_back(std::move(g));
      for (int j = 0; j < m; ++j) {
        if (!((s >> j) & 1u) || ((o >> j) & 1u)) continue;
        AlphaSample a{false, 0.0, {}, {}, j};
        alpha_at(s, o, j, a);
        if (a.admissible) {
          a.s = ActuatorSet::from_mask(s);
          a.omega = ActuatorSet::from_mask(o);
        }
        alphas.push_back(std::move(a));
      }
    }
  }
  RatioEstimate out;
  out.mode = EstimateMode::kExhaustive;
  out.gamma = reduce_gamma(gammas);
  out.alpha = reduce_alpha(alphas);

  // Reverse scan: O outer descending, S inner descending, j descending.
  double gamma_check = std::numeric_limits<double>::infinity();
  double alpha_hi = -std::numeric_limits<double>::infinity();
  double alpha_lo = std::numeric_limits<double>::infinity();
  std::uint64_t gamma_count = 0, alpha_count = 0;
  for (std::uint64_t o = full; o-- > 0;) {
    for (std::uint64_t s = full; s-- > 0;) {
      GammaSample g;
      gamma_at(s, o, g);
      if (g.admissible) {
        ++gamma_count;
        gamma_check = std::min(gamma_check, g.ratio);
      }
      for (int j = m; j-- > 0;) {
        if (!((s >> j) & 1u) || ((o >> j) & 1u)) continue;
        AlphaSample a;
        alpha_at(s, o, j, a);
        if (!a.admissible) continue;
        ++alpha_count;
        alpha_hi = std::max(alpha_hi, a.alpha);
        alpha_lo = std::min(alpha_lo, std::clamp(a.alpha, 0.0, 1.0));
      }
    }
  }
  if (gamma_count != out.gamma.samples || std::clamp(gamma_check, 0.0, 1.0) != out.gamma.gamma ||
      alpha_count != out.alpha.samples || std::clamp(alpha_hi, 0.0, 1.0) != out.alpha.max ||
      alpha_lo != out.alpha.min) {
    throw Error("exhaustive enumeration orders disagree");
  }
  return out;
}

std::string_view estimate_mode_name(EstimateMode mode) {
  switch (mode) {
    case EstimateMode::kSampled: return "sampled";
    case EstimateMode::kAllPairs: return "all_pairs";
    case EstimateMode::kExhaustive: return "exhaustive";
  }
  return "unknown";
}

}  // namespace gramsel
