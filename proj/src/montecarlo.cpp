// Copyright 2026 The steercert Authors
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

#include "steercert/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "steercert/lhs.hpp"
#include "steercert/rng.hpp"

namespace steercert::mc {

void ExperimentConfig::validate() const {
  if (events_per_setting < 1) throw InvalidArgument("events_per_setting must be at least 1");
  if (!(detection_efficiency > 0.0 && detection_efficiency <= 1.0))
    throw InvalidArgument("detection_efficiency must lie in (0, 1]");
  if (!(dark_count_rate >= 0.0 && dark_count_rate < 1.0))
    throw InvalidArgument("dark_count_rate must lie in [0, 1)");
}

std::uint64_t SettingCounts::recorded() const {
  std::uint64_t n = 0;
  for (auto c : cells) n += c;
  return n;
}

const SettingCounts& CoincidenceCounts::at(int i, int j, int k) const {
  for (const SettingCounts& s : settings)
    if (s.i == i && s.j == j && s.k == k) return s;
  throw InvalidArgument("setting combination is not part of the FGSI");
}

namespace {

using Cells = std::array<std::uint64_t, 8>;

/// Every event consumes the same six draws whatever the noise settings, so
/// runs differing only in efficiency or dark rate see identical randomness.
Cells sample_chunk(const std::array<double, 8>& cdf, const ExperimentConfig& cfg,
                   std::uint64_t seed, std::uint64_t events) {
  Rng rng(seed);
  Cells cells{};
  for (std::uint64_t e = 0; e < events; ++e) {
    const double u_outcome = uniform01(rng);
    const double u_dark = uniform01(rng);
    const auto dark_triple = static_cast<std::size_t>(rng() >> 61);
    const double ua = uniform01(rng), ub = uniform01(rng), uc = uniform01(rng);

    std::size_t cell = static_cast<std::size_t>(
        std::upper_bound(cdf.begin(), cdf.end(), u_outcome) - cdf.begin());
    if (u_dark < cfg.dark_count_rate) cell = dark_triple;
    const double eta = cfg.detection_efficiency;
    if (ua < eta && ub < eta && uc < eta) ++cells[cell];
  }
  return cells;
}

}  // namespace

CoincidenceCounts simulate_counts(const TripartiteState& state,
                                  const MeasurementScenario& scenario,
                                  const ExperimentConfig& config) {
  config.validate();

  std::array<std::array<double, 8>, 4> cdfs{};
  CoincidenceCounts counts;
  for (std::size_t s = 0; s < 4; ++s) {
    const auto& set = OutcomePattern::kSettings[s];
    counts.settings[s].i = set[0];
    counts.settings[s].j = set[1];
    counts.settings[s].k = set[2];
    counts.settings[s].total_events = config.events_per_setting;

    std::array<double, 8> p = outcome_distribution(state, set[0], set[1], set[2], scenario);
    for (double& x : p)
      if (x < kNumerics.probability_floor) x = 0.0;
    double total = 0.0;
    for (std::size_t n = 0; n < 8; ++n) cdfs[s][n] = (total += p[n]);
    for (double& x : cdfs[s]) x /= total;
    // Pin the CDF to 1 from the last populated cell on, so trailing
    // zero-probability cells are unreachable.
    std::size_t last = 7;
    while (last > 0 && p[last] == 0.0) --last;
    for (std::size_t n = last; n < 8; ++n) cdfs[s][n] = 1.0;
  }

  struct Job {
    std::size_t setting;
    std::uint64_t chunk, events;
  };
  std::vector<Job> jobs;
  for (std::size_t s = 0; s < 4; ++s)
    for (std::uint64_t c = 0, done = 0; done < config.events_per_setting; ++c) {
      const std::uint64_t n = std::min(kChunkEvents, config.events_per_setting - done);
      jobs.push_back({s, c, n});
      done += n;
    }

  std::vector<Cells> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t n; (n = next.fetch_add(1)) < jobs.size();) {
      const Job& job = jobs[n];
      results[n] = sample_chunk(cdfs[job.setting], config,
                                derive_seed(config.seed, job.setting, job.chunk), job.events);
    }
  };
  const std::size_t threads =
      std::min<std::size_t>(jobs.size(), std::max(1U, std::thread::hardware_concurrency()));
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  for (std::size_t n = 0; n < jobs.size(); ++n)
    for (std::size_t cell = 0; cell < 8; ++cell)
      counts.settings[jobs[n].setting].cells[cell] += results[n][cell];
  return counts;
}

std::optional<TermEstimate> estimate_term(const CoincidenceCounts& counts, const Term& term) {
  const SettingCounts& s = counts.at(term.i, term.j, term.k);
  const std::size_t ab = static_cast<std::size_t>(4 * term.a + 2 * term.b);
  const std::uint64_t num = s.cells[ab + static_cast<std::size_t>(term.c)];
  const std::uint64_t den = s.cells[ab] + s.cells[ab + 1];
  if (den == 0) return std::nullopt;
  const double n = static_cast<double>(den);
  const double p = static_cast<double>(num) / n;
  const double se = (num == 0 || num == den) ? 3.0 / n : std::sqrt(p * (1.0 - p) / n);
  return TermEstimate{p, se, num, den};
}

EstimationResult estimate_s(const CoincidenceCounts& counts, const OutcomePattern& pattern) {
  EstimationResult r;
  double var = 0.0;
  for (std::size_t t = 0; t < 4; ++t) {
    r.terms[t] = estimate_term(counts, pattern[t]);
    if (!r.terms[t]) {
      r.discarded_terms.push_back(t);
      continue;
    }
    r.s_hat += r.terms[t]->p_hat;
    var += r.terms[t]->std_error * r.terms[t]->std_error;
  }
  r.s_stderr = std::sqrt(var);
  return r;
}

std::vector<ScanRow> scan_theta(const std::vector<double>& grid,
                                const ExperimentConfig& config_template,
                                const OutcomePattern& pattern) {
  const MeasurementScenario xy = optimal_scenario(std::numbers::pi / 4);
  const double known = lhs::steering_bound_known(xy.c0, xy.c1);
  const double unknown = lhs::steering_bound_unknown();

  std::vector<ScanRow> rows;
  for (double theta : grid) {
    ScanRow row;
    row.theta = theta;
    row.bound_known = known;
    row.bound_unknown = unknown;
    try {
      const TripartiteState state = gghz_state(theta);
      const MeasurementScenario scenario = optimal_scenario(theta);
      try {
        row.exact_s = fgsi_value(state, scenario, pattern).total;
      } catch (const UndefinedConditional& e) {
        row.note = e.what();
      }
      ExperimentConfig cfg = config_template;
      cfg.theta = theta;
      row.estimate = estimate_s(simulate_counts(state, scenario, cfg), pattern);
      if (row.estimate->partial() && row.note.empty()) row.note = "partial estimate";
    } catch (const Error& e) {
      row.note = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace steercert::mc
