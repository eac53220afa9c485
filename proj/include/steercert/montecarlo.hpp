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

#pragma once

// Finite-statistics simulation of the coincidence-counting experiment and the
// count-ratio estimators of the FGSI terms.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "steercert/steering.hpp"

namespace steercert::mc {

struct ExperimentConfig {
  double theta = std::numbers::pi / 4;
  std::uint64_t events_per_setting = 100000;
  std::uint64_t seed = 1;
  double detection_efficiency = 1.0;  // per detector, in (0, 1]
  double dark_count_rate = 0.0;       // per event window, in [0, 1)

  /// Throws InvalidArgument on out-of-range fields.
  void validate() const;
};

/// Counts for one (i, j, k) setting combination. cells[4a + 2b + c] is the
/// number of coincidences on detectors (D_{1+a}, D_{3+b}, D_{5+c}); the trigger
/// D_7 always fires.
struct SettingCounts {
  int i = 0, j = 0, k = 0;
  std::array<std::uint64_t, 8> cells{};
  std::uint64_t total_events = 0;  // events attempted at this setting

  std::uint64_t recorded() const;
};

/// One SettingCounts per setting triple of the FGSI, in the fixed term order.
struct CoincidenceCounts {
  std::array<SettingCounts, 4> settings;

  const SettingCounts& at(int i, int j, int k) const;
};

/// Events are generated in chunks of this size, each with its own stream.
inline constexpr std::uint64_t kChunkEvents = 1 << 16;

CoincidenceCounts simulate_counts(const TripartiteState& state,
                                  const MeasurementScenario& scenario,
                                  const ExperimentConfig& config);

struct TermEstimate {
  double p_hat;
  double std_error;
  std::uint64_t numerator;
  std::uint64_t denominator;
};

/// N(a,b,c) / (N(a,b,c) + N(a,b,1-c)); stderr from the binomial normal
/// approximation, or the rule-of-three bound 3/n when p_hat is 0 or 1.
/// nullopt (discarded) when the denominator count is zero.
std::optional<TermEstimate> estimate_term(const CoincidenceCounts& counts, const Term& term);

struct EstimationResult {
  std::array<std::optional<TermEstimate>, 4> terms;
  double s_hat = 0.0;
  double s_stderr = 0.0;
  std::vector<std::size_t> discarded_terms;

  bool partial() const { return !discarded_terms.empty(); }
};

EstimationResult estimate_s(const CoincidenceCounts& counts,
                            const OutcomePattern& pattern = OutcomePattern::canonical());

struct ScanRow {
  double theta = 0.0;
  std::optional<double> exact_s;
  std::optional<EstimationResult> estimate;
  double bound_known = 0.0;
  double bound_unknown = 0.0;
  std::string note;
};

/// Exact and simulated S for each theta, next to the LHS bounds. The config's
/// theta is ignored; every row reuses its seed.
std::vector<ScanRow> scan_theta(const std::vector<double>& grid,
                                const ExperimentConfig& config_template,
                                const OutcomePattern& pattern = OutcomePattern::canonical());

}  // namespace steercert::mc
