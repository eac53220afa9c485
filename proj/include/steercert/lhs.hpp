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

// Classical side of the certification: the fine-grained uncertainty game,
// the analytic FGSI bounds, and hybrid LHV-LHV-LHS models
//
//   P(abc|A_i B_j C_k) = sum_l p(l) P(a|A_i,l) P(b|B_j,l) Tr[Pi_{c|C_k} rho_l].

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "steercert/rng.hpp"
#include "steercert/steering.hpp"

namespace steercert::lhs {

/// Deterministic response function: outcome for setting 0 and setting 1.
using Response = std::array<Outcome, 2>;

using CharlieMeasurements = std::pair<Observable, Observable>;

class HybridLhsModel {
 public:
  HybridLhsModel(std::vector<double> weights, std::vector<Response> alice,
                 std::vector<Response> bob, std::vector<Matrix2> charlie);

  std::size_t size() const noexcept { return weights_.size(); }
  const std::vector<double>& weights() const noexcept { return weights_; }
  const std::vector<Response>& alice() const noexcept { return alice_; }
  const std::vector<Response>& bob() const noexcept { return bob_; }
  const std::vector<Matrix2>& charlie() const noexcept { return charlie_; }

 private:
  std::vector<double> weights_;
  std::vector<Response> alice_;
  std::vector<Response> bob_;
  std::vector<Matrix2> charlie_;
};

/// Density matrix (I + r . sigma) / 2 for |r| <= 1.
Matrix2 qubit_state(const Vector3& r);

struct SteeringBounds {
  static constexpr double known_measurements = 2.0 + std::numbers::sqrt2;
  static constexpr double unknown_measurements = 3.0;
  static constexpr double algebraic_max = 4.0;
};

struct GameOptimum {
  double probability;
  Vector3 state_bloch;  // a pure state attaining the optimum
};

/// max over qubit states of (1/2)[P(win_0 | m0) + P(win_1 | m1)]
///   = 1/2 + |s0 n0 + s1 n1| / 4,  s = +1 for outcome 0, -1 for outcome 1.
GameOptimum fine_grained_game_max(const Observable& m0, const Observable& m1,
                                  std::pair<Outcome, Outcome> win_outcomes);

/// 2 * max over win outcomes of 2 * fine_grained_game_max(c0, c1, .).
double steering_bound_known(const Observable& c0, const Observable& c1);

/// Bound when Alice and Bob do not know Charlie's measurements: 2 (3/4 + 3/4).
double steering_bound_unknown();

double model_joint_probability(const HybridLhsModel& model, int i, int j, int k,
                               Outcome a, Outcome b, Outcome c,
                               const CharlieMeasurements& charlie);

/// nullopt when any conditioning event has probability below 1e-12.
std::optional<FgsiValue> model_fgsi_value(const HybridLhsModel& model,
                                          const CharlieMeasurements& charlie,
                                          const OutcomePattern& pattern =
                                              OutcomePattern::canonical());

/// Reproducible stream of random hybrid models. Weights are flat on the
/// simplex and responses are uniformly random; Charlie's states fill the
/// Bloch ball uniformly.
class ModelSampler {
 public:
  ModelSampler(int lambda_count, std::uint64_t seed);
  HybridLhsModel next();

 private:
  int lambda_count_;
  Rng rng_;
};

std::vector<HybridLhsModel> sample_models(int count, int lambda_count, std::uint64_t seed);

/// Two hidden states sharing Charlie's state, the +1 eigenstate of
/// (sx + sy)/sqrt2, with responses covering every conditioning event of the
/// canonical pattern. Attains 2 + sqrt2 with Charlie measuring (sx, sy).
HybridLhsModel saturating_model();

/// Four deterministic hidden states, each feeding exactly one term of the
/// canonical pattern with a Charlie state that answers that term with
/// certainty. Reaches S = 4 with Charlie measuring (sx, sy).
HybridLhsModel conditioning_split_model();

struct FalsificationSummary {
  std::size_t evaluated = 0;
  std::size_t undefined = 0;
  std::size_t exceeding = 0;  // defined S above bound + 1e-9
  double max_s = 0.0;
};

/// Samples `count` models split across `workers` streams seeded seed + w and
/// compares each defined S with `bound`.
FalsificationSummary falsify(int count, int lambda_count, std::uint64_t seed,
                             const CharlieMeasurements& charlie, double bound,
                             const OutcomePattern& pattern = OutcomePattern::canonical(),
                             int workers = 4);

}  // namespace steercert::lhs
