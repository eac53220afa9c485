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

#include "steercert/lhs.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>

namespace steercert::lhs {

namespace {

double outcome_sign(Outcome o) { return o == 0 ? 1.0 : -1.0; }

void check_response(const Response& r) {
  detail::check_outcome(r[0]);
  detail::check_outcome(r[1]);
}

}  // namespace

HybridLhsModel::HybridLhsModel(std::vector<double> weights, std::vector<Response> alice,
                               std::vector<Response> bob, std::vector<Matrix2> charlie)
    : weights_(std::move(weights)),
      alice_(std::move(alice)),
      bob_(std::move(bob)),
      charlie_(std::move(charlie)) {
  const std::size_t n = weights_.size();
  if (n == 0) throw InvalidArgument("hybrid model needs at least one hidden state");
  if (alice_.size() != n || bob_.size() != n || charlie_.size() != n)
    throw InvalidArgument("hybrid model component sizes disagree");
  double total = 0.0;
  for (double w : weights_) {
    if (w < 0.0) throw InvalidArgument("hidden-state weight is negative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw InvalidArgument("hidden-state weights do not sum to 1");
  for (std::size_t l = 0; l < n; ++l) {
    check_response(alice_[l]);
    check_response(bob_[l]);
    const Matrix2& rho = charlie_[l];
    if (detail::hermitian_defect(rho) > kNumerics.hermitian)
      throw InvalidArgument("Charlie state is not Hermitian");
    if (std::abs(rho.trace() - 1.0) > kNumerics.trace)
      throw InvalidArgument("Charlie state does not have unit trace");
    Eigen::SelfAdjointEigenSolver<Matrix2> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kNumerics.psd)
      throw InvalidArgument("Charlie state is not positive semidefinite");
  }
}

Matrix2 qubit_state(const Vector3& r) {
  if (r.norm() > 1.0 + 1e-12) throw InvalidArgument("Bloch vector outside the unit ball");
  return (Matrix2::Identity() + bloch_to_matrix(r)) / 2.0;
}

GameOptimum fine_grained_game_max(const Observable& m0, const Observable& m1,
                                  std::pair<Outcome, Outcome> win_outcomes) {
  detail::check_outcome(win_outcomes.first);
  detail::check_outcome(win_outcomes.second);
  const Vector3 v = outcome_sign(win_outcomes.first) * m0.bloch() +
                    outcome_sign(win_outcomes.second) * m1.bloch();
  const double len = v.norm();
  // Contradictory wins leave the objective flat; any pure state is optimal.
  const Vector3 dir = len > 1e-15 ? Vector3(v / len) : m0.bloch();
  return {0.5 + len / 4.0, dir};
}

double steering_bound_known(const Observable& c0, const Observable& c1) {
  double best = 0.0;
  for (Outcome w0 : {0, 1})
    for (Outcome w1 : {0, 1})
      best = std::max(best, fine_grained_game_max(c0, c1, {w0, w1}).probability);
  return 2.0 * (2.0 * best);
}

double steering_bound_unknown() { return 2.0 * (0.75 + 0.75); }

double model_joint_probability(const HybridLhsModel& model, int i, int j, int k,
                               Outcome a, Outcome b, Outcome c,
                               const CharlieMeasurements& charlie) {
  if (i < 0 || i > 1 || j < 0 || j > 1 || k < 0 || k > 1)
    throw InvalidArgument("setting index must be 0 or 1");
  const Observable& mc = k == 0 ? charlie.first : charlie.second;
  const Matrix2 pc = projector(mc, c).matrix;
  double p = 0.0;
  for (std::size_t l = 0; l < model.size(); ++l) {
    if (model.alice()[l][i] != a || model.bob()[l][j] != b) continue;
    p += model.weights()[l] * std::real((pc * model.charlie()[l]).trace());
  }
  return std::clamp(p, 0.0, 1.0);
}

std::optional<FgsiValue> model_fgsi_value(const HybridLhsModel& model,
                                          const CharlieMeasurements& charlie,
                                          const OutcomePattern& pattern) {
  FgsiValue v;
  for (std::size_t t = 0; t < 4; ++t) {
    const Term& term = pattern[t];
    const double num =
        model_joint_probability(model, term.i, term.j, term.k, term.a, term.b, term.c, charlie);
    const double den =
        num + model_joint_probability(model, term.i, term.j, term.k, term.a, term.b,
                                      1 - term.c, charlie);
    if (den < kNumerics.denominator) return std::nullopt;
    v.terms[t] = num / den;
    v.total += v.terms[t];
  }
  return v;
}

ModelSampler::ModelSampler(int lambda_count, std::uint64_t seed)
    : lambda_count_(lambda_count), rng_(seed) {
  if (lambda_count < 1 || lambda_count > 16)
    throw InvalidArgument("lambda_count must lie in [1, 16]");
}

HybridLhsModel ModelSampler::next() {
  const auto n = static_cast<std::size_t>(lambda_count_);
  // Normalized exponentials are uniform on the simplex.
  std::vector<double> w(n);
  for (double& x : w) x = -std::log1p(-uniform01(rng_));
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  if (total > 0.0) {
    for (double& x : w) x /= total;
  } else {
    std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(n));
  }

  std::vector<Response> alice(n), bob(n);
  std::vector<Matrix2> charlie(n);
  for (std::size_t l = 0; l < n; ++l) {
    const auto bits = rng_();
    alice[l] = {static_cast<Outcome>(bits & 1), static_cast<Outcome>((bits >> 1) & 1)};
    bob[l] = {static_cast<Outcome>((bits >> 2) & 1), static_cast<Outcome>((bits >> 3) & 1)};
    const double cos_t = 2.0 * uniform01(rng_) - 1.0;
    const double phi = 2.0 * std::numbers::pi * uniform01(rng_);
    const double radius = std::cbrt(uniform01(rng_));
    const double sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));
    charlie[l] = qubit_state(radius * Vector3(sin_t * std::cos(phi), sin_t * std::sin(phi), cos_t));
  }
  return HybridLhsModel(std::move(w), std::move(alice), std::move(bob), std::move(charlie));
}

std::vector<HybridLhsModel> sample_models(int count, int lambda_count, std::uint64_t seed) {
  if (count < 1) throw InvalidArgument("count must be at least 1");
  ModelSampler sampler(lambda_count, seed);
  std::vector<HybridLhsModel> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int n = 0; n < count; ++n) out.push_back(sampler.next());
  return out;
}

HybridLhsModel saturating_model() {
  const Matrix2 rho = qubit_state(Vector3(1.0, 1.0, 0.0) / std::numbers::sqrt2);
  // lambda_0 answers terms 0, 2, 3 (A = (1, 0), B = (1, 1)); lambda_1 answers
  // term 1 (A0 = 0, B1 = 1).
  return HybridLhsModel({0.5, 0.5}, {{1, 0}, {0, 0}}, {{1, 1}, {1, 1}}, {rho, rho});
}

HybridLhsModel conditioning_split_model() {
  const Matrix2 plus_x = qubit_state(Vector3(1.0, 0.0, 0.0));
  const Matrix2 plus_y = qubit_state(Vector3(0.0, 1.0, 0.0));
  // Each hidden state satisfies the conditioning event of exactly one term.
  return HybridLhsModel({0.25, 0.25, 0.25, 0.25},
                        {{1, 1}, {0, 1}, {1, 0}, {0, 0}},
                        {{1, 0}, {0, 1}, {0, 1}, {1, 0}},
                        {plus_x, plus_y, plus_x, plus_y});
}

FalsificationSummary falsify(int count, int lambda_count, std::uint64_t seed,
                             const CharlieMeasurements& charlie, double bound,
                             const OutcomePattern& pattern, int workers) {
  if (count < 0) throw InvalidArgument("count must be nonnegative");
  workers = std::max(1, workers);
  std::vector<std::future<FalsificationSummary>> jobs;
  for (int w = 0; w < workers; ++w) {
    const int share = count / workers + (w < count % workers ? 1 : 0);
    jobs.push_back(std::async(std::launch::async, [=, &charlie, &pattern] {
      FalsificationSummary s;
      ModelSampler sampler(lambda_count, seed + static_cast<std::uint64_t>(w));
      for (int n = 0; n < share; ++n) {
        const auto v = model_fgsi_value(sampler.next(), charlie, pattern);
        if (!v) {
          ++s.undefined;
          continue;
        }
        ++s.evaluated;
        s.max_s = std::max(s.max_s, v->total);
        if (v->total > bound + 1e-9) ++s.exceeding;
      }
      return s;
    }));
  }
  FalsificationSummary total;
  for (auto& job : jobs) {
    const FalsificationSummary s = job.get();
    total.evaluated += s.evaluated;
    total.undefined += s.undefined;
    total.exceeding += s.exceeding;
    total.max_s = std::max(total.max_s, s.max_s);
  }
  return total;
}

}  // namespace steercert::lhs
