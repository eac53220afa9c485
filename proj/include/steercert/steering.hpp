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

// Conditional states and probabilities, plus the value of the
// fine-grained steering inequality (FGSI) for a three-qubit state.

#include <array>
#include <string>
#include <vector>

#include "steercert/quantum.hpp"

namespace steercert {

/// Two dichotomic settings per party: A_i, B_j, C_k.
struct MeasurementScenario {
  Observable a0, a1, b0, b1, c0, c1;

  const Observable& alice(int i) const;
  const Observable& bob(int j) const;
  const Observable& charlie(int k) const;
};

/// One conditional probability P(c_{C_k} | a_{A_i} b_{B_j}).
struct Term {
  int i, j, k;
  Outcome a, b, c;

  friend bool operator==(const Term&, const Term&) = default;
};

std::string to_string(const Term& t);

/// Outcome labels for the four terms of an FGSI form. The (i, j, k) settings
/// are fixed to (0,0,0), (0,1,1), (1,1,0), (1,0,1) in that order.
class OutcomePattern {
 public:
  static constexpr std::array<std::array<int, 3>, 4> kSettings{
      {{0, 0, 0}, {0, 1, 1}, {1, 1, 0}, {1, 0, 1}}};

  /// labels[t] = {a, b, c} for term t.
  explicit OutcomePattern(const std::array<std::array<Outcome, 3>, 4>& labels);

  /// Validates that the terms carry the fixed setting structure.
  static OutcomePattern from_terms(const std::array<Term, 4>& terms);

  /// P(0_C0|1_A0 1_B0) + P(0_C1|0_A0 1_B1) + P(0_C0|0_A1 1_B1)
  ///   + P(0_C1|0_A1 1_B0).
  static OutcomePattern canonical();

  /// Enumeration index in [0, 4096): three label bits per term, term 0 most
  /// significant.
  static OutcomePattern from_index(unsigned index);

  const std::array<Term, 4>& terms() const noexcept { return terms_; }
  const Term& operator[](std::size_t t) const { return terms_[t]; }
  unsigned index() const;

  /// True when every setting carries one outcome label across all terms
  /// (a_{A0}, a_{A1}, b_{B0}, ... each used consistently); 64 such patterns.
  bool labels_per_setting() const;

  friend bool operator==(const OutcomePattern&, const OutcomePattern&) = default;

 private:
  std::array<Term, 4> terms_;
};

std::string to_string(const OutcomePattern& p);

/// Per-term conditional probabilities and their sum S.
struct FgsiValue {
  std::array<double, 4> terms{};
  double total = 0.0;
};

/// Charlie's unnormalized conditional states sigma_{ab|A_i B_j}.
class Assemblage {
 public:
  Assemblage(const TripartiteState& state, const MeasurementScenario& scenario);

  const Matrix2& operator()(int i, int j, Outcome a, Outcome b) const;

  /// Largest elementwise deviation of sum_b sigma_{ab|ij} across j (and the
  /// symmetric statement for Alice).
  double no_signaling_defect() const;

  /// Largest deviation of sum_ab Tr sigma_{ab|ij} from 1.
  double normalization_defect() const;

 private:
  std::array<Matrix2, 16> ops_;
};

/// Tr_A[(Pi_{a|A_i} (x) I (x) I) rho].
Matrix4 conditional_state_bc(const TripartiteState& state, int i, Outcome a,
                             const MeasurementScenario& scenario);

/// Tr_AB[(Pi_{a|A_i} (x) Pi_{b|B_j} (x) I) rho].
Matrix2 conditional_state_c(const TripartiteState& state, int i, Outcome a, int j,
                            Outcome b, const MeasurementScenario& scenario);

double joint_probability(const TripartiteState& state, int i, int j, int k, Outcome a,
                         Outcome b, Outcome c, const MeasurementScenario& scenario);

/// Full 8-outcome distribution for settings (i, j, k), index 4a + 2b + c.
std::array<double, 8> outcome_distribution(const TripartiteState& state, int i, int j,
                                           int k, const MeasurementScenario& scenario);

/// P(c | a b) = P(abc | A_i B_j C_k) / P(ab | A_i B_j).
/// Throws UndefinedConditional when P(ab) < 1e-12.
double conditional_probability(const TripartiteState& state, const Term& term,
                               const MeasurementScenario& scenario);

/// Sum of the four conditionals. UndefinedConditional carries the offending
/// term's index.
FgsiValue fgsi_value(const TripartiteState& state, const MeasurementScenario& scenario,
                     const OutcomePattern& pattern = OutcomePattern::canonical());

/// A_0 = sx, A_1 = sy, B_0 = sin2t sx + cos2t sz, B_1 = sin2t sy + cos2t sz,
/// C_0 = sx, C_1 = sy.
MeasurementScenario optimal_scenario(double theta);

struct PatternValue {
  OutcomePattern pattern;
  FgsiValue value;
};

struct SkippedPattern {
  OutcomePattern pattern;
  std::string reason;
};

struct PatternScan {
  double max_s = 0.0;
  std::vector<PatternValue> maximizers;  // within 1e-9 of max_s
  std::vector<PatternValue> evaluated;
  std::vector<SkippedPattern> skipped;
};

/// Evaluates every (a, b, c) labelling of the four terms and reports those
/// attaining the maximum. The label space is 2^12 assignments (three labels in
/// each of four terms).
PatternScan enumerate_max_patterns(const TripartiteState& state,
                                   const MeasurementScenario& scenario);

}  // namespace steercert
