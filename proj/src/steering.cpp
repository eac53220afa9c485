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

#include "steercert/steering.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace steercert {

namespace {

void check_setting(int s, const char* who) {
  if (s != 0 && s != 1)
    throw InvalidArgument(std::string(who) + " setting index must be 0 or 1");
}

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

}  // namespace

const Observable& MeasurementScenario::alice(int i) const {
  check_setting(i, "Alice");
  return i == 0 ? a0 : a1;
}

const Observable& MeasurementScenario::bob(int j) const {
  check_setting(j, "Bob");
  return j == 0 ? b0 : b1;
}

const Observable& MeasurementScenario::charlie(int k) const {
  check_setting(k, "Charlie");
  return k == 0 ? c0 : c1;
}

std::string to_string(const Term& t) {
  std::ostringstream os;
  os << "P(" << t.c << "_C" << t.k << "|" << t.a << "_A" << t.i << " " << t.b << "_B"
     << t.j << ")";
  return os.str();
}

OutcomePattern::OutcomePattern(const std::array<std::array<Outcome, 3>, 4>& labels) {
  for (std::size_t t = 0; t < 4; ++t) {
    for (Outcome o : labels[t]) detail::check_outcome(o);
    terms_[t] = Term{kSettings[t][0], kSettings[t][1], kSettings[t][2],
                     labels[t][0],    labels[t][1],    labels[t][2]};
  }
}

OutcomePattern OutcomePattern::from_terms(const std::array<Term, 4>& terms) {
  std::array<std::array<Outcome, 3>, 4> labels{};
  for (std::size_t t = 0; t < 4; ++t) {
    const Term& x = terms[t];
    if (x.i != kSettings[t][0] || x.j != kSettings[t][1] || x.k != kSettings[t][2])
      throw InvalidArgument("term " + std::to_string(t) +
                            " does not follow the fixed (i, j, k) setting structure");
    labels[t] = {x.a, x.b, x.c};
  }
  return OutcomePattern(labels);
}

OutcomePattern OutcomePattern::canonical() {
  return OutcomePattern({{{1, 1, 0}, {0, 1, 0}, {0, 1, 0}, {0, 1, 0}}});
}

OutcomePattern OutcomePattern::from_index(unsigned index) {
  if (index >= 4096) throw InvalidArgument("pattern index must be below 4096");
  std::array<std::array<Outcome, 3>, 4> labels{};
  for (int t = 0; t < 4; ++t) {
    const unsigned bits = (index >> (3 * (3 - t))) & 7U;
    labels[t] = {static_cast<Outcome>((bits >> 2) & 1), static_cast<Outcome>((bits >> 1) & 1),
                 static_cast<Outcome>(bits & 1)};
  }
  return OutcomePattern(labels);
}

unsigned OutcomePattern::index() const {
  unsigned idx = 0;
  for (const Term& t : terms_)
    idx = (idx << 3) | static_cast<unsigned>(4 * t.a + 2 * t.b + t.c);
  return idx;
}

bool OutcomePattern::labels_per_setting() const {
  std::array<int, 2> a{-1, -1}, b{-1, -1}, c{-1, -1};
  auto assign = [](std::array<int, 2>& slot, int s, Outcome o) {
    if (slot[s] == -1) slot[s] = o;
    return slot[s] == o;
  };
  for (const Term& t : terms_)
    if (!assign(a, t.i, t.a) || !assign(b, t.j, t.b) || !assign(c, t.k, t.c)) return false;
  return true;
}

std::string to_string(const OutcomePattern& p) {
  std::string s;
  for (std::size_t t = 0; t < 4; ++t) {
    if (t) s += " + ";
    s += to_string(p[t]);
  }
  return s;
}

Matrix4 conditional_state_bc(const TripartiteState& state, int i, Outcome a,
                             const MeasurementScenario& scenario) {
  const Matrix2 id = Matrix2::Identity();
  const Matrix8 op = tensor3(projector(scenario.alice(i), a).matrix, id, id);
  return partial_trace_a<double>(op * state.density());
}

Matrix2 conditional_state_c(const TripartiteState& state, int i, Outcome a, int j,
                            Outcome b, const MeasurementScenario& scenario) {
  const Matrix8 op = tensor3(projector(scenario.alice(i), a).matrix,
                             projector(scenario.bob(j), b).matrix, Matrix2(Matrix2::Identity()));
  return partial_trace_ab<double>(op * state.density());
}

double joint_probability(const TripartiteState& state, int i, int j, int k, Outcome a,
                         Outcome b, Outcome c, const MeasurementScenario& scenario) {
  const Matrix8 op = tensor3(projector(scenario.alice(i), a).matrix,
                             projector(scenario.bob(j), b).matrix,
                             projector(scenario.charlie(k), c).matrix);
  return clamp_probability(std::real((op * state.density()).trace()));
}

std::array<double, 8> outcome_distribution(const TripartiteState& state, int i, int j,
                                           int k, const MeasurementScenario& scenario) {
  std::array<double, 8> p =
      born_distribution(state, scenario.alice(i), scenario.bob(j), scenario.charlie(k));
  for (double& x : p) x = clamp_probability(x);
  return p;
}

double conditional_probability(const TripartiteState& state, const Term& term,
                               const MeasurementScenario& scenario) {
  // Assemblage route: P(c|ab) = Tr[Pi_c sigma_ab] / Tr[sigma_ab].
  const Matrix2 sigma = conditional_state_c(state, term.i, term.a, term.j, term.b, scenario);
  const double den = std::real(sigma.trace());
  if (den < kNumerics.denominator)
    throw UndefinedConditional("conditioning event of " + to_string(term) +
                               " has zero probability");
  const double num =
      std::real((projector(scenario.charlie(term.k), term.c).matrix * sigma).trace());
  return clamp_probability(num / den);
}

FgsiValue fgsi_value(const TripartiteState& state, const MeasurementScenario& scenario,
                     const OutcomePattern& pattern) {
  FgsiValue v;
  for (std::size_t t = 0; t < 4; ++t) {
    try {
      v.terms[t] = conditional_probability(state, pattern[t], scenario);
    } catch (const UndefinedConditional& e) {
      throw UndefinedConditional("term " + std::to_string(t) + ": " + e.what(),
                                 static_cast<int>(t));
    }
    v.total += v.terms[t];
  }
  return v;
}

MeasurementScenario optimal_scenario(double theta) {
  if (!(theta > 0.0 && theta < std::numbers::pi / 2))
    throw OutOfRange("theta must lie in the open interval (0, pi/2)");
  const double s = std::sin(2 * theta);
  const double c = std::cos(2 * theta);
  return MeasurementScenario{
      pauli(Axis::X),
      pauli(Axis::Y),
      bloch_observable(Vector3(s, 0.0, c)),
      bloch_observable(Vector3(0.0, s, c)),
      pauli(Axis::X),
      pauli(Axis::Y),
  };
}

PatternScan enumerate_max_patterns(const TripartiteState& state,
                                   const MeasurementScenario& scenario) {
  // The four setting triples are fixed, so every pattern is a lookup into
  // four precomputed distributions.
  std::array<std::array<double, 8>, 4> dist;
  for (std::size_t t = 0; t < 4; ++t) {
    const auto& s = OutcomePattern::kSettings[t];
    dist[t] = outcome_distribution(state, s[0], s[1], s[2], scenario);
  }

  PatternScan scan;
  scan.max_s = -1.0;
  for (unsigned idx = 0; idx < 4096; ++idx) {
    const OutcomePattern pattern = OutcomePattern::from_index(idx);
    FgsiValue v;
    std::string reason;
    for (std::size_t t = 0; t < 4 && reason.empty(); ++t) {
      const Term& term = pattern[t];
      const int ab = 4 * term.a + 2 * term.b;
      const double den = dist[t][ab] + dist[t][ab + 1];
      if (den < kNumerics.denominator) {
        reason = "term " + std::to_string(t) + " " + to_string(term) +
                 ": conditioning event has zero probability";
        break;
      }
      v.terms[t] = dist[t][ab + term.c] / den;
      v.total += v.terms[t];
    }
    if (!reason.empty()) {
      scan.skipped.push_back({pattern, std::move(reason)});
      continue;
    }
    scan.evaluated.push_back({pattern, v});
    scan.max_s = std::max(scan.max_s, v.total);
  }
  for (const PatternValue& pv : scan.evaluated)
    if (pv.value.total >= scan.max_s - 1e-9) scan.maximizers.push_back(pv);
  return scan;
}

Assemblage::Assemblage(const TripartiteState& state, const MeasurementScenario& scenario) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          ops_[8 * i + 4 * j + 2 * a + b] = conditional_state_c(state, i, a, j, b, scenario);
}

const Matrix2& Assemblage::operator()(int i, int j, Outcome a, Outcome b) const {
  check_setting(i, "Alice");
  check_setting(j, "Bob");
  detail::check_outcome(a);
  detail::check_outcome(b);
  return ops_[8 * i + 4 * j + 2 * a + b];
}

double Assemblage::no_signaling_defect() const {
  double worst = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int a = 0; a < 2; ++a) {
      const Matrix2 m0 = (*this)(i, 0, a, 0) + (*this)(i, 0, a, 1);
      const Matrix2 m1 = (*this)(i, 1, a, 0) + (*this)(i, 1, a, 1);
      worst = std::max(worst, (m0 - m1).cwiseAbs().maxCoeff());
    }
  for (int j = 0; j < 2; ++j)
    for (int b = 0; b < 2; ++b) {
      const Matrix2 m0 = (*this)(0, j, 0, b) + (*this)(0, j, 1, b);
      const Matrix2 m1 = (*this)(1, j, 0, b) + (*this)(1, j, 1, b);
      worst = std::max(worst, (m0 - m1).cwiseAbs().maxCoeff());
    }
  return worst;
}

double Assemblage::normalization_defect() const {
  double worst = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      std::complex<double> tr = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) tr += (*this)(i, j, a, b).trace();
      worst = std::max(worst, std::abs(tr - 1.0));
    }
  return worst;
}

}  // namespace steercert
