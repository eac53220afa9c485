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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Criteria that are known to be unattainable are still
// evaluated as written and reported as failures.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "oracles.hpp"
#include "steercert/lhs.hpp"
#include "steercert/montecarlo.hpp"
#include "steercert/optics.hpp"
#include "steercert/steering.hpp"

using namespace steercert;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < budget_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("[%s] %d %s: %s (%.2f s%s)\n", pass ? "PASS" : "FAIL", id, name, o.detail.c_str(),
              secs, in_time ? "" : ", over budget");
  std::fflush(stdout);
}

Outcome maximal_violation() {
  std::vector<double> thetas;
  for (int n = 1; n <= 9; ++n) thetas.push_back(0.05 * n * kPi);
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.01 * kPi, 0.49 * kPi);
  for (int n = 0; n < 100; ++n) thetas.push_back(u(rng));
  double worst = 0.0;
  for (double t : thetas)
    worst = std::max(worst, std::abs(fgsi_value(gghz_state(t), optimal_scenario(t)).total - 4.0));
  return {worst <= 1e-9, fmt("%zu thetas, max |S - 4| = %.3g", thetas.size(), worst)};
}

Outcome bound_values() {
  const double known = lhs::steering_bound_known(pauli(Axis::X), pauli(Axis::Y));
  const double unknown = lhs::steering_bound_unknown();
  const double err = std::abs(known - (2 + std::sqrt(2.0)));
  return {err <= 1e-12 && unknown == 3.0,
          fmt("known = %.15f (err %.2g), unknown = %.17g", known, err, unknown)};
}

Outcome lhs_falsification() {
  const lhs::CharlieMeasurements xy{pauli(Axis::X), pauli(Axis::Y)};
  const double bound = lhs::SteeringBounds::known_measurements;
  std::size_t evaluated = 0, undefined = 0, exceeding = 0;
  double max_s = 0.0;
  int worst_lambda = 0;
  for (int lambda = 1; lambda <= 16; ++lambda) {
    const auto s = lhs::falsify(625, lambda, 1000 + lambda, xy, bound);
    evaluated += s.evaluated;
    undefined += s.undefined;
    exceeding += s.exceeding;
    if (s.max_s > max_s) {
      max_s = s.max_s;
      worst_lambda = lambda;
    }
  }
  const auto sat = lhs::model_fgsi_value(lhs::saturating_model(), xy);
  const double sat_err = sat ? std::abs(sat->total - bound) : 1.0;
  // Reported alongside, not part of the random-sample criterion: a hand-built
  // model whose hidden states each serve a single term.
  const auto split = lhs::model_fgsi_value(lhs::conditioning_split_model(), xy);
  const bool pass = exceeding == 0 && max_s <= bound + 1e-9 && sat_err <= 1e-9;
  return {pass, fmt("10000 models (%zu defined, %zu undefined), %zu exceed 2+sqrt2, max S = "
                    "%.6f at lambda_count %d; saturating model S err %.2g; "
                    "note: conditioning-split model reaches S = %.6f",
                    evaluated, undefined, exceeding, max_s, worst_lambda, sat_err,
                    split ? split->total : 0.0)};
}

Outcome fine_grained_game() {
  const auto g = lhs::fine_grained_game_max(pauli(Axis::X), pauli(Axis::Y), {0, 0});
  const double expect = 0.5 + 1 / (2 * std::sqrt(2.0));
  const double grid =
      oracle::game_grid_search(Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(0, 1, 0), 0, 0, 1000000);
  const double e1 = std::abs(g.probability - expect), e2 = std::abs(g.probability - grid);
  return {e1 <= 1e-12 && e2 <= 1e-5,
          fmt("P = %.15f, analytic err %.2g, grid-search err %.2g", g.probability, e1, e2)};
}

Outcome optics_round_trip() {
  using namespace optics;
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const Observable target = bloch_observable<double>(oracle::random_direction(rng));
    worst = std::max(worst, bloch_distance(realized_observable(solve_angles(target)), target));
  }
  const double hwp =
      bloch_distance(realized_observable(WaveplateSequence::single_hwp(22.5 * kDeg)),
                     pauli(Axis::X));
  const auto stack = WaveplateSequence::qwp_hwp_qwp(0.0, 45 * kDeg, 90 * kDeg);
  const double qhq = std::min(
      bloch_distance(realized_observable(stack, JonesConvention::Standard), pauli(Axis::Y)),
      bloch_distance(realized_observable(stack, JonesConvention::ConjugateRetardance),
                     pauli(Axis::Y)));
  const bool pass = worst < 1e-9 && hwp < 1e-9 && qhq < 1e-9;
  return {pass, fmt("1000 round trips max dist %.2g; HWP 22.5 -> sx dist %.2g; "
                    "QWP0/HWP45/QWP90 -> sy best dist %.4f over both conventions",
                    worst, hwp, qhq)};
}

Outcome table_report() {
  using namespace optics;
  const auto parsed = load_table(STEERCERT_TEST_DATA_DIR "/table1.csv");
  std::size_t reported = 0, passed = 0;
  bool ghz_row_ok = false, ghz_row_seen = false;
  std::string rows;
  for (const auto& p : parsed) {
    if (!p.row) continue;
    const auto r = verify_table_row(*p.row);
    const bool finite = std::isfinite(r.b0_deviation) && std::isfinite(r.b1_deviation);
    reported += finite ? 1 : 0;
    passed += r.pass ? 1 : 0;
    rows += fmt(" %.2f:%s", p.row->theta / kPi, r.pass ? "pass" : "flag");
    if (std::abs(p.row->theta - kPi / 4) < 1e-12) {
      ghz_row_seen = true;
      for (const auto& c : r.checks)
        ghz_row_ok = ghz_row_ok || (c.b0_deviation <= 1e-9 && c.b1_deviation <= 1e-9);
    }
  }
  const bool pass = reported == 9 && ghz_row_seen && ghz_row_ok;
  return {pass, fmt("%zu/9 rows reported, %zu within 0.02; theta=0.25pi row matches (sx, sy): "
                    "%s;%s",
                    reported, passed, ghz_row_ok ? "yes" : "no", rows.c_str())};
}

double median3(double a, double b, double c) {
  return std::max(std::min(a, b), std::min(std::max(a, b), c));
}

Outcome monte_carlo() {
  const double t = 0.3 * kPi;
  const auto sc = optimal_scenario(t);
  mc::ExperimentConfig cfg;
  cfg.theta = t;
  cfg.events_per_setting = 100000;
  cfg.seed = 20240601;
  const double s_clean = mc::estimate_s(mc::simulate_counts(gghz_state(t), sc, cfg)).s_hat;

  const auto mixed = mc::estimate_s(mc::simulate_counts(TripartiteState::maximally_mixed(), sc, cfg));
  const double z = std::abs(mixed.s_hat - 2.0) / mixed.s_stderr;

  std::array<double, 3> clean{}, dark{};
  for (int n = 0; n < 3; ++n) {
    mc::ExperimentConfig c = cfg;
    c.seed = cfg.seed + 1 + n;
    clean[n] = mc::estimate_s(mc::simulate_counts(gghz_state(t), sc, c)).s_hat;
    c.dark_count_rate = 0.05;
    dark[n] = mc::estimate_s(mc::simulate_counts(gghz_state(t), sc, c)).s_hat;
  }
  const double med_clean = median3(clean[0], clean[1], clean[2]);
  const double med_dark = median3(dark[0], dark[1], dark[2]);
  const bool pass = s_clean == 4.0 && z <= 5.0 && med_dark < med_clean;
  return {pass, fmt("noiseless s_hat = %.17g; mixed s_hat = %.5f (%.2f sigma from 2); "
                    "dark 0.05 median %.5f vs noiseless %.5f",
                    s_clean, mixed.s_hat, z, med_dark, med_clean)};
}

Outcome property_suite() {
  std::mt19937_64 rng(8);
  double born = 0.0, signaling = 0.0, completeness = 0.0;
  for (int n = 0; n < 500; ++n) {
    const auto state = TripartiteState::from_density(oracle::random_density(rng, n % 2 == 1));
    auto obs = [&] { return bloch_observable<double>(oracle::random_direction(rng)); };
    const MeasurementScenario sc{obs(), obs(), obs(), obs(), obs(), obs()};
    for (int s = 0; s < 8; ++s) {
      const auto p = outcome_distribution(state, s >> 2, (s >> 1) & 1, s & 1, sc);
      double total = 0.0;
      for (double v : p) total += v;
      born = std::max(born, std::abs(total - 1.0));
    }
    const Assemblage a(state, sc);
    signaling = std::max({signaling, a.no_signaling_defect(), a.normalization_defect()});
    for (const Observable* m : {&sc.a0, &sc.a1, &sc.b0, &sc.b1, &sc.c0, &sc.c1}) {
      const Matrix2 sum = projector(*m, 0).matrix + projector(*m, 1).matrix;
      completeness = std::max(completeness, (sum - Matrix2::Identity()).cwiseAbs().maxCoeff());
    }
  }
  const bool pass = born <= 1e-10 && signaling <= 1e-10 && completeness <= 1e-10;
  return {pass, fmt("500 states: Born-sum %.2g, no-signaling %.2g, completeness %.2g", born,
                    signaling, completeness)};
}

}  // namespace

int main() {
  criterion(1, "maximal violation", 1.0, maximal_violation);
  criterion(2, "bound values", 1.0, bound_values);
  criterion(3, "LHS falsification", 10.0, lhs_falsification);
  criterion(4, "fine-grained game", 5.0, fine_grained_game);
  criterion(5, "optics round trip", 5.0, optics_round_trip);
  criterion(6, "waveplate table report", 5.0, table_report);
  criterion(7, "Monte Carlo convergence", 30.0, monte_carlo);
  criterion(8, "normalization and no-signaling", 10.0, property_suite);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
