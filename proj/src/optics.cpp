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

#include "steercert/optics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <tuple>

namespace steercert::optics {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

Vector3 state_bloch(const Ket2<double>& psi) {
  const std::complex<double> coh = std::conj(psi(0)) * psi(1);
  return {2.0 * coh.real(), 2.0 * coh.imag(), std::norm(psi(0)) - std::norm(psi(1))};
}

/// +1 eigenvector of n . sigma.
Ket2<double> plus_eigenvector(const Vector3& n) {
  Eigen::SelfAdjointEigenSolver<Matrix2> es(bloch_to_matrix(n));
  return es.eigenvectors().col(1);  // eigenvalues ascend
}

struct Candidate {
  double q1, h, q2;
  double cost() const { return std::max({std::abs(q1), std::abs(h), std::abs(q2)}); }
  bool operator<(const Candidate& o) const {
    if (std::abs(cost() - o.cost()) > 1e-12) return cost() < o.cost();
    return std::tie(q1, h, q2) < std::tie(o.q1, o.h, o.q2);
  }
};

class AngleSolver {
 public:
  AngleSolver(const Observable& target, JonesConvention conv)
      : target_(target), conv_(conv), eigvec_(plus_eigenvector(target.bloch())) {
    const Ket2<double> probe = qwp_matrix(kPi / 4, conv).adjoint() * Ket2<double>(1.0, 0.0);
    kappa_ = state_bloch(probe).y();
  }

  /// All exact solutions with the first quarter-wave plate at q1.
  std::vector<Candidate> solutions(double q1) const {
    const Vector3 m = state_bloch(qwp_matrix(q1, conv_) * eigvec_);
    const double s = std::clamp(-m.y() / kappa_, -1.0, 1.0);
    const double alpha = 0.5 * std::asin(s);
    std::vector<Candidate> out;
    for (double q2 : {normalize_angle(alpha), normalize_angle(kPi / 2 - alpha)}) {
      const Vector3 w =
          state_bloch(qwp_matrix(q2, conv_).adjoint() * Ket2<double>(1.0, 0.0));
      std::vector<double> hs;
      if (std::hypot(m.x(), m.z()) < 1e-12) {
        hs = {0.0};
      } else {
        const double h0 = 0.25 * (std::atan2(m.x(), m.z()) + std::atan2(w.x(), w.z()));
        hs = {normalize_angle(h0), normalize_angle(h0 + kPi / 2)};
      }
      for (double h : hs) {
        const Candidate c{normalize_angle(q1), h, q2};
        if (residual(c) < 1e-7) out.push_back(c);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::optional<Candidate> best_at(double q1) const {
    auto s = solutions(q1);
    if (s.empty()) return std::nullopt;
    return s.front();
  }

  double residual(const Candidate& c) const {
    const auto seq = WaveplateSequence::qwp_hwp_qwp(c.q1, c.h, c.q2);
    const Matrix2 u = sequence_unitary(seq, conv_);
    const Matrix2 m = u.adjoint() * bloch_to_matrix(Vector3(0, 0, 1)) * u;
    return (matrix_to_bloch(m) - target_.bloch()).norm();
  }

 private:
  const Observable& target_;
  JonesConvention conv_;
  Ket2<double> eigvec_;
  double kappa_ = 1.0;
};

}  // namespace

std::string to_string(JonesConvention c) {
  return c == JonesConvention::Standard ? "standard" : "conjugate-retardance";
}

double normalize_angle(double angle) {
  double a = std::fmod(angle, kPi);
  if (a <= -kPi / 2) a += kPi;
  if (a > kPi / 2) a -= kPi;
  return a;
}

WaveplateSequence::WaveplateSequence(std::vector<Waveplate> plates)
    : plates_(std::move(plates)) {
  if (plates_.size() != 1 && plates_.size() != 3)
    throw InvalidArgument("waveplate sequence must hold 1 or 3 plates");
  if (plates_.size() == 1 && plates_[0].kind != WaveplateKind::Half)
    throw InvalidArgument("single-plate sequence must be a half-wave plate");
  if (plates_.size() == 3 &&
      (plates_[0].kind != WaveplateKind::Quarter || plates_[1].kind != WaveplateKind::Half ||
       plates_[2].kind != WaveplateKind::Quarter))
    throw InvalidArgument("three-plate sequence must be QWP-HWP-QWP");
}

WaveplateSequence WaveplateSequence::single_hwp(double h) {
  return WaveplateSequence({Waveplate::half(h)});
}

WaveplateSequence WaveplateSequence::qwp_hwp_qwp(double q1, double h, double q2) {
  return WaveplateSequence({Waveplate::quarter(q1), Waveplate::half(h), Waveplate::quarter(q2)});
}

std::array<double, 3> WaveplateSequence::angles() const {
  if (plates_.size() != 3) throw InvalidArgument("not a QWP-HWP-QWP sequence");
  return {plates_[0].angle, plates_[1].angle, plates_[2].angle};
}

Matrix2 hwp_matrix(double angle) {
  const double c = std::cos(2 * angle), s = std::sin(2 * angle);
  Matrix2 m;
  m << c, s, s, -c;
  return m;
}

Matrix2 qwp_matrix(double angle, JonesConvention conv) {
  using C = std::complex<double>;
  const double c = std::cos(angle), s = std::sin(angle);
  const C off = C(1, -1) * (s * c);
  Matrix2 m;
  m << C(c * c, s * s), off, off, C(s * s, c * c);
  return conv == JonesConvention::Standard ? m : Matrix2(m.conjugate());
}

Matrix2 waveplate_matrix(const Waveplate& w, JonesConvention conv) {
  return w.kind == WaveplateKind::Half ? hwp_matrix(w.angle) : qwp_matrix(w.angle, conv);
}

Matrix2 sequence_unitary(const WaveplateSequence& seq, JonesConvention conv) {
  Matrix2 u = Matrix2::Identity();
  for (const Waveplate& w : seq.plates()) u = waveplate_matrix(w, conv) * u;
  return u;
}

Observable realized_observable(const WaveplateSequence& seq, JonesConvention conv) {
  const Matrix2 u = sequence_unitary(seq, conv);
  return Observable::from_matrix(u.adjoint() * pauli(Axis::Z).matrix() * u);
}

double bloch_distance(const Observable& x, const Observable& y) {
  return (x.bloch() - y.bloch()).norm();
}

WaveplateSequence solve_angles(const Observable& target, JonesConvention conv) {
  const AngleSolver solver(target, conv);

  constexpr int kGrid = 720;
  constexpr double kStep = kPi / kGrid;
  std::optional<Candidate> best;
  for (int n = 1; n <= kGrid; ++n) {
    const auto c = solver.best_at(-kPi / 2 + n * kStep);
    if (c && (!best || *c < *best)) best = c;
  }
  if (!best) throw NoConvergence("no QWP-HWP-QWP solution found on the search grid");

  // Golden-section polish of the max-|angle| cost around the grid optimum.
  auto cost_at = [&](double q1) {
    const auto c = solver.best_at(q1);
    return c ? c->cost() : std::numeric_limits<double>::infinity();
  };
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = best->q1 - kStep, hi = best->q1 + kStep;
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = cost_at(x1), f2 = cost_at(x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 <= f2) {
      hi = x2, x2 = x1, f2 = f1;
      x1 = hi - phi * (hi - lo), f1 = cost_at(x1);
    } else {
      lo = x1, x1 = x2, f1 = f2;
      x2 = lo + phi * (hi - lo), f2 = cost_at(x2);
    }
  }
  if (const auto polished = solver.best_at(0.5 * (lo + hi));
      polished && polished->cost() < best->cost() - 1e-12)
    best = polished;

  const double res = solver.residual(*best);
  if (!(res <= 1e-9))
    throw NoConvergence("waveplate solution residual " + std::to_string(res) +
                        " exceeds 1e-9");
  return WaveplateSequence::qwp_hwp_qwp(best->q1, best->h, best->q2);
}

RowReport verify_table_row(const TableRow& row, double tolerance) {
  const MeasurementScenario targets = optimal_scenario(row.theta);
  const auto b0 = WaveplateSequence::qwp_hwp_qwp(
      row.b0_degrees[0] * kDeg, row.b0_degrees[1] * kDeg, row.b0_degrees[2] * kDeg);
  const auto b1 = WaveplateSequence::qwp_hwp_qwp(
      row.b1_degrees[0] * kDeg, row.b1_degrees[1] * kDeg, row.b1_degrees[2] * kDeg);

  RowReport report{row, {}, 0, 0.0, 0.0, false};
  const std::array conventions{JonesConvention::Standard, JonesConvention::ConjugateRetardance};
  for (std::size_t n = 0; n < conventions.size(); ++n) {
    const Observable r0 = realized_observable(b0, conventions[n]);
    const Observable r1 = realized_observable(b1, conventions[n]);
    report.checks[n] = ConventionCheck{
        conventions[n],
        bloch_distance(r0, targets.b0),
        bloch_distance(r1, targets.b1),
        bloch_distance(r0, -targets.b0) <= tolerance,
        bloch_distance(r1, -targets.b1) <= tolerance,
    };
  }
  auto worst = [](const ConventionCheck& c) { return std::max(c.b0_deviation, c.b1_deviation); };
  report.best = worst(report.checks[1]) < worst(report.checks[0]) ? 1 : 0;
  report.b0_deviation = report.checks[report.best].b0_deviation;
  report.b1_deviation = report.checks[report.best].b1_deviation;
  report.pass = worst(report.checks[report.best]) <= tolerance;
  return report;
}

std::vector<ParsedRow> parse_table(std::istream& in) {
  std::vector<ParsedRow> rows;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      if (line.find("theta") != std::string::npos) continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);

    ParsedRow parsed{lineno, std::nullopt, {}};
    if (fields.size() != 7) {
      parsed.error = "expected 7 fields, found " + std::to_string(fields.size());
      rows.push_back(std::move(parsed));
      continue;
    }
    std::array<double, 7> v{};
    for (std::size_t n = 0; n < 7 && parsed.error.empty(); ++n) {
      try {
        std::size_t used = 0;
        v[n] = std::stod(fields[n], &used);
        if (fields[n].find_first_not_of(" \t\r", used) != std::string::npos)
          parsed.error = "field " + std::to_string(n + 1) + " is not a number";
      } catch (const std::exception&) {
        parsed.error = "field " + std::to_string(n + 1) + " is not a number";
      }
    }
    if (parsed.error.empty() && !(v[0] > 0.0 && v[0] < 0.5))
      parsed.error = "theta outside (0, 0.5) pi";
    if (parsed.error.empty())
      parsed.row = TableRow{v[0] * kPi, {v[1], v[2], v[3]}, {v[4], v[5], v[6]}};
    rows.push_back(std::move(parsed));
  }
  return rows;
}

std::vector<ParsedRow> load_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open table file: " + path);
  return parse_table(in);
}

}  // namespace steercert::optics
