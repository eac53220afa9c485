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

// Jones-calculus model of the polarization measurement module. A waveplate
// stack in front of a polarizing beam splitter realizes a qubit observable;
// the solver inverts that map, and the verifier checks tabulated settings.
//
// Conventions (|H> = |0>, |V> = |1>, angles of the fast axis from horizontal):
//   HWP(p) = [[cos 2p, sin 2p], [sin 2p, -cos 2p]]
//   QWP(p) = [[cos^2 p + i sin^2 p, (1 - i) sin p cos p],
//             [(1 - i) sin p cos p, sin^2 p + i cos^2 p]]
// with global phases dropped. The conjugate-retardance convention replaces
// each matrix by its complex conjugate. The PBS transmits |H> (outcome 0).

#include <array>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "steercert/quantum.hpp"
#include "steercert/steering.hpp"

namespace steercert::optics {

enum class WaveplateKind { Half, Quarter };

enum class JonesConvention { Standard, ConjugateRetardance };

std::string to_string(JonesConvention c);

/// Fast-axis angle in radians, normalized to (-pi/2, pi/2].
double normalize_angle(double angle);

struct Waveplate {
  WaveplateKind kind;
  double angle;

  static Waveplate half(double angle) { return {WaveplateKind::Half, normalize_angle(angle)}; }
  static Waveplate quarter(double angle) {
    return {WaveplateKind::Quarter, normalize_angle(angle)};
  }
};

/// Waveplates in traversal order, followed by the PBS.
class WaveplateSequence {
 public:
  explicit WaveplateSequence(std::vector<Waveplate> plates);

  static WaveplateSequence single_hwp(double h);
  static WaveplateSequence qwp_hwp_qwp(double q1, double h, double q2);

  const std::vector<Waveplate>& plates() const noexcept { return plates_; }

  /// (q1, h, q2) for a QWP-HWP-QWP stack.
  std::array<double, 3> angles() const;

 private:
  std::vector<Waveplate> plates_;
};

Matrix2 hwp_matrix(double angle);
Matrix2 qwp_matrix(double angle, JonesConvention conv = JonesConvention::Standard);
Matrix2 waveplate_matrix(const Waveplate& w,
                         JonesConvention conv = JonesConvention::Standard);

/// Product of the element matrices, last-traversed leftmost.
Matrix2 sequence_unitary(const WaveplateSequence& seq,
                         JonesConvention conv = JonesConvention::Standard);

/// U^dag sz U for the stack unitary U.
Observable realized_observable(const WaveplateSequence& seq,
                               JonesConvention conv = JonesConvention::Standard);

double bloch_distance(const Observable& x, const Observable& y);

/// QWP-HWP-QWP angles realizing `target` with its +1 eigenvector routed to the
/// transmitted port. Among the one-parameter family of solutions, picks the
/// one with the smallest max |angle| (ties: lexicographic on (q1, h, q2)).
/// Throws NoConvergence if the residual exceeds 1e-9.
WaveplateSequence solve_angles(const Observable& target,
                               JonesConvention conv = JonesConvention::Standard);

/// A tabulated row of Bob's settings; angles in degrees as printed.
struct TableRow {
  double theta;  // radians
  std::array<double, 3> b0_degrees;
  std::array<double, 3> b1_degrees;
};

struct ConventionCheck {
  JonesConvention convention;
  double b0_deviation;
  double b1_deviation;
  bool b0_outcome_swapped;  // realized observable is close to minus the target
  bool b1_outcome_swapped;
};

struct RowReport {
  TableRow row;
  std::array<ConventionCheck, 2> checks;  // Standard, ConjugateRetardance
  std::size_t best;                       // index into checks
  double b0_deviation;                    // under the best convention
  double b1_deviation;
  bool pass;
};

inline constexpr double kTableTolerance = 0.02;

RowReport verify_table_row(const TableRow& row, double tolerance = kTableTolerance);

/// One line of a table file; `row` is empty when the line failed to parse.
struct ParsedRow {
  std::size_t line;
  std::optional<TableRow> row;
  std::string error;
};

/// Reads the CSV table format: '#' comments, a header line
/// `theta_pi,b0_q1,b0_h,b0_q2,b1_q1,b1_h,b1_q2`, then one row per theta with
/// theta in units of pi and angles in degrees.
std::vector<ParsedRow> parse_table(std::istream& in);
std::vector<ParsedRow> load_table(const std::string& path);

}  // namespace steercert::optics
