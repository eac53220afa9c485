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

// Reference computations for the tests. Deliberately independent of the
// library's tensor3/projector/partial-trace code paths: they work with
// eigenvectors and explicit amplitude sums instead.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "steercert/quantum.hpp"

namespace oracle {

using cd = std::complex<double>;
using Ket2 = Eigen::Vector2cd;
using Mat2 = Eigen::Matrix2cd;
using Mat8 = Eigen::Matrix<cd, 8, 8>;

/// Eigenvector of a 2x2 Hermitian matrix for eigenvalue +1 (outcome 0) or -1
/// (outcome 1), from a numerical eigendecomposition.
inline Ket2 eigvec(const Mat2& m, int outcome) {
  Eigen::SelfAdjointEigenSolver<Mat2> es(m);
  return es.eigenvectors().col(outcome == 0 ? 1 : 0);
}

/// <v_a v_b v_c| rho |v_a v_b v_c> by explicit index sums.
inline double born(const Mat8& rho, const Mat2& ma, const Mat2& mb, const Mat2& mc, int a,
                   int b, int c) {
  const Ket2 va = eigvec(ma, a), vb = eigvec(mb, b), vc = eigvec(mc, c);
  std::array<cd, 8> v;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z) v[4 * x + 2 * y + z] = va(x) * vb(y) * vc(z);
  cd acc = 0.0;
  for (int r = 0; r < 8; ++r)
    for (int s = 0; s < 8; ++s) acc += std::conj(v[r]) * rho(r, s) * v[s];
  return acc.real();
}

inline Mat2 sx() { Mat2 m; m << 0, 1, 1, 0; return m; }
inline Mat2 sy() { Mat2 m; m << 0, cd(0, -1), cd(0, 1), 0; return m; }
inline Mat2 sz() { Mat2 m; m << 1, 0, 0, -1; return m; }

inline Mat8 gghz_density(double theta) {
  Eigen::Matrix<cd, 8, 1> psi = Eigen::Matrix<cd, 8, 1>::Zero();
  psi(0) = std::cos(theta);
  psi(7) = std::sin(theta);
  return psi * psi.adjoint();
}

/// Uniform unit vector on the sphere.
template <typename Rng>
Eigen::Vector3d random_direction(Rng& rng) {
  std::normal_distribution<double> n;
  Eigen::Vector3d v;
  do v = Eigen::Vector3d(n(rng), n(rng), n(rng));
  while (v.norm() < 1e-6);
  return v.normalized();
}

/// Haar-random pure state density matrix on 8 dimensions, optionally mixed
/// with a random second state.
template <typename Rng>
Mat8 random_density(Rng& rng, bool mixed) {
  std::normal_distribution<double> n;
  auto ket = [&] {
    Eigen::Matrix<cd, 8, 1> v;
    for (int k = 0; k < 8; ++k) v(k) = cd(n(rng), n(rng));
    return Eigen::Matrix<cd, 8, 1>(v.normalized());
  };
  const auto p = ket();
  Mat8 rho = p * p.adjoint();
  if (mixed) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double w = u(rng);
    const auto q = ket();
    rho = w * rho + (1 - w) * q * q.adjoint();
  }
  return rho;
}

/// Fine-grained game by brute force over ~n points of a Fibonacci lattice on
/// the Bloch sphere: max of (1/2)[P(w0|m0) + P(w1|m1)] over pure states.
inline double game_grid_search(const Eigen::Vector3d& n0, const Eigen::Vector3d& n1, int w0,
                               int w1, int points) {
  const double s0 = w0 == 0 ? 1.0 : -1.0, s1 = w1 == 0 ? 1.0 : -1.0;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  double best = 0.0;
  for (int k = 0; k < points; ++k) {
    const double z = 1.0 - 2.0 * (k + 0.5) / points;
    const double r = std::sqrt(1.0 - z * z);
    const Eigen::Vector3d v(r * std::cos(golden * k), r * std::sin(golden * k), z);
    const double p = 0.5 * (0.5 * (1 + s0 * n0.dot(v)) + 0.5 * (1 + s1 * n1.dot(v)));
    best = std::max(best, p);
  }
  return best;
}

/// Retarder with fast axis at `phi` and retardance `delta`, built as
/// R(phi) diag(1, e^{i delta}) R(-phi).
inline Mat2 retarder(double phi, double delta) {
  Eigen::Matrix2d rot;
  rot << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
  Mat2 d = Mat2::Zero();
  d(0, 0) = 1.0;
  d(1, 1) = std::exp(cd(0, delta));
  return rot.cast<cd>() * d * rot.transpose().cast<cd>();
}

/// Distance between two matrices modulo a global phase.
inline double phase_distance(const Mat2& a, const Mat2& b) {
  const cd overlap = (b.adjoint() * a).trace();
  const cd phase = std::abs(overlap) > 1e-15 ? overlap / std::abs(overlap) : cd(1.0);
  return (a - phase * b).cwiseAbs().maxCoeff();
}

}  // namespace oracle
