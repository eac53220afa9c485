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

// Exact three-qubit quantum mechanics on dense fixed-size Eigen matrices.
//
// Basis conventions used everywhere in the library:
//   |0> = (1, 0)^T  (horizontal polarization), |1> = (0, 1)^T  (vertical).
//   Three-qubit index = 4a + 2b + c for the ordering A (x) B (x) C.
//   Outcome label 0 <-> eigenvalue +1, label 1 <-> eigenvalue -1.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>

#include "steercert/errors.hpp"
#include "steercert/numerics.hpp"

namespace steercert {

template <typename Real>
using Complex = std::complex<Real>;
template <typename Real>
using Mat2 = Eigen::Matrix<Complex<Real>, 2, 2>;
template <typename Real>
using Mat4 = Eigen::Matrix<Complex<Real>, 4, 4>;
template <typename Real>
using Mat8 = Eigen::Matrix<Complex<Real>, 8, 8>;
template <typename Real>
using Ket2 = Eigen::Matrix<Complex<Real>, 2, 1>;
template <typename Real>
using Ket8 = Eigen::Matrix<Complex<Real>, 8, 1>;
template <typename Real>
using Vec3 = Eigen::Matrix<Real, 3, 1>;

enum class Axis { X, Y, Z };

/// Outcome label of a dichotomic measurement.
using Outcome = int;

namespace detail {

template <typename Real>
Mat2<Real> pauli_matrix(Axis axis) {
  using C = Complex<Real>;
  Mat2<Real> m;
  switch (axis) {
    case Axis::X: m << C(0), C(1), C(1), C(0); break;
    case Axis::Y: m << C(0), C(0, -1), C(0, 1), C(0); break;
    case Axis::Z: m << C(1), C(0), C(0), C(-1); break;
  }
  return m;
}

template <typename Derived>
auto hermitian_defect(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline void check_outcome(Outcome o) {
  if (o != 0 && o != 1) throw InvalidArgument("outcome label must be 0 or 1");
}

}  // namespace detail

/// n . sigma for the Bloch vector n.
template <typename Real>
Mat2<Real> bloch_to_matrix(const Vec3<Real>& n) {
  return n.x() * detail::pauli_matrix<Real>(Axis::X) +
         n.y() * detail::pauli_matrix<Real>(Axis::Y) +
         n.z() * detail::pauli_matrix<Real>(Axis::Z);
}

/// Inverse of bloch_to_matrix on the traceless part: n_i = Tr(M sigma_i) / 2.
template <typename Real>
Vec3<Real> matrix_to_bloch(const Mat2<Real>& m) {
  Vec3<Real> n;
  n.x() = std::real((m * detail::pauli_matrix<Real>(Axis::X)).trace()) / Real(2);
  n.y() = std::real((m * detail::pauli_matrix<Real>(Axis::Y)).trace()) / Real(2);
  n.z() = std::real((m * detail::pauli_matrix<Real>(Axis::Z)).trace()) / Real(2);
  return n;
}

/// A sharp dichotomic qubit measurement with eigenvalues +1 and -1.
template <typename Real>
class BasicObservable {
 public:
  /// Builds the observable n . sigma; `n` must already be a unit vector.
  static BasicObservable from_bloch(const Vec3<Real>& n) {
    const Real norm = n.norm();
    if (!(norm >= Real(kNumerics.zero_vector)))
      throw ZeroVector("Bloch vector has (near) zero length");
    if (std::abs(norm - Real(1)) > Real(kNumerics.bloch_norm))
      throw InvalidArgument("Bloch vector must have unit length");
    const Vec3<Real> unit = n / norm;
    return BasicObservable(bloch_to_matrix(unit), unit);
  }

  /// Validates a 2x2 matrix as a +-1 observable and recovers its Bloch vector.
  static BasicObservable from_matrix(const Mat2<Real>& m,
                                     Real tol = Real(kNumerics.bloch_norm)) {
    if (detail::hermitian_defect(m) > tol)
      throw InvalidArgument("observable matrix is not Hermitian");
    if (std::abs(m.trace()) > tol)
      throw InvalidArgument("observable matrix is not traceless");
    const Vec3<Real> n = matrix_to_bloch(m);
    if (std::abs(n.norm() - Real(1)) > tol)
      throw InvalidArgument("observable eigenvalues are not +-1");
    const Vec3<Real> unit = n / n.norm();
    return BasicObservable(bloch_to_matrix(unit), unit);
  }

  const Mat2<Real>& matrix() const noexcept { return matrix_; }
  const Vec3<Real>& bloch() const noexcept { return bloch_; }

  BasicObservable operator-() const { return BasicObservable(-matrix_, -bloch_); }

 private:
  BasicObservable(const Mat2<Real>& m, const Vec3<Real>& n) : matrix_(m), bloch_(n) {}

  Mat2<Real> matrix_;
  Vec3<Real> bloch_;
};

/// Rank-1 projector onto one eigenspace of an observable.
template <typename Real>
struct BasicProjector {
  Mat2<Real> matrix;
  Outcome outcome;
};

template <typename Real>
class BasicTripartiteState {
 public:
  /// Pure state; `psi` must be normalized within the trace tolerance.
  static BasicTripartiteState from_pure(const Ket8<Real>& psi) {
    if (std::abs(psi.squaredNorm() - Real(1)) > Real(kNumerics.trace))
      throw InvalidArgument("state vector is not normalized");
    return BasicTripartiteState(psi * psi.adjoint(), psi);
  }

  static BasicTripartiteState from_density(const Mat8<Real>& rho) {
    if (detail::hermitian_defect(rho) > Real(kNumerics.hermitian))
      throw InvalidArgument("density matrix is not Hermitian");
    if (std::abs(rho.trace() - Complex<Real>(1)) > Real(kNumerics.trace))
      throw InvalidArgument("density matrix does not have unit trace");
    const Mat8<Real> sym = (rho + rho.adjoint()) / Real(2);
    Eigen::SelfAdjointEigenSolver<Mat8<Real>> es(sym, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -Real(kNumerics.psd))
      throw InvalidArgument("density matrix is not positive semidefinite");
    return BasicTripartiteState(sym, std::nullopt);
  }

  static BasicTripartiteState maximally_mixed() {
    return BasicTripartiteState(Mat8<Real>::Identity() / Real(8), std::nullopt);
  }

  const Mat8<Real>& density() const noexcept { return density_; }
  const std::optional<Ket8<Real>>& pure_vector() const noexcept { return pure_; }

 private:
  BasicTripartiteState(const Mat8<Real>& rho, std::optional<Ket8<Real>> psi)
      : density_(rho), pure_(std::move(psi)) {}

  Mat8<Real> density_;
  std::optional<Ket8<Real>> pure_;
};

using Observable = BasicObservable<double>;
using Projector = BasicProjector<double>;
using TripartiteState = BasicTripartiteState<double>;
using Matrix2 = Mat2<double>;
using Matrix4 = Mat4<double>;
using Matrix8 = Mat8<double>;
using Vector3 = Vec3<double>;

template <typename Real = double>
BasicObservable<Real> pauli(Axis axis) {
  Vec3<Real> n = Vec3<Real>::Zero();
  n[static_cast<int>(axis)] = Real(1);
  return BasicObservable<Real>::from_bloch(n);
}

template <typename Real>
BasicObservable<Real> bloch_observable(const Vec3<Real>& n) {
  return BasicObservable<Real>::from_bloch(n);
}

/// (I + M)/2 for outcome 0, (I - M)/2 for outcome 1.
template <typename Real>
BasicProjector<Real> projector(const BasicObservable<Real>& m, Outcome outcome) {
  detail::check_outcome(outcome);
  const Real sign = outcome == 0 ? Real(1) : Real(-1);
  return {(Mat2<Real>::Identity() + sign * m.matrix()) / Real(2), outcome};
}

/// cos(theta)|000> + sin(theta)|111>, defined on the open interval (0, pi/2).
template <typename Real = double>
BasicTripartiteState<Real> gghz_state(Real theta) {
  if (!(theta > Real(0) && theta < std::numbers::pi_v<Real> / Real(2)))
    throw OutOfRange("theta must lie in the open interval (0, pi/2)");
  Ket8<Real> psi = Ket8<Real>::Zero();
  psi(0) = std::cos(theta);
  psi(7) = std::sin(theta);
  return BasicTripartiteState<Real>::from_pure(psi);
}

/// Kronecker product a (x) b for fixed-size or dynamic Eigen matrices.
template <typename DA, typename DB>
auto kron(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using Scalar = typename DA::Scalar;
  constexpr int ra = DA::RowsAtCompileTime, rb = DB::RowsAtCompileTime;
  constexpr int ca = DA::ColsAtCompileTime, cb = DB::ColsAtCompileTime;
  constexpr int R = (ra == Eigen::Dynamic || rb == Eigen::Dynamic) ? Eigen::Dynamic : ra * rb;
  constexpr int C = (ca == Eigen::Dynamic || cb == Eigen::Dynamic) ? Eigen::Dynamic : ca * cb;
  Eigen::Matrix<Scalar, R, C> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

template <typename Real>
Mat8<Real> tensor3(const Mat2<Real>& a, const Mat2<Real>& b, const Mat2<Real>& c) {
  return kron(kron(a, b), c);
}

/// Tr_A of an 8x8 operator, leaving the BC block (index 2b + c).
template <typename Real>
Mat4<Real> partial_trace_a(const Mat8<Real>& rho) {
  return rho.template block<4, 4>(0, 0) + rho.template block<4, 4>(4, 4);
}

/// Tr_AB of an 8x8 operator, leaving Charlie's 2x2 block.
template <typename Real>
Mat2<Real> partial_trace_ab(const Mat8<Real>& rho) {
  Mat2<Real> out = Mat2<Real>::Zero();
  for (int ab = 0; ab < 4; ++ab) out += rho.template block<2, 2>(2 * ab, 2 * ab);
  return out;
}

/// Reduced density matrix of one qubit (0 = A, 1 = B, 2 = C).
template <typename Real>
Mat2<Real> single_qubit_marginal(const Mat8<Real>& rho, int qubit) {
  if (qubit < 0 || qubit > 2) throw InvalidArgument("qubit index must be 0, 1 or 2");
  const int shift = 2 - qubit;
  Mat2<Real> out = Mat2<Real>::Zero();
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) {
      const int rest_r = r & ~(1 << shift);
      const int rest_c = c & ~(1 << shift);
      if (rest_r != rest_c) continue;
      out((r >> shift) & 1, (c >> shift) & 1) += rho(r, c);
    }
  return out;
}

/// Born-rule distribution for a fixed triple of observables, indexed 4a+2b+c.
template <typename Real>
std::array<Real, 8> born_distribution(const BasicTripartiteState<Real>& state,
                                      const BasicObservable<Real>& ma,
                                      const BasicObservable<Real>& mb,
                                      const BasicObservable<Real>& mc) {
  std::array<Real, 8> p{};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        const Mat8<Real> proj = tensor3(projector(ma, a).matrix, projector(mb, b).matrix,
                                        projector(mc, c).matrix);
        p[4 * a + 2 * b + c] = std::real((proj * state.density()).trace());
      }
  return p;
}

}  // namespace steercert
