// Copyright 2026 The Repeater Rate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Brute-force density-matrix reference for the Bell-diagonal algebra.
// Everything here works on explicit complex matrices and knows nothing
// about the group-convolution shortcut used by swap().

#include <array>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

#include "repeater/bell_state.hpp"

namespace repeater::oracle {

template <typename Scalar>
using Complex = std::complex<Scalar>;

template <typename Scalar>
using Matrix4 = Eigen::Matrix<Complex<Scalar>, 4, 4>;

template <typename Scalar>
using Vector4 = Eigen::Matrix<Complex<Scalar>, 4, 1>;

/// Bell vectors in the computational basis |q1 q2>, index 2*q1 + q2,
/// ordered psi+, psi-, phi+, phi-.
template <typename Scalar>
std::array<Vector4<Scalar>, 4> bell_basis() {
  const Scalar h = Scalar(1) / std::sqrt(Scalar(2));
  std::array<Vector4<Scalar>, 4> b;
  b[0] << 0, h, h, 0;
  b[1] << 0, h, -h, 0;
  b[2] << h, 0, 0, h;
  b[3] << h, 0, 0, -h;
  return b;
}

template <typename Scalar>
std::array<Eigen::Matrix<Complex<Scalar>, 2, 2>, 4> paulis() {
  using M2 = Eigen::Matrix<Complex<Scalar>, 2, 2>;
  const Complex<Scalar> i(0, 1);
  std::array<M2, 4> p;
  p[0] << 1, 0, 0, 1;
  p[1] << 0, 1, 1, 0;
  p[2] << 0, -i, i, 0;
  p[3] << 1, 0, 0, -1;
  return p;
}

/// Explicit 4x4 density matrix of two qubits.
template <typename Scalar = double>
class DenseTwoQubitState {
 public:
  explicit DenseTwoQubitState(const Matrix4<Scalar>& rho) : rho_(rho) {}

  static DenseTwoQubitState from_bell_diagonal(const BellDiagonal<Scalar>& s) {
    Matrix4<Scalar> rho = Matrix4<Scalar>::Zero();
    const auto basis = bell_basis<Scalar>();
    for (int k = 0; k < 4; ++k) rho += Complex<Scalar>(s.weight(k)) * basis[k] * basis[k].adjoint();
    return DenseTwoQubitState(rho);
  }

  const Matrix4<Scalar>& matrix() const { return rho_; }

  Complex<Scalar> trace() const { return rho_.trace(); }

  bool is_hermitian(Scalar tol = Scalar(1e-12)) const { return (rho_ - rho_.adjoint()).norm() <= tol; }

  Scalar min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix4<Scalar>> es(rho_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  }

  /// <beta_k| rho |beta_k> for the four Bell states.
  typename BellDiagonal<Scalar>::Weights bell_weights() const {
    const auto basis = bell_basis<Scalar>();
    typename BellDiagonal<Scalar>::Weights w;
    for (int k = 0; k < 4; ++k) w(k) = (basis[k].adjoint() * rho_ * basis[k])(0, 0).real();
    return w;
  }

  /// Reads back the Bell-diagonal part; throws if off-diagonal Bell
  /// coherences exceed `tol`.
  BellDiagonal<Scalar> to_bell_diagonal(Scalar tol = Scalar(1e-12)) const {
    const auto basis = bell_basis<Scalar>();
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        if (j != k && std::abs((basis[j].adjoint() * rho_ * basis[k])(0, 0)) > tol)
          throw std::runtime_error("DenseTwoQubitState: state is not Bell diagonal");
    auto w = bell_weights();
    for (int k = 0; k < 4; ++k)
      if (w(k) < Scalar(0) && w(k) > -tol) w(k) = Scalar(0);
    return BellDiagonal<Scalar>::from_weights(w);
  }

 private:
  Matrix4<Scalar> rho_;
};

namespace detail {

using FourQubitIndex = int;  // 8a + 4b + 2c + d

template <typename Scalar>
using Matrix16 = Eigen::Matrix<Complex<Scalar>, 16, 16>;

/// Unnormalized AD state after projecting BC of rho_AB (x) rho_CD onto `beta`.
template <typename Scalar>
Matrix4<Scalar> project_bc(const Matrix16<Scalar>& rho, const Vector4<Scalar>& beta) {
  Matrix4<Scalar> out = Matrix4<Scalar>::Zero();
  for (int a = 0; a < 2; ++a)
    for (int d = 0; d < 2; ++d)
      for (int ap = 0; ap < 2; ++ap)
        for (int dp = 0; dp < 2; ++dp) {
          Complex<Scalar> acc(0);
          for (int bc = 0; bc < 4; ++bc)
            for (int bcp = 0; bcp < 4; ++bcp) {
              const FourQubitIndex row = 8 * a + 2 * bc + d;
              const FourQubitIndex col = 8 * ap + 2 * bcp + dp;
              acc += std::conj(beta(bc)) * rho(row, col) * beta(bcp);
            }
          out(2 * a + d, 2 * ap + dp) = acc;
        }
  return out;
}

template <typename Scalar>
Matrix16<Scalar> tensor(const Matrix4<Scalar>& ab, const Matrix4<Scalar>& cd) {
  Matrix16<Scalar> out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.template block<4, 4>(4 * i, 4 * j) = ab(i, j) * cd;
  return out;
}

template <typename Scalar>
Matrix4<Scalar> apply_on_second(const Matrix4<Scalar>& rho, const Eigen::Matrix<Complex<Scalar>, 2, 2>& u) {
  Matrix4<Scalar> big = Matrix4<Scalar>::Zero();
  big.template block<2, 2>(0, 0) = u;
  big.template block<2, 2>(2, 2) = u;
  return big * rho * big.adjoint();
}

/// For each BC outcome, the Pauli on D that turns the psi+ (x) psi+ outcome
/// back into psi+. Found by search, not by the group rule.
template <typename Scalar>
std::array<int, 4> feed_forward_table() {
  const auto basis = bell_basis<Scalar>();
  const auto pauli = paulis<Scalar>();
  const Matrix4<Scalar> pp = basis[0] * basis[0].adjoint();
  const Matrix16<Scalar> rho = tensor<Scalar>(pp, pp);
  std::array<int, 4> table{};
  for (int beta = 0; beta < 4; ++beta) {
    Matrix4<Scalar> ad = project_bc<Scalar>(rho, basis[beta]);
    ad /= ad.trace();
    Scalar best = -1;
    for (int k = 0; k < 4; ++k) {
      const Scalar overlap = (basis[0].adjoint() * apply_on_second<Scalar>(ad, pauli[k]) * basis[0])(0, 0).real();
      if (overlap > best) {
        best = overlap;
        table[beta] = k;
      }
    }
    if (best < Scalar(1) - Scalar(1e-12)) throw std::logic_error("oracle: no Pauli restores psi+");
  }
  return table;
}

}  // namespace detail

/// Entanglement swap on explicit density matrices: builds the 16x16
/// four-qubit state, projects BC onto each Bell state, applies the Pauli
/// correction to D and averages over outcomes.
template <typename Scalar = double>
DenseTwoQubitState<Scalar> oracle_swap_dense(const DenseTwoQubitState<Scalar>& left,
                                             const DenseTwoQubitState<Scalar>& right) {
  static const std::array<int, 4> correction = detail::feed_forward_table<Scalar>();
  const auto basis = bell_basis<Scalar>();
  const auto pauli = paulis<Scalar>();
  const auto rho = detail::tensor<Scalar>(left.matrix(), right.matrix());
  Matrix4<Scalar> out = Matrix4<Scalar>::Zero();
  for (int beta = 0; beta < 4; ++beta)
    out += detail::apply_on_second<Scalar>(detail::project_bc<Scalar>(rho, basis[beta]), pauli[correction[beta]]);
  return DenseTwoQubitState<Scalar>(out);
}

/// Applies the single-qubit phase-flip channel rho -> p(t/2) rho + (1 - p(t/2)) Z rho Z
/// to each qubit separately.
template <typename Scalar = double>
DenseTwoQubitState<Scalar> oracle_dephase_dense(const DenseTwoQubitState<Scalar>& state, Scalar t, Scalar tau_c) {
  const Scalar p = (Scalar(1) + std::exp(-(t / Scalar(2)) / tau_c)) / Scalar(2);
  Matrix4<Scalar> z1 = Matrix4<Scalar>::Zero();
  Matrix4<Scalar> z2 = Matrix4<Scalar>::Zero();
  for (int q1 = 0; q1 < 2; ++q1)
    for (int q2 = 0; q2 < 2; ++q2) {
      z1(2 * q1 + q2, 2 * q1 + q2) = q1 ? -1 : 1;
      z2(2 * q1 + q2, 2 * q1 + q2) = q2 ? -1 : 1;
    }
  Matrix4<Scalar> rho = state.matrix();
  rho = p * rho + (Scalar(1) - p) * z1 * rho * z1;
  rho = p * rho + (Scalar(1) - p) * z2 * rho * z2;
  return DenseTwoQubitState<Scalar>(rho);
}

template <typename Scalar = double>
BellDiagonal<Scalar> oracle_swap(const BellDiagonal<Scalar>& left, const BellDiagonal<Scalar>& right) {
  return oracle_swap_dense(DenseTwoQubitState<Scalar>::from_bell_diagonal(left),
                           DenseTwoQubitState<Scalar>::from_bell_diagonal(right))
      .to_bell_diagonal();
}

}  // namespace repeater::oracle
