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

#include <cmath>
#include <stdexcept>

#include <Eigen/Core>

namespace repeater {

/// Fidelity of a Bell pair whose two memories have dephased for a combined
/// pair time t: p(t) = (1 + exp(-t / tau_c)) / 2.
template <typename Scalar>
Scalar dephasing_fidelity(Scalar t, Scalar tau_c) {
  using std::exp;
  if (!(t >= Scalar(0))) throw std::invalid_argument("dephasing: t must be >= 0");
  if (!(tau_c > Scalar(0))) throw std::invalid_argument("dephasing: tau_c must be positive");
  return (Scalar(1) + exp(-t / tau_c)) / Scalar(2);
}

/// Two-qubit state diagonal in the Bell basis.
///
/// Basis order is {psi+, psi-, phi+, phi-}. Each Bell state is labelled by
/// the Pauli that maps psi+ onto it when applied to the first qubit:
/// psi+ = I (0b00), psi- = Z (0b01), phi+ = X (0b10), phi- = XZ (0b11).
/// With this labelling the index XOR is the Klein four-group product, so
/// entanglement swapping is a group convolution of the weight vectors.
template <typename Scalar = double>
class BellDiagonal {
 public:
  using Weights = Eigen::Matrix<Scalar, 4, 1>;

  enum Index : int { kPsiPlus = 0, kPsiMinus = 1, kPhiPlus = 2, kPhiMinus = 3 };

  static constexpr double kNormTolerance = 1e-12;

  BellDiagonal() : w_(Weights::UnitX()) {}

  /// Throws if any weight is negative or the weights do not sum to one.
  static BellDiagonal from_weights(const Weights& w) {
    using std::abs;
    if ((w.array() < Scalar(0)).any())
      throw std::invalid_argument("BellDiagonal: weights must be non-negative");
    if (abs(w.sum() - Scalar(1)) > Scalar(kNormTolerance))
      throw std::invalid_argument("BellDiagonal: weights must sum to 1");
    return BellDiagonal(w);
  }

  static BellDiagonal psi_plus() { return BellDiagonal(); }

  /// p |psi+><psi+| + (1 - p) |psi-><psi-|
  static BellDiagonal rank_two(Scalar p) {
    if (!(p >= Scalar(0) && p <= Scalar(1))) throw std::invalid_argument("BellDiagonal: p must lie in [0, 1]");
    Weights w;
    w << p, Scalar(1) - p, Scalar(0), Scalar(0);
    return BellDiagonal(w);
  }

  const Weights& weights() const { return w_; }
  Scalar weight(int index) const { return w_(index); }
  Scalar fidelity() const { return w_(kPsiPlus); }

 private:
  explicit BellDiagonal(const Weights& w) : w_(w) {}

  Weights w_;
};

using BellDiagonalState = BellDiagonal<double>;

/// Phase-flips each memory for time t; psi+ <-> psi- and phi+ <-> phi- mix
/// with weight p(t). Weight sums are preserved exactly.
template <typename Scalar>
BellDiagonal<Scalar> dephase(const BellDiagonal<Scalar>& state, Scalar t, Scalar tau_c) {
  const Scalar p = dephasing_fidelity(t, tau_c);
  const Scalar q = Scalar(1) - p;
  if (q == Scalar(0)) return state;
  const auto& w = state.weights();
  typename BellDiagonal<Scalar>::Weights out;
  out(0) = p * w(0) + q * w(1);
  out(1) = w(0) + w(1) - out(0);
  out(2) = p * w(2) + q * w(3);
  out(3) = w(2) + w(3) - out(2);
  return BellDiagonal<Scalar>::from_weights(out);
}

/// Ideal Bell measurement on the inner qubits of two pairs, with Pauli
/// feed-forward so that psi+ (x) psi+ -> psi+.
template <typename Scalar>
BellDiagonal<Scalar> swap(const BellDiagonal<Scalar>& left, const BellDiagonal<Scalar>& right) {
  typename BellDiagonal<Scalar>::Weights out = BellDiagonal<Scalar>::Weights::Zero();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i ^ j) += left.weight(i) * right.weight(j);
  // renormalize against roundoff so long chains stay valid
  out /= out.sum();
  return BellDiagonal<Scalar>::from_weights(out);
}

/// Upper bound on the psi+ fidelity of a two-way purified pair with output
/// fidelity `f_pur` that then waits t for the classical reply. Never exceeds p(t).
template <typename Scalar>
Scalar purification_fidelity_cap(Scalar f_pur, Scalar t, Scalar tau_c) {
  if (!(f_pur >= Scalar(0) && f_pur <= Scalar(1)))
    throw std::invalid_argument("purification_fidelity_cap: f_pur must lie in [0, 1]");
  const Scalar p = dephasing_fidelity(t, tau_c);
  return p * f_pur + (Scalar(1) - p) * (Scalar(1) - f_pur);
}

}  // namespace repeater
