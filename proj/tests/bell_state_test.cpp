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

#include "repeater/bell_state.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "repeater/bell_state_oracle.hpp"

using namespace repeater;

namespace {

BellDiagonalState random_state(std::mt19937_64& rng) {
  std::exponential_distribution<double> exp1(1.0);
  BellDiagonalState::Weights w;
  for (int k = 0; k < 4; ++k) w(k) = exp1(rng);
  w /= w.sum();
  w(3) = 1.0 - w(0) - w(1) - w(2);
  return BellDiagonalState::from_weights(w);
}

void expect_weights_near(const BellDiagonalState& a, const BellDiagonalState& b, double tol) {
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(a.weight(k), b.weight(k), tol) << "component " << k;
}

}  // namespace

TEST(BellDiagonal, construction_checks) {
  BellDiagonalState::Weights w;
  w << 0.5, 0.5, 0.0, 0.0;
  EXPECT_NO_THROW(BellDiagonalState::from_weights(w));
  w << 0.5, 0.6, 0.0, -0.1;
  EXPECT_THROW(BellDiagonalState::from_weights(w), std::invalid_argument);
  w << 0.5, 0.4, 0.0, 0.0;
  EXPECT_THROW(BellDiagonalState::from_weights(w), std::invalid_argument);
  EXPECT_EQ(BellDiagonalState::psi_plus().fidelity(), 1.0);
}

TEST(dephase, psi_plus_becomes_rank_two) {
  const double tau = 2.0e-3;
  for (double t : {0.0, 1.0e-4, 2.0e-3, 7.0e-3}) {
    const auto s = dephase(BellDiagonalState::psi_plus(), t, tau);
    const double p = (1.0 + std::exp(-t / tau)) / 2.0;
    EXPECT_NEAR(s.weight(0), p, 1e-15);
    EXPECT_NEAR(s.weight(1), 1.0 - p, 1e-15);
    EXPECT_EQ(s.weight(2), 0.0);
    EXPECT_EQ(s.weight(3), 0.0);
  }
}

TEST(dephase, one_coherence_time) {
  const auto s = dephase(BellDiagonalState::psi_plus(), 1.0, 1.0);
  EXPECT_NEAR(s.fidelity(), 0.68393972058572116080, 1e-15);
}

TEST(dephase, zero_time_is_identity) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const auto s = random_state(rng);
    EXPECT_EQ(dephase(s, 0.0, 1.0).weights(), s.weights());
  }
}

TEST(dephase, semigroup_and_normalization) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> t(0.0, 3.0);
  for (int i = 0; i < 500; ++i) {
    const auto s = random_state(rng);
    const double t1 = t(rng), t2 = t(rng);
    const auto two_steps = dephase(dephase(s, t1, 1.3), t2, 1.3);
    const auto one_step = dephase(s, t1 + t2, 1.3);
    expect_weights_near(two_steps, one_step, 1e-12);
    EXPECT_NEAR(one_step.weights().sum(), 1.0, 1e-15);
  }
}

TEST(dephase, matches_single_qubit_channels) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 100; ++i) {
    const auto s = random_state(rng);
    const double t = 0.37 * i / 10.0;
    const auto dense = oracle::oracle_dephase_dense(oracle::DenseTwoQubitState<>::from_bell_diagonal(s), t, 0.9);
    expect_weights_near(dephase(s, t, 0.9), dense.to_bell_diagonal(), 1e-12);
  }
}

TEST(dephase, rejects_bad_arguments) {
  EXPECT_THROW(dephase(BellDiagonalState::psi_plus(), -1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(dephase(BellDiagonalState::psi_plus(), 1.0, 0.0), std::invalid_argument);
}

TEST(swap, psi_plus_is_identity) {
  const auto pp = BellDiagonalState::psi_plus();
  EXPECT_EQ(swap(pp, pp).fidelity(), 1.0);
  std::mt19937_64 rng(21);
  for (int i = 0; i < 200; ++i) {
    const auto s = random_state(rng);
    expect_weights_near(swap(s, pp), s, 1e-15);
    expect_weights_near(swap(pp, s), s, 1e-15);
  }
}

TEST(swap, decayed_pairs_add_their_times) {
  const double tau = 1.0;
  for (double t : {0.0, 0.1, 0.5, 1.0, 2.5, 6.0}) {
    const auto half = dephase(BellDiagonalState::psi_plus(), t, tau);
    const auto joined = swap(half, half);
    const double p = (1.0 + std::exp(-t / tau)) / 2.0;
    EXPECT_NEAR(joined.fidelity(), p * p + (1 - p) * (1 - p), 1e-15);
    EXPECT_NEAR(joined.fidelity(), (1.0 + std::exp(-2.0 * t / tau)) / 2.0, 1e-15);
  }
}

TEST(swap, frozen_example_from_dense_oracle) {
  BellDiagonalState::Weights a, b;
  a << 0.7, 0.1, 0.15, 0.05;
  b << 0.6, 0.2, 0.1, 0.1;
  // computed independently with a numpy four-qubit density matrix
  const auto s = swap(BellDiagonalState::from_weights(a), BellDiagonalState::from_weights(b));
  EXPECT_NEAR(s.weight(0), 0.46, 1e-12);
  EXPECT_NEAR(s.weight(1), 0.22, 1e-12);
  EXPECT_NEAR(s.weight(2), 0.18, 1e-12);
  EXPECT_NEAR(s.weight(3), 0.14, 1e-12);
}

TEST(swap, commutative_and_associative) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 300; ++i) {
    const auto a = random_state(rng), b = random_state(rng), c = random_state(rng);
    expect_weights_near(swap(a, b), swap(b, a), 1e-12);
    expect_weights_near(swap(swap(a, b), c), swap(a, swap(b, c)), 1e-12);
  }
}

TEST(oracle_swap, agrees_with_group_convolution) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 200; ++i) {
    const auto a = random_state(rng), b = random_state(rng);
    expect_weights_near(swap(a, b), oracle::oracle_swap(a, b), 1e-12);
  }
}

TEST(oracle_swap, dense_output_is_a_state) {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 50; ++i) {
    const auto a = oracle::DenseTwoQubitState<>::from_bell_diagonal(random_state(rng));
    const auto b = oracle::DenseTwoQubitState<>::from_bell_diagonal(random_state(rng));
    const auto out = oracle::oracle_swap_dense(a, b);
    EXPECT_NEAR(out.trace().real(), 1.0, 1e-12);
    EXPECT_NEAR(out.trace().imag(), 0.0, 1e-12);
    EXPECT_TRUE(out.is_hermitian());
    EXPECT_GE(out.min_eigenvalue(), -1e-10);
  }
}

TEST(oracle_swap, long_double_scalar) {
  using LD = BellDiagonal<long double>;
  LD::Weights a, b;
  a << 0.7L, 0.1L, 0.15L, 0.05L;
  b << 0.6L, 0.2L, 0.1L, 0.1L;
  const auto fast = swap(LD::from_weights(a), LD::from_weights(b));
  const auto slow = oracle::oracle_swap(LD::from_weights(a), LD::from_weights(b));
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(static_cast<double>(fast.weight(k) - slow.weight(k)), 0.0, 1e-15);
}

TEST(purification_fidelity_cap, values) {
  EXPECT_EQ(purification_fidelity_cap(1.0, 0.0, 1.0), 1.0);
  for (double t : {0.1, 1.0, 4.0}) EXPECT_EQ(purification_fidelity_cap(1.0, t, 1.0), dephasing_fidelity(t, 1.0));
  // p(t) = 0.8 when exp(-t/tau) = 0.6
  const double t = -std::log(0.6);
  EXPECT_NEAR(purification_fidelity_cap(0.9, t, 1.0), 0.74, 1e-15);
}

TEST(purification_fidelity_cap, bounded_by_decay) {
  for (int i = 0; i <= 100; ++i) {
    const double f = i / 100.0;
    for (double t : {0.0, 0.3, 1.0, 5.0}) {
      const double cap = purification_fidelity_cap(f, t, 1.0);
      const double p = dephasing_fidelity(t, 1.0);
      EXPECT_LE(cap, p);
      if (f < 1.0 && t < 30.0) EXPECT_LT(cap, p);
    }
  }
}

TEST(purification_fidelity_cap, rejects_out_of_range) {
  EXPECT_THROW(purification_fidelity_cap(1.1, 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(purification_fidelity_cap(-0.1, 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(purification_fidelity_cap(0.5, -1.0, 1.0), std::invalid_argument);
}
