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

#include <cstdint>
#include <optional>

/// Topology, channel and timing primitives shared by the rate model,
/// optimizer and protocol simulator. All quantities are SI (m, s).
namespace repeater {

/// Fiber channel: signal speed, loss constant for the asymptotic formulas,
/// and the heralded-distribution success model P_S(l0) = a * 10^(-b * l0).
struct ChannelModel {
  double c = 2.0e8;                     // m/s
  double alpha = 1.0 / 50.0e3;          // 1/m, used by the closed-form optima only
  double ps_prefactor = 0.2;            // a
  double ps_exponent_per_m = 0.01e-3;   // b, decades per meter
  std::optional<double> ps_override;    // fixed P_S, ignores l0 when set

  void validate() const;

  bool operator==(const ChannelModel&) const = default;
};

/// Probability that one elementary-link attempt over `l0` meters succeeds.
double success_probability(const ChannelModel& channel, double l0);

/// A chain of 2^n elementary links of length L0 = L / 2^n, with a bank of
/// `memories` quantum memories at each end of every elementary link.
/// Informed Bell measurements are used up to nesting level m, blind ones above.
struct RepeaterConfig {
  double length = 1000.0e3;  // L, m
  int n = 3;
  int m = 3;
  std::int64_t memories = 1;  // N, per bank
  double p_m = 0.75;          // BSM success probability
  double tau_c = 5.0e-3;      // s, may be +inf for ideal memories
  ChannelModel channel{};

  void validate() const;

  double l0() const;
  double ps() const { return success_probability(channel, l0()); }
  /// N * 2^(n+1)
  double total_memories() const;

  bool operator==(const RepeaterConfig&) const = default;
};

/// Cycle time and classical-delay ladder of a repeater chain.
class TimingModel {
 public:
  explicit TimingModel(double t_ed) : t_ed_(t_ed) {}

  /// Elementary cycle L0 / c.
  double t_ed() const { return t_ed_; }
  /// T_k = 2^(k-1) * t_ed, k >= 1.
  double t(int k) const;

 private:
  double t_ed_;
};

TimingModel timing(const RepeaterConfig& config);

}  // namespace repeater
