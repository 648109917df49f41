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

#include "repeater/core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace repeater {

void ChannelModel::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("channel: c must be positive");
  if (!(alpha > 0.0)) throw std::invalid_argument("channel: alpha must be positive");
  if (!(ps_prefactor > 0.0 && ps_prefactor <= 1.0))
    throw std::invalid_argument("channel: ps_prefactor must lie in (0, 1]");
  if (!(ps_exponent_per_m >= 0.0)) throw std::invalid_argument("channel: ps_exponent_per_m must be >= 0");
  if (ps_override && !(*ps_override > 0.0 && *ps_override <= 1.0))
    throw std::invalid_argument("channel: ps_override must lie in (0, 1]");
}

double success_probability(const ChannelModel& channel, double l0) {
  if (!(l0 > 0.0)) throw std::invalid_argument("success_probability: l0 must be positive");
  if (channel.ps_override) return *channel.ps_override;
  return channel.ps_prefactor * std::pow(10.0, -channel.ps_exponent_per_m * l0);
}

void RepeaterConfig::validate() const {
  channel.validate();
  if (!(length > 0.0) || !std::isfinite(length)) throw std::invalid_argument("config: L must be positive");
  if (n < 0 || n > 40) throw std::invalid_argument("config: n must lie in [0, 40]");
  const int m_max = n > 0 ? n : 1;
  if (m < 1 || m > m_max)
    throw std::invalid_argument("config: m must lie in [1, " + std::to_string(m_max) + "]");
  if (memories < 1) throw std::invalid_argument("config: N must be >= 1");
  if (!(p_m > 0.0 && p_m <= 1.0)) throw std::invalid_argument("config: P_M must lie in (0, 1]");
  if (!(tau_c > 0.0)) throw std::invalid_argument("config: tau_c must be positive");
}

double RepeaterConfig::l0() const { return std::ldexp(length, -n); }

double RepeaterConfig::total_memories() const {
  return static_cast<double>(memories) * std::ldexp(1.0, n + 1);
}

double TimingModel::t(int k) const {
  if (k < 1) throw std::invalid_argument("TimingModel::t: k must be >= 1");
  return std::ldexp(t_ed_, k - 1);
}

TimingModel timing(const RepeaterConfig& config) {
  config.validate();
  return TimingModel(config.l0() / config.channel.c);
}

}  // namespace repeater
