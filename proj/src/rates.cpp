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

#include "repeater/rates.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace repeater {
namespace {

void require_nested(const RepeaterConfig& config, const char* who) {
  config.validate();
  if (config.n < 1) throw std::invalid_argument(std::string(who) + ": requires n >= 1");
}

}  // namespace

std::string_view to_string(RateVariant variant) {
  switch (variant) {
    case RateVariant::Ideal:
      return "ideal";
    case RateVariant::NoPurification:
      return "nopur";
    case RateVariant::WithPurification:
      return "pur";
    case RateVariant::OneWayHashing:
      return "hashing";
  }
  return "?";
}

RateVariant parse_variant(std::string_view text) {
  if (text == "ideal" || text == "Ideal") return RateVariant::Ideal;
  if (text == "nopur" || text == "NoPurification") return RateVariant::NoPurification;
  if (text == "pur" || text == "WithPurification") return RateVariant::WithPurification;
  if (text == "hashing" || text == "OneWayHashing") return RateVariant::OneWayHashing;
  throw std::invalid_argument("unknown variant '" + std::string(text) + "' (expected ideal, nopur, pur or hashing)");
}

double bsm_exponent(const RepeaterConfig& config) {
  config.validate();
  if (config.n == 0) return 0.0;
  return std::ldexp(1.0, config.n - config.m + 1) + config.m - 2;
}

double q_rate(const RepeaterConfig& config) {
  const double e = bsm_exponent(config);
  return config.ps() * std::pow(config.p_m, e) * config.channel.c / (2.0 * config.length);
}

double pairs_per_cycle(const RepeaterConfig& config) {
  const double e = bsm_exponent(config);
  return static_cast<double>(config.memories) * config.ps() * std::pow(config.p_m, e);
}

double decay_time_nopur(const RepeaterConfig& config) {
  require_nested(config, "decay_time_nopur");
  const TimingModel tm = timing(config);
  return tm.t(config.n + 1) + (config.m - 1) * tm.t(config.n);
}

double decay_time_pur(const RepeaterConfig& config) {
  require_nested(config, "decay_time_pur");
  const TimingModel tm = timing(config);
  return config.m <= 2 ? tm.t_ed() : tm.t(config.m - 1);
}

double decay_time_hashing(const RepeaterConfig& config) {
  require_nested(config, "decay_time_hashing");
  const TimingModel tm = timing(config);
  const int m = config.m;
  const double t_mm = tm.t(m + 1) + (m - 1) * tm.t(m);
  return 0.5 * t_mm + 0.5 * tm.t(m);
}

double effective_decay_time(const RepeaterConfig& config, RateVariant variant) {
  config.validate();
  if (variant == RateVariant::Ideal) return 0.0;
  if (config.n == 0) return timing(config).t_ed();
  switch (variant) {
    case RateVariant::NoPurification:
      return decay_time_nopur(config);
    case RateVariant::WithPurification:
      return decay_time_pur(config);
    case RateVariant::OneWayHashing:
      return decay_time_hashing(config);
    case RateVariant::Ideal:
      break;
  }
  throw std::invalid_argument("effective_decay_time: unknown variant");
}

RateResult normalized_rate(const RepeaterConfig& config, RateVariant variant, MeasureKind measure) {
  RateResult out;
  out.variant = variant;
  out.measure = variant == RateVariant::OneWayHashing ? MeasureKind::DistillableEntanglement : measure;
  out.q = q_rate(config);
  out.effective_decay_time = effective_decay_time(config, variant);
  out.measure_value = measure_from_coherence(out.measure, coherence_after(out.effective_decay_time, config.tau_c));
  out.r = out.q * out.measure_value;
  return out;
}

}  // namespace repeater
