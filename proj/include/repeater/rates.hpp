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

#include <string_view>

#include "repeater/core.hpp"
#include "repeater/measures.hpp"

namespace repeater {

/// Which memory-decay model the rate is evaluated under.
enum class RateVariant {
  Ideal,             // no dephasing
  NoPurification,    // decay accumulated over the whole nesting ladder
  WithPurification,  // perfect purification up to level m
  OneWayHashing,     // single hashing round at level m; always scored with E_D
};

std::string_view to_string(RateVariant variant);
/// Accepts "ideal", "nopur", "pur", "hashing" and the enumerator names.
RateVariant parse_variant(std::string_view text);

struct RateResult {
  double q = 0.0;                     // pairs / s per memory
  double effective_decay_time = 0.0;  // s
  double measure_value = 0.0;         // ebits / pair
  double r = 0.0;                     // ebits / s per memory
  RateVariant variant = RateVariant::Ideal;
  MeasureKind measure = MeasureKind::EntanglementCost;
};

/// Number of BSMs an end-to-end pair must survive: 2^(n-m+1) + m - 2, or 0 for n = 0.
double bsm_exponent(const RepeaterConfig& config);

/// Ideal-memory rate per memory, P_S P_M^(2^(n-m+1)+m-2) c / (2L).
double q_rate(const RepeaterConfig& config);

/// Expected end-to-end pairs per cycle with N memories per bank, N P_S P_M^(...).
double pairs_per_cycle(const RepeaterConfig& config);

/// t_m^(n) = T_(n+1) + (m-1) T_n. Requires n >= 1.
double decay_time_nopur(const RepeaterConfig& config);

/// T_m^(n) = max(T_ED, T_(m-1)). Requires n >= 1.
double decay_time_pur(const RepeaterConfig& config);

/// t_m^(m)/2 + T_m/2 with t_m^(m) taken at nesting level m. Requires n >= 1.
double decay_time_hashing(const RepeaterConfig& config);

/// Decay time used by `variant`; n = 0 collapses to T_ED for every non-ideal variant.
double effective_decay_time(const RepeaterConfig& config, RateVariant variant);

RateResult normalized_rate(const RepeaterConfig& config, RateVariant variant, MeasureKind measure);

}  // namespace repeater
