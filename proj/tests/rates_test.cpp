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
#include <limits>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

using namespace repeater;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// L0 = 200 km gives t_ed = 1 ms at c = 2e8 m/s.
RepeaterConfig one_ms_links(int n, int m) {
  RepeaterConfig rc;
  rc.n = n;
  rc.m = m;
  rc.length = std::ldexp(200.0e3, n);
  return rc;
}

RepeaterConfig random_config(std::mt19937_64& rng) {
  // kept inside the range where every rate is a normal double
  std::uniform_int_distribution<int> nd(1, 8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RepeaterConfig rc;
  rc.n = nd(rng);
  rc.m = std::uniform_int_distribution<int>(1, rc.n)(rng);
  rc.length = std::ldexp(std::exp(std::log(5.0e3) + u(rng) * std::log(40.0)), rc.n);
  rc.p_m = 0.5 + 0.5 * u(rng);
  rc.tau_c = std::exp(std::log(1e-5) + u(rng) * std::log(1e6));
  return rc;
}

}  // namespace

TEST(q_rate, lossless_limit) {
  RepeaterConfig rc;
  rc.channel.ps_override = 1.0;
  rc.p_m = 1.0;
  for (int n = 0; n <= 6; ++n) {
    rc.n = n;
    for (int m = 1; m <= std::max(n, 1); ++m) {
      rc.m = m;
      EXPECT_DOUBLE_EQ(q_rate(rc), rc.channel.c / (2.0 * rc.length));
    }
  }
}

TEST(q_rate, full_nesting_scales_as_pm_to_the_n) {
  RepeaterConfig rc;
  rc.channel.ps_override = 0.3;
  rc.p_m = 0.6;
  for (int n = 1; n <= 10; ++n) {
    rc.n = rc.m = n;
    EXPECT_DOUBLE_EQ(q_rate(rc), 0.3 * std::pow(0.6, n) * rc.channel.c / (2.0 * rc.length));
  }
}

TEST(q_rate, worked_example) {
  RepeaterConfig rc;
  rc.length = 1000.0e3;  // L/c = 5 ms
  rc.n = rc.m = 2;
  rc.p_m = 0.5;
  rc.channel.ps_override = 0.1;
  EXPECT_NEAR(q_rate(rc), 2.5, 1e-13);
}

TEST(q_rate, single_link_baseline) {
  RepeaterConfig rc;
  rc.n = 0;
  rc.m = 1;
  rc.length = 100.0e3;
  EXPECT_DOUBLE_EQ(q_rate(rc), 0.02 * rc.channel.c / (2.0 * rc.length));
  EXPECT_EQ(bsm_exponent(rc), 0.0);
}

TEST(q_rate, rejects_invalid_m) {
  RepeaterConfig rc;
  rc.n = 2;
  rc.m = 3;
  EXPECT_THROW(q_rate(rc), std::invalid_argument);
}

TEST(pairs_per_cycle, values_and_identity) {
  RepeaterConfig rc;
  rc.channel.ps_override = 1.0;
  rc.p_m = 1.0;
  rc.memories = 1;
  EXPECT_EQ(pairs_per_cycle(rc), 1.0);

  rc.memories = 100;
  rc.n = rc.m = 1;
  rc.channel.ps_override = 0.1;
  rc.p_m = 0.5;
  EXPECT_NEAR(pairs_per_cycle(rc), 5.0, 1e-13);

  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    RepeaterConfig r = random_config(rng);
    r.memories = 1 + static_cast<std::int64_t>(rng() % 1000);
    const double t_ed = timing(r).t_ed();
    EXPECT_NEAR(pairs_per_cycle(r) / (q_rate(r) * t_ed * r.total_memories()), 1.0, 1e-12);
  }
}

TEST(decay_time_nopur, values) {
  for (int n = 1; n <= 8; ++n) {
    const RepeaterConfig rc = one_ms_links(n, 1);
    EXPECT_DOUBLE_EQ(decay_time_nopur(rc), rc.length / rc.channel.c);
  }
  EXPECT_DOUBLE_EQ(decay_time_nopur(one_ms_links(2, 2)), 6.0e-3);
  EXPECT_DOUBLE_EQ(decay_time_nopur(one_ms_links(1, 1)), 2.0e-3);
  RepeaterConfig single = one_ms_links(0, 1);
  EXPECT_THROW(decay_time_nopur(single), std::invalid_argument);
}

TEST(decay_time_pur, values) {
  EXPECT_DOUBLE_EQ(decay_time_pur(one_ms_links(5, 1)), 1.0e-3);
  EXPECT_DOUBLE_EQ(decay_time_pur(one_ms_links(5, 2)), 1.0e-3);
  EXPECT_DOUBLE_EQ(decay_time_pur(one_ms_links(5, 4)), 4.0e-3);
  EXPECT_DOUBLE_EQ(decay_time_pur(one_ms_links(5, 5)), 8.0e-3);
}

TEST(decay_time_hashing, values) {
  // t_2^(2) = T_3 + T_2 = 6 ms, T_2 = 2 ms
  EXPECT_DOUBLE_EQ(decay_time_hashing(one_ms_links(3, 2)), 4.0e-3);
  // m = 1: t_1^(1) = T_2 = 2 ms, T_1 = 1 ms
  EXPECT_DOUBLE_EQ(decay_time_hashing(one_ms_links(6, 1)), 1.5e-3);
}

TEST(normalized_rate, no_dephasing_gives_q) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    RepeaterConfig rc = random_config(rng);
    rc.tau_c = kInf;
    for (auto v : {RateVariant::Ideal, RateVariant::NoPurification, RateVariant::WithPurification,
                   RateVariant::OneWayHashing}) {
      for (auto mk : {MeasureKind::EntanglementCost, MeasureKind::DistillableEntanglement}) {
        const RateResult r = normalized_rate(rc, v, mk);
        EXPECT_EQ(r.measure_value, 1.0);
        EXPECT_EQ(r.r, r.q);
      }
    }
  }
}

TEST(normalized_rate, chained_no_purification_example) {
  RepeaterConfig rc = one_ms_links(2, 1);
  rc.tau_c = 1.0e-3;
  rc.channel.ps_override = 1.0;
  rc.p_m = 1.0;
  const RateResult r = normalized_rate(rc, RateVariant::NoPurification, MeasureKind::EntanglementCost);
  EXPECT_DOUBLE_EQ(r.effective_decay_time, 4.0e-3);
  EXPECT_NEAR(r.measure_value, 0.0012567546055935177666, 1e-15);
  EXPECT_NEAR(r.r, 125.0 * 0.0012567546055935177666, 1e-12);
}

TEST(normalized_rate, hashing_always_scores_with_distillable_entanglement) {
  RepeaterConfig rc = one_ms_links(4, 2);
  rc.tau_c = 3.0e-3;
  const RateResult r = normalized_rate(rc, RateVariant::OneWayHashing, MeasureKind::EntanglementCost);
  EXPECT_EQ(r.measure, MeasureKind::DistillableEntanglement);
  EXPECT_DOUBLE_EQ(r.measure_value, distillable_entanglement_from_coherence(std::exp(-r.effective_decay_time / 3.0e-3)));
}

TEST(normalized_rate, single_link_collapses_to_cycle_time) {
  RepeaterConfig rc;
  rc.n = 0;
  rc.m = 1;
  rc.tau_c = 2.0e-3;
  const double t_ed = timing(rc).t_ed();
  for (auto v : {RateVariant::NoPurification, RateVariant::WithPurification, RateVariant::OneWayHashing}) {
    EXPECT_EQ(normalized_rate(rc, v, MeasureKind::EntanglementCost).effective_decay_time, t_ed);
  }
  EXPECT_EQ(normalized_rate(rc, RateVariant::Ideal, MeasureKind::EntanglementCost).effective_decay_time, 0.0);
}

TEST(rates, monotone_in_m) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 300; ++i) {
    RepeaterConfig rc = random_config(rng);
    if (rc.n < 2) continue;
    rc.p_m = std::min(rc.p_m, 0.99);
    for (int m = 1; m < rc.n; ++m) {
      RepeaterConfig lo = rc, hi = rc;
      lo.m = m;
      hi.m = m + 1;
      EXPECT_LT(q_rate(lo), q_rate(hi));
      const double e_lo = normalized_rate(lo, RateVariant::WithPurification, MeasureKind::EntanglementCost).measure_value;
      const double e_hi = normalized_rate(hi, RateVariant::WithPurification, MeasureKind::EntanglementCost).measure_value;
      EXPECT_GE(e_lo, e_hi);
    }
  }
}

TEST(rates, ordering_properties) {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 1000; ++i) {
    const RepeaterConfig rc = random_config(rng);
    for (auto mk : {MeasureKind::EntanglementCost, MeasureKind::DistillableEntanglement}) {
      const auto nopur = normalized_rate(rc, RateVariant::NoPurification, mk);
      const auto pur = normalized_rate(rc, RateVariant::WithPurification, mk);
      const auto hash = normalized_rate(rc, RateVariant::OneWayHashing, mk);
      EXPECT_LE(nopur.r, pur.r);
      for (const auto& r : {nopur, pur, hash}) {
        EXPECT_LE(r.r, r.q);
        EXPECT_GE(r.r, 0.0);
      }
      if (rc.n >= 2) {
        RepeaterConfig one = rc, two = rc;
        one.m = 1;
        two.m = 2;
        EXPECT_LE(normalized_rate(one, RateVariant::WithPurification, mk).r,
                  normalized_rate(two, RateVariant::WithPurification, mk).r);
      }
    }
  }
}

TEST(rates, variant_names) {
  for (auto v : {RateVariant::Ideal, RateVariant::NoPurification, RateVariant::WithPurification,
                 RateVariant::OneWayHashing})
    EXPECT_EQ(parse_variant(to_string(v)), v);
  EXPECT_THROW(parse_variant("twoway"), std::invalid_argument);
}
