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

#include <gtest/gtest.h>

using namespace repeater;

TEST(success_probability, default_loss_model) {
  ChannelModel ch;
  EXPECT_NEAR(success_probability(ch, 50.0e3), 0.06324555320336758664, 1e-15);
  EXPECT_NEAR(success_probability(ch, 100.0e3), 0.02, 1e-15);
  EXPECT_NEAR(success_probability(ch, 1e-9), 0.2, 1e-12);
}

TEST(success_probability, override_ignores_length) {
  ChannelModel ch;
  ch.ps_override = 0.37;
  EXPECT_EQ(success_probability(ch, 1.0), 0.37);
  EXPECT_EQ(success_probability(ch, 1.0e7), 0.37);
}

TEST(success_probability, strictly_decreasing) {
  ChannelModel ch;
  double prev = success_probability(ch, 1.0);
  for (double l0 = 1.0e3; l0 <= 500.0e3; l0 += 1.0e3) {
    const double p = success_probability(ch, l0);
    ASSERT_LT(p, prev) << l0;
    ASSERT_GT(p, 0.0);
    prev = p;
  }
}

TEST(success_probability, rejects_non_positive_length) {
  ChannelModel ch;
  EXPECT_THROW(success_probability(ch, 0.0), std::invalid_argument);
  EXPECT_THROW(success_probability(ch, -5.0), std::invalid_argument);
}

TEST(timing, single_link_one_thousand_km) {
  RepeaterConfig rc;
  rc.length = 1000.0e3;
  rc.n = 0;
  rc.m = 1;
  EXPECT_DOUBLE_EQ(timing(rc).t_ed(), 5.0e-3);
}

TEST(timing, nested_sixteen_links) {
  RepeaterConfig rc;
  rc.length = 1000.0e3;
  rc.n = 4;
  rc.m = 2;
  EXPECT_DOUBLE_EQ(timing(rc).t_ed(), 0.3125e-3);
}

TEST(timing, ladder_doubles_and_ends_at_link_delay) {
  for (int n = 0; n <= 12; ++n) {
    RepeaterConfig rc;
    rc.length = 777.0e3;
    rc.n = n;
    rc.m = 1;
    const TimingModel tm = timing(rc);
    for (int k = 1; k <= n; ++k) EXPECT_EQ(tm.t(k + 1), 2.0 * tm.t(k));
    EXPECT_DOUBLE_EQ(tm.t(n + 1), rc.length / rc.channel.c);
  }
  TimingModel tm(1.5);
  EXPECT_EQ(tm.t(1), 1.5);
  EXPECT_EQ(tm.t(2), 3.0);
  EXPECT_EQ(tm.t(3), 6.0);
  EXPECT_THROW(tm.t(0), std::invalid_argument);
}

TEST(RepeaterConfig, validation) {
  RepeaterConfig rc;
  EXPECT_NO_THROW(rc.validate());
  EXPECT_EQ(rc.total_memories(), 16.0);

  RepeaterConfig bad = rc;
  bad.m = 4;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = rc;
  bad.m = 0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = rc;
  bad.length = 0.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = rc;
  bad.p_m = 0.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = rc;
  bad.tau_c = 0.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = rc;
  bad.memories = 0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = rc;
  bad.channel.ps_override = 1.5;
  EXPECT_THROW(bad.validate(), std::invalid_argument);

  RepeaterConfig single = rc;
  single.n = 0;
  single.m = 1;
  EXPECT_NO_THROW(single.validate());
  single.tau_c = std::numeric_limits<double>::infinity();
  EXPECT_NO_THROW(single.validate());
}
