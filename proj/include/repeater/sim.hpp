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

// Cycle-accurate Monte-Carlo model of the m-th order partial nesting
// protocol with finite memory banks.
//
// Time advances in whole T_ED cycles. The memories that start an attempt in
// cycle c form cohort c; the cohort learns its heralds at c + 1, its level-k
// informed BSMs run at c + 2^(k-1) (time T_k), and the last informed level m
// runs together with every blind BSM above it and the end-node measurements
// at c + 2^(m-1). Pairs are matched within a cohort, lowest memory index
// first; memories left unmatched are released at once so that every
// delivered pair has followed the minimal timing ladder.

#include <cstdint>
#include <deque>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "repeater/core.hpp"
#include "repeater/measures.hpp"

namespace repeater {

struct SimConfig {
  RepeaterConfig repeater{};
  std::int64_t cycles = 100000;  // total simulated cycles, warmup included
  std::int64_t warmup_cycles = 0;
  std::uint64_t seed = 1;
  bool track_ages = true;
  MeasureKind measure = MeasureKind::EntanglementCost;  // scores delivered pairs

  void validate() const;

  bool operator==(const SimConfig&) const = default;
};

/// Warmup that lets the first cohort clear the whole ladder: 2^(m-1) + 1 cycles.
std::int64_t default_warmup(const RepeaterConfig& config);

/// A group of identical entangled pairs belonging to one cohort, spanning a
/// D_level link between banks `left_node` and `right_node`.
struct PairRecord {
  int level = 0;
  std::int64_t created_cycle = 0;
  std::int64_t count = 0;
  std::int64_t decay_cycles = 0;  // pair dephasing time, in T_ED units, as of `as_of_cycle`
  std::int64_t as_of_cycle = 0;
  std::int64_t known_cycle = 0;   // cycle at which both ends know the pair exists
  std::int64_t left_node = 0;
  std::int64_t right_node = 0;
  // memories at the outer banks waiting for the BSM result that formed this record
  std::int64_t pending_left = 0;
  std::int64_t pending_right = 0;

  double accumulated_decay(double t_ed) const { return static_cast<double>(decay_cycles) * t_ed; }
};

/// Memory counts of one bank; always sums to N.
struct BankOccupancy {
  std::int64_t free = 0;
  std::int64_t awaiting_outcome = 0;
  std::int64_t entangled = 0;
  std::int64_t awaiting_message = 0;

  std::int64_t total() const { return free + awaiting_outcome + entangled + awaiting_message; }
};

struct LevelCounters {
  int level = 0;
  std::int64_t attempts = 0;
  std::int64_t successes = 0;
  std::int64_t delay_cycles = -1;  // cohort age at which this level's BSMs ran; -1 if never
};

struct AgeBin {
  double age = 0.0;  // s
  std::int64_t count = 0;
};

struct SimStats {
  std::string prng;
  SimConfig config{};
  std::int64_t counted_cycles = 0;

  std::int64_t link_attempts = 0;
  std::int64_t link_successes = 0;
  std::vector<LevelCounters> levels;  // index k - 1 holds station level k

  std::int64_t delivered_pairs = 0;
  double measured_normalized_rate = 0.0;  // pairs / s per memory
  double normalized_rate_stderr = 0.0;
  double measured_ebit_rate = 0.0;  // ebits / s per memory
  double ebit_rate_stderr = 0.0;

  double mean_delivered_age = 0.0;  // s
  double min_delivered_age = 0.0;
  double max_delivered_age = 0.0;
  std::int64_t min_delivered_age_cycles = 0;
  std::int64_t max_delivered_age_cycles = 0;
  std::vector<AgeBin> age_histogram;
};

class Simulator {
 public:
  static constexpr const char* kPrngName = "std::mt19937_64";

  explicit Simulator(SimConfig config);

  /// Advances one T_ED cycle. Returns false once `cycles` have been simulated.
  bool step();
  void run();

  std::int64_t cycle() const { return now_; }
  std::span<const BankOccupancy> banks() const { return banks_; }
  SimStats stats() const;

 private:
  struct Cohort {
    std::int64_t created = 0;
    std::vector<std::int64_t> attempts;  // per elementary link
    std::vector<PairRecord> records;     // current level, ordered left to right
  };

  void process(Cohort& cohort);
  void herald(Cohort& cohort);
  void receive_messages(Cohort& cohort);
  void informed_level(Cohort& cohort, int k);
  void final_level(Cohort& cohort);
  void deliver(std::int64_t pairs, std::int64_t age_cycles);
  void start_attempts();

  void count_bsm(int level, std::int64_t attempts, std::int64_t successes, std::int64_t delay);
  std::int64_t binomial(std::int64_t trials, double p);
  bool counting() const { return now_ >= config_.warmup_cycles; }
  std::int64_t last_offset() const;

  SimConfig config_;
  double t_ed_ = 0.0;
  double ps_ = 0.0;
  std::int64_t now_ = 0;
  std::mt19937_64 rng_;
  std::vector<BankOccupancy> banks_;
  std::deque<Cohort> cohorts_;

  std::int64_t link_attempts_ = 0;
  std::int64_t link_successes_ = 0;
  std::vector<LevelCounters> levels_;
  std::int64_t delivered_ = 0;
  std::int64_t cycle_delivered_ = 0;
  double cycle_ebits_ = 0.0;
  double sum_delivered_ = 0.0;
  double sum_delivered_sq_ = 0.0;
  double sum_ebits_ = 0.0;
  double sum_ebits_sq_ = 0.0;
  double total_age_cycles_ = 0.0;
  std::int64_t min_age_ = -1;
  std::int64_t max_age_ = -1;
  std::map<std::int64_t, std::int64_t> ages_;
};

SimStats run(const SimConfig& config);

/// Measured versus analytic rates. The analytic reference is q_rate for raw
/// pairs and the no-purification rate for ebits, since the simulator never
/// purifies.
struct SimComparison {
  double analytic_pair_rate = 0.0;
  double measured_pair_rate = 0.0;
  double pair_rate_ratio = 0.0;
  double pair_rate_ratio_stderr = 0.0;
  double analytic_ebit_rate = 0.0;
  double measured_ebit_rate = 0.0;
  double ebit_rate_ratio = 0.0;
  double ebit_rate_ratio_stderr = 0.0;
  double analytic_decay_time = 0.0;
  /// pair_rate_ratio <= 1 + 3 stderr
  bool within_overestimate_bound = false;
};

SimComparison compare_to_analytic(const SimStats& stats, const RepeaterConfig& config);

}  // namespace repeater
