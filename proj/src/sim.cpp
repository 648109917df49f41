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

#include "repeater/sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "repeater/rates.hpp"

namespace repeater {
namespace {

constexpr int kMaxNesting = 20;
constexpr double kMaxMemories = 1099511627776.0;  // 2^40
constexpr std::int64_t kMaxCohortSlots = std::int64_t{1} << 26;

std::int64_t pow2(int k) { return std::int64_t{1} << k; }

// Banks are numbered 0 .. 2^(n+1) - 1 from end node X to end node Y. Elementary
// link j joins banks 2j and 2j + 1; station s owns banks 2s - 1 and 2s.

// Station s sits in S^(k) with k - 1 = number of trailing zero bits of s.
int station_level(std::int64_t station) { return std::countr_zero(static_cast<std::uint64_t>(station)) + 1; }

void advance(PairRecord& record, std::int64_t now) {
  record.decay_cycles += now - record.as_of_cycle;
  record.as_of_cycle = now;
}

}  // namespace

void SimConfig::validate() const {
  repeater.validate();
  if (warmup_cycles < 0) throw std::invalid_argument("sim: warmup_cycles must be >= 0");
  if (cycles <= warmup_cycles) throw std::invalid_argument("sim: cycles must exceed warmup_cycles");
  if (repeater.n > kMaxNesting)
    throw std::invalid_argument("sim: n = " + std::to_string(repeater.n) + " exceeds the bank index capacity (n <= " +
                                std::to_string(kMaxNesting) + ")");
  if (repeater.total_memories() > kMaxMemories)
    throw std::invalid_argument("sim: N * 2^(n+1) exceeds the memory index capacity (2^40)");
  if (pow2(repeater.n) * pow2(repeater.m - 1) > kMaxCohortSlots)
    throw std::invalid_argument("sim: 2^n * 2^(m-1) in-flight link slots exceed the cohort capacity (2^26)");
}

std::int64_t default_warmup(const RepeaterConfig& config) { return pow2(config.m - 1) + 1; }

Simulator::Simulator(SimConfig config) : config_(std::move(config)) {
  config_.validate();
  const RepeaterConfig& rc = config_.repeater;
  t_ed_ = timing(rc).t_ed();
  ps_ = rc.ps();
  rng_.seed(config_.seed);
  banks_.assign(static_cast<std::size_t>(pow2(rc.n + 1)), BankOccupancy{rc.memories, 0, 0, 0});
  levels_.resize(static_cast<std::size_t>(rc.n));
  for (int k = 1; k <= rc.n; ++k) levels_[static_cast<std::size_t>(k - 1)].level = k;
}

std::int64_t Simulator::last_offset() const {
  return config_.repeater.n == 0 ? 1 : pow2(config_.repeater.m - 1);
}

bool Simulator::step() {
  if (now_ >= config_.cycles) return false;
  cycle_delivered_ = 0;
  cycle_ebits_ = 0.0;

  // oldest cohort first
  for (Cohort& cohort : cohorts_) process(cohort);
  while (!cohorts_.empty() && now_ - cohorts_.front().created >= last_offset()) cohorts_.pop_front();

  start_attempts();

  if (counting()) {
    const auto d = static_cast<double>(cycle_delivered_);
    sum_delivered_ += d;
    sum_delivered_sq_ += d * d;
    sum_ebits_ += cycle_ebits_;
    sum_ebits_sq_ += cycle_ebits_ * cycle_ebits_;
  }
  ++now_;
  return true;
}

void Simulator::run() {
  while (step()) {
  }
}

void Simulator::start_attempts() {
  const std::int64_t links = pow2(config_.repeater.n);
  Cohort cohort;
  cohort.created = now_;
  cohort.attempts.resize(static_cast<std::size_t>(links));
  for (std::int64_t j = 0; j < links; ++j) {
    BankOccupancy& left = banks_[static_cast<std::size_t>(2 * j)];
    BankOccupancy& right = banks_[static_cast<std::size_t>(2 * j + 1)];
    const std::int64_t a = std::min(left.free, right.free);
    left.free -= a;
    right.free -= a;
    left.awaiting_outcome += a;
    right.awaiting_outcome += a;
    cohort.attempts[static_cast<std::size_t>(j)] = a;
    if (counting()) link_attempts_ += a;
  }
  cohorts_.push_back(std::move(cohort));
}

void Simulator::process(Cohort& cohort) {
  const std::int64_t offset = now_ - cohort.created;
  const RepeaterConfig& rc = config_.repeater;
  if (offset == 1) herald(cohort);
  if (rc.n == 0) {
    if (offset == 1) final_level(cohort);
    return;
  }
  for (int k = 1; k <= rc.m; ++k) {
    if (offset != pow2(k - 1)) continue;
    if (k >= 2) receive_messages(cohort);
    if (k < rc.m)
      informed_level(cohort, k);
    else
      final_level(cohort);
  }
}

void Simulator::herald(Cohort& cohort) {
  const auto links = static_cast<std::int64_t>(cohort.attempts.size());
  cohort.records.clear();
  cohort.records.reserve(static_cast<std::size_t>(links));
  for (std::int64_t j = 0; j < links; ++j) {
    const std::int64_t a = cohort.attempts[static_cast<std::size_t>(j)];
    const std::int64_t s = binomial(a, ps_);
    for (std::int64_t bank : {2 * j, 2 * j + 1}) {
      BankOccupancy& b = banks_[static_cast<std::size_t>(bank)];
      b.awaiting_outcome -= a;
      b.free += a - s;
      b.entangled += s;
    }
    if (counting()) link_successes_ += s;
    PairRecord record;
    record.level = 0;
    record.created_cycle = cohort.created;
    record.count = s;
    record.as_of_cycle = cohort.created;
    record.known_cycle = now_;
    record.left_node = 2 * j;
    record.right_node = 2 * j + 1;
    advance(record, now_);
    cohort.records.push_back(record);
  }
}

void Simulator::receive_messages(Cohort& cohort) {
  for (PairRecord& record : cohort.records) {
    if (record.known_cycle != now_) throw std::logic_error("sim: BSM result delivered off schedule");
    advance(record, now_);
    BankOccupancy& left = banks_[static_cast<std::size_t>(record.left_node)];
    BankOccupancy& right = banks_[static_cast<std::size_t>(record.right_node)];
    left.awaiting_message -= record.pending_left;
    left.free += record.pending_left - record.count;
    left.entangled += record.count;
    right.awaiting_message -= record.pending_right;
    right.free += record.pending_right - record.count;
    right.entangled += record.count;
    record.pending_left = 0;
    record.pending_right = 0;
  }
}

void Simulator::informed_level(Cohort& cohort, int k) {
  const double p_m = config_.repeater.p_m;
  std::vector<PairRecord> next;
  next.reserve(cohort.records.size() / 2);
  for (std::size_t q = 0; q + 1 < cohort.records.size(); q += 2) {
    PairRecord& a = cohort.records[q];
    PairRecord& b = cohort.records[q + 1];
    if (a.known_cycle > now_ || b.known_cycle > now_)
      throw std::logic_error("sim: informed BSM scheduled before its inputs were confirmed");
    advance(a, now_);
    advance(b, now_);
    const std::int64_t matched = std::min(a.count, b.count);
    const std::int64_t succ = binomial(matched, p_m);
    count_bsm(k, matched, succ, now_ - cohort.created);

    // station memories are measured or dropped now
    BankOccupancy& station_left = banks_[static_cast<std::size_t>(a.right_node)];
    BankOccupancy& station_right = banks_[static_cast<std::size_t>(b.left_node)];
    station_left.entangled -= a.count;
    station_left.free += a.count;
    station_right.entangled -= b.count;
    station_right.free += b.count;
    // outer memories wait T_k for the outcome
    BankOccupancy& outer_left = banks_[static_cast<std::size_t>(a.left_node)];
    BankOccupancy& outer_right = banks_[static_cast<std::size_t>(b.right_node)];
    outer_left.entangled -= a.count;
    outer_left.awaiting_message += a.count;
    outer_right.entangled -= b.count;
    outer_right.awaiting_message += b.count;

    PairRecord merged;
    merged.level = k;
    merged.created_cycle = cohort.created;
    merged.count = succ;
    merged.decay_cycles = a.decay_cycles + b.decay_cycles;
    merged.as_of_cycle = now_;
    merged.known_cycle = now_ + pow2(k - 1);
    merged.left_node = a.left_node;
    merged.right_node = b.right_node;
    merged.pending_left = a.count;
    merged.pending_right = b.count;
    next.push_back(merged);
  }
  cohort.records = std::move(next);
}

void Simulator::final_level(Cohort& cohort) {
  std::vector<PairRecord>& recs = cohort.records;
  const std::int64_t delay = now_ - cohort.created;
  std::int64_t chains = recs.front().count;
  std::int64_t age = 0;
  for (PairRecord& r : recs) {
    if (r.known_cycle > now_) throw std::logic_error("sim: BSM scheduled before its inputs were confirmed");
    advance(r, now_);
    chains = std::min(chains, r.count);
    age += r.decay_cycles;
  }

  std::int64_t delivered = chains;
  if (recs.size() > 1) {
    const int m = config_.repeater.m;
    const double p_m = config_.repeater.p_m;
    const std::size_t stations = recs.size() - 1;
    std::vector<std::int64_t> succ(stations, 0);
    // chain r runs through the r-th pair of every segment
    if (p_m < 1.0) {
      std::uniform_real_distribution<double> uniform(0.0, 1.0);
      delivered = 0;
      for (std::int64_t r = 0; r < chains; ++r) {
        bool intact = true;
        for (std::size_t i = 0; i < stations; ++i) {
          const bool ok = uniform(rng_) < p_m;
          succ[i] += ok ? 1 : 0;
          intact = intact && ok;
        }
        delivered += intact ? 1 : 0;
      }
    } else {
      std::fill(succ.begin(), succ.end(), chains);
    }
    for (std::size_t i = 0; i < stations; ++i) {
      const std::int64_t matched = std::min(recs[i].count, recs[i + 1].count);
      succ[i] += binomial(matched - chains, p_m);
      const std::int64_t station = static_cast<std::int64_t>(i + 1) * pow2(m - 1);
      count_bsm(station_level(station), matched, succ[i], delay);
    }
  }

  // everything left in the cohort is measured or dropped now
  for (PairRecord& r : recs) {
    for (std::int64_t bank : {r.left_node, r.right_node}) {
      BankOccupancy& b = banks_[static_cast<std::size_t>(bank)];
      b.entangled -= r.count;
      b.free += r.count;
    }
    r.count = 0;
  }
  deliver(delivered, age);
}

void Simulator::deliver(std::int64_t pairs, std::int64_t age_cycles) {
  if (!counting() || pairs == 0) return;
  delivered_ += pairs;
  cycle_delivered_ += pairs;
  const double age = static_cast<double>(age_cycles) * t_ed_;
  cycle_ebits_ += static_cast<double>(pairs) *
                  measure_from_coherence(config_.measure, coherence_after(age, config_.repeater.tau_c));
  total_age_cycles_ += static_cast<double>(pairs) * static_cast<double>(age_cycles);
  min_age_ = min_age_ < 0 ? age_cycles : std::min(min_age_, age_cycles);
  max_age_ = std::max(max_age_, age_cycles);
  if (config_.track_ages) ages_[age_cycles] += pairs;
}

void Simulator::count_bsm(int level, std::int64_t attempts, std::int64_t successes, std::int64_t delay) {
  LevelCounters& c = levels_[static_cast<std::size_t>(level - 1)];
  c.delay_cycles = delay;
  if (!counting()) return;
  c.attempts += attempts;
  c.successes += successes;
}

std::int64_t Simulator::binomial(std::int64_t trials, double p) {
  if (trials <= 0) return 0;
  if (p >= 1.0) return trials;
  return std::binomial_distribution<std::int64_t>(trials, p)(rng_);
}

SimStats Simulator::stats() const {
  SimStats s;
  s.prng = kPrngName;
  s.config = config_;
  s.counted_cycles = std::max<std::int64_t>(0, std::min(now_, config_.cycles) - config_.warmup_cycles);
  s.link_attempts = link_attempts_;
  s.link_successes = link_successes_;
  s.levels = levels_;
  s.delivered_pairs = delivered_;
  if (s.counted_cycles > 0) {
    const auto cycles = static_cast<double>(s.counted_cycles);
    const double per_memory_time = cycles * t_ed_ * config_.repeater.total_memories();
    s.measured_normalized_rate = static_cast<double>(delivered_) / per_memory_time;
    s.measured_ebit_rate = sum_ebits_ / per_memory_time;
    // standard error of the per-cycle mean, scaled like the rate
    const auto stderr_of = [cycles](double sum, double sum_sq) {
      if (cycles < 2) return 0.0;
      const double mean = sum / cycles;
      const double var = std::max(0.0, (sum_sq - cycles * mean * mean) / (cycles - 1.0));
      return std::sqrt(var / cycles);
    };
    const double per_cycle_scale = cycles / per_memory_time;
    s.normalized_rate_stderr = stderr_of(sum_delivered_, sum_delivered_sq_) * per_cycle_scale;
    s.ebit_rate_stderr = stderr_of(sum_ebits_, sum_ebits_sq_) * per_cycle_scale;
  }
  if (delivered_ > 0) {
    s.mean_delivered_age = total_age_cycles_ / static_cast<double>(delivered_) * t_ed_;
    s.min_delivered_age_cycles = min_age_;
    s.max_delivered_age_cycles = max_age_;
    s.min_delivered_age = static_cast<double>(min_age_) * t_ed_;
    s.max_delivered_age = static_cast<double>(max_age_) * t_ed_;
  }
  for (const auto& [age, count] : ages_) s.age_histogram.push_back({static_cast<double>(age) * t_ed_, count});
  return s;
}

SimStats run(const SimConfig& config) {
  Simulator sim(config);
  sim.run();
  return sim.stats();
}

SimComparison compare_to_analytic(const SimStats& stats, const RepeaterConfig& config) {
  if (!(stats.config.repeater == config))
    throw std::invalid_argument("compare_to_analytic: statistics were produced from a different configuration");
  SimComparison out;
  out.analytic_pair_rate = q_rate(config);
  out.measured_pair_rate = stats.measured_normalized_rate;
  out.pair_rate_ratio = out.measured_pair_rate / out.analytic_pair_rate;
  out.pair_rate_ratio_stderr = stats.normalized_rate_stderr / out.analytic_pair_rate;
  const RateResult ebit = normalized_rate(config, RateVariant::NoPurification, stats.config.measure);
  out.analytic_decay_time = ebit.effective_decay_time;
  out.analytic_ebit_rate = ebit.r;
  out.measured_ebit_rate = stats.measured_ebit_rate;
  if (ebit.r > 0.0) {
    out.ebit_rate_ratio = out.measured_ebit_rate / ebit.r;
    out.ebit_rate_ratio_stderr = stats.ebit_rate_stderr / ebit.r;
  }
  out.within_overestimate_bound = out.pair_rate_ratio <= 1.0 + 3.0 * out.pair_rate_ratio_stderr;
  return out;
}

}  // namespace repeater
