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

#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <exception>
#include <fstream>
#include <limits>
#include <optional>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "repeater/core.hpp"
#include "repeater/measures.hpp"
#include "repeater/optimize.hpp"
#include "repeater/rates.hpp"
#include "repeater/sim.hpp"

namespace repeater::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr double kKm = 1.0e3;

double parse_number(std::string_view text, std::string_view what) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty())
    throw UsageError("invalid " + std::string(what) + ": '" + std::string(text) + "'");
  return value;
}

// Splits "12.5km" into ("12.5", "km").
std::pair<std::string_view, std::string_view> split_unit(std::string_view text) {
  std::size_t i = text.size();
  while (i > 0 && std::isalpha(static_cast<unsigned char>(text[i - 1]))) --i;
  return {text.substr(0, i), text.substr(i)};
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);  // shortest round-trip form
  return std::string(buf, res.ptr);
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

struct Options {
  std::string config_path;
  std::string length = "1000km";
  std::string tau = "5ms";
  std::optional<int> n;
  std::optional<int> m;
  std::int64_t memories = 1;
  double p_m = 0.75;
  std::optional<double> p_s;
  double c = 2.0e8;
  double atten_km = 50.0;
  double ps_prefactor = 0.2;
  double ps_decades_per_km = 0.01;
  std::string variant = "pur";
  std::string measure = "ec";
  std::uint64_t seed = 1;
  std::int64_t cycles = 100000;
  std::optional<std::int64_t> warmup;
  std::string param;
  std::string from;
  std::string to;
  int steps = 0;
  bool log = false;
  int n_max = kDefaultMaxNesting;
  std::string law = "exp";
};

void add_physics(CLI::App* app, Options& o) {
  app->add_option("--config", o.config_path, "JSON object of flag values; command-line flags take precedence");
  app->add_option("--L", o.length, "total distance, e.g. 1000km or 2.5e5m (bare numbers are km)")
      ->capture_default_str();
  app->add_option("--tauc", o.tau, "memory coherence time, e.g. 5ms, 0.1s, 100us or inf (bare numbers are ms)")
      ->capture_default_str();
  app->add_option("--pm", o.p_m, "Bell measurement success probability P_M")->capture_default_str();
  app->add_option("--ps", o.p_s, "fixed link success probability P_S, overrides the loss model");
  app->add_option("--c", o.c, "signal speed in the channel, m/s")->capture_default_str();
  app->add_option("--atten-km", o.atten_km, "attenuation length 1/alpha, km")->capture_default_str();
  app->add_option("--ps-prefactor", o.ps_prefactor, "loss model P_S = a * 10^(-b * L0[km]), a")
      ->capture_default_str();
  app->add_option("--ps-exp-per-km", o.ps_decades_per_km, "loss model exponent b, decades per km")
      ->capture_default_str();
  app->add_option("--variant", o.variant, "ideal | nopur | pur | hashing")->capture_default_str();
  app->add_option("--measure", o.measure, "ec | ed")->capture_default_str();
}

void add_nesting(CLI::App* app, Options& o) {
  app->add_option("--n", o.n, "nesting level, 2^n elementary links")->required();
  app->add_option("--m", o.m, "order of the partial nesting, 1 <= m <= n (defaults to 1 when n = 0)");
  app->add_option("--N", o.memories, "memories per bank")->capture_default_str();
}

Physics physics_of(const Options& o) {
  Physics p;
  p.p_m = o.p_m;
  p.tau_c = parse_time(o.tau);
  p.channel.c = o.c;
  p.channel.alpha = 1.0 / (o.atten_km * kKm);
  p.channel.ps_prefactor = o.ps_prefactor;
  p.channel.ps_exponent_per_m = o.ps_decades_per_km / kKm;
  p.channel.ps_override = o.p_s;
  return p;
}

RepeaterConfig repeater_of(const Options& o, double length, int n, int m) {
  RepeaterConfig rc = physics_of(o).at(length, n, m);
  rc.memories = o.memories;
  try {
    rc.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return rc;
}

RepeaterConfig repeater_of(const Options& o) {
  const int n = *o.n;
  int m = 1;
  if (o.m)
    m = *o.m;
  else if (n > 0)
    throw UsageError("--m is required when --n > 0");
  return repeater_of(o, parse_length(o.length), n, m);
}

Physics checked_physics(const Options& o, double length) {
  repeater_of(o, length, 1, 1);  // validates the shared physical parameters
  return physics_of(o);
}

RateVariant variant_of(const Options& o) {
  try {
    return parse_variant(o.variant);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

MeasureKind measure_of(const Options& o) {
  try {
    return parse_measure(o.measure);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

json channel_json(const ChannelModel& ch) {
  json j;
  j["c_m_per_s"] = ch.c;
  j["alpha_per_m"] = ch.alpha;
  j["ps_prefactor"] = ch.ps_prefactor;
  j["ps_decades_per_km"] = ch.ps_exponent_per_m * kKm;
  j["P_S_override"] = ch.ps_override ? json(*ch.ps_override) : json(nullptr);
  return j;
}

json physics_json(double length, const Physics& p) {
  json j;
  j["L_m"] = length;
  j["P_M"] = p.p_m;
  j["tau_c_s"] = number_or_null(p.tau_c);
  j["channel"] = channel_json(p.channel);
  return j;
}

json repeater_json(const RepeaterConfig& rc) {
  json j;
  j["L_m"] = rc.length;
  j["n"] = rc.n;
  j["m"] = rc.m;
  j["N"] = rc.memories;
  j["P_M"] = rc.p_m;
  j["tau_c_s"] = number_or_null(rc.tau_c);
  j["L0_m"] = rc.l0();
  j["P_S"] = rc.ps();
  j["t_ed_s"] = timing(rc).t_ed();
  j["channel"] = channel_json(rc.channel);
  return j;
}

json rate_json(const RateResult& r) {
  json j;
  j["variant"] = std::string(to_string(r.variant));
  j["measure"] = std::string(to_string(r.measure));
  j["q_pairs_per_s_per_memory"] = r.q;
  j["decay_time_s"] = r.effective_decay_time;
  j["measure_value_ebits_per_pair"] = r.measure_value;
  j["rate_ebits_per_s_per_memory"] = r.r;
  return j;
}

json asymptotics_json(double length, const Physics& p) {
  json j;
  try {
    const double l0 = asymptotic_l0_opt(p.p_m, p.channel.alpha);
    const double n_cont = std::log2(length / l0);
    j["l0_opt_m"] = l0;
    j["n_opt_continuous"] = n_cont;
    j["n_opt"] = std::lround(n_cont);
    if (std::isfinite(p.tau_c)) {
      const double m_cont = asymptotic_m_opt(length, p.p_m, p.tau_c, p.channel.c, p.channel.alpha);
      j["m_opt_continuous"] = m_cont;
      j["m_opt"] = std::lround(m_cont);
    } else {
      j["m_opt_continuous"] = nullptr;
      j["m_opt"] = nullptr;
    }
  } catch (const std::invalid_argument& e) {
    j = json{{"error", e.what()}};
  }
  return j;
}

void print_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

int cmd_rate(const Options& o, std::ostream& out) {
  const RepeaterConfig rc = repeater_of(o);
  const RateResult r = normalized_rate(rc, variant_of(o), measure_of(o));
  json j;
  j["command"] = "rate";
  j["config"] = repeater_json(rc);
  j["result"] = rate_json(r);
  j["result"]["pairs_per_cycle"] = pairs_per_cycle(rc);
  print_json(out, j);
  return kExitOk;
}

int cmd_optimize(const Options& o, std::ostream& out) {
  const double length = parse_length(o.length);
  const Physics p = checked_physics(o, length);
  const OptimizationResult opt = optimize(length, p, variant_of(o), measure_of(o), o.n_max);
  json j;
  j["command"] = "optimize";
  j["config"] = physics_json(length, p);
  j["config"]["n_max"] = o.n_max;
  json best = rate_json(opt.best);
  j["optimum"] = json{{"n_opt", opt.n_opt}, {"m_opt", opt.m_opt}, {"l0_opt_m", opt.l0_opt}};
  j["optimum"].update(best);
  j["asymptotics"] = asymptotics_json(length, p);
  json table = json::array();
  for (const GridPoint& g : opt.table) table.push_back({{"n", g.n}, {"m", g.m}, {"rate_ebits_per_s_per_memory", g.r}});
  j["table"] = std::move(table);
  print_json(out, j);
  return kExitOk;
}

int cmd_asymptotics(const Options& o, std::ostream& out, std::ostream& err) {
  const double length = parse_length(o.length);
  const Physics p = checked_physics(o, length);
  const json a = asymptotics_json(length, p);
  if (a.contains("error")) {
    err << "error: " << a["error"].get<std::string>() << '\n';
    return kExitRuntime;
  }
  json j;
  j["command"] = "asymptotics";
  j["config"] = physics_json(length, p);
  j["asymptotics"] = a;
  print_json(out, j);
  return kExitOk;
}

struct SweepRow {
  double param = 0.0;
  int n_opt = 0;
  int m_opt = 0;
  RateResult result{};
};

// Evaluates `f(i)` for i in [0, count) on a small thread pool; results keep index order.
template <typename F>
std::vector<SweepRow> parallel_rows(std::size_t count, F f) {
  std::vector<SweepRow> rows(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        rows[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const RateVariant variant = variant_of(o);
  const MeasureKind measure = measure_of(o);
  const double length = parse_length(o.length);
  const Physics base = checked_physics(o, length);

  std::vector<double> values;
  std::string param = o.param;
  if (param == "n") {
    if (o.log) throw UsageError("--log is not supported when sweeping n");
    const double from = parse_number(o.from, "--from"), to = parse_number(o.to, "--to");
    if (from != std::floor(from) || to != std::floor(to) || from < 0 || to < from || to > 40)
      throw UsageError("sweeping n needs integers 0 <= --from <= --to <= 40");
    for (int n = static_cast<int>(from); n <= static_cast<int>(to); ++n) values.push_back(n);
  } else {
    double from = 0.0, to = 0.0;
    if (param == "L") {
      from = parse_length(o.from);
      to = parse_length(o.to);
    } else if (param == "tau_c" || param == "tauc") {
      param = "tau_c";
      from = parse_time(o.from);
      to = parse_time(o.to);
    } else if (param == "P_M" || param == "pm") {
      param = "P_M";
      from = parse_number(o.from, "--from");
      to = parse_number(o.to, "--to");
    } else {
      throw UsageError("--param must be one of n, tau_c, L, P_M");
    }
    const int steps = o.steps > 0 ? o.steps : 20;
    if (!std::isfinite(from) || !std::isfinite(to)) throw UsageError("sweep endpoints must be finite");
    if (o.log && !(from > 0.0 && to > 0.0)) throw UsageError("--log needs positive endpoints");
    values = o.log ? log_space(from, to, steps) : lin_space(from, to, steps);
  }

  const auto rows = parallel_rows(values.size(), [&](std::size_t i) {
    const double v = values[i];
    Physics p = base;
    double l = length;
    SweepRow row;
    row.param = v;
    if (param == "n") {
      const int n = static_cast<int>(v);
      if (n == 0) {
        row.result = normalized_rate(p.at(l, 0, 1), variant, measure);
        row.m_opt = 1;
        return row;
      }
      const OptimizationResult opt = optimize(l, p, variant, measure, n, n);
      row.n_opt = opt.n_opt;
      row.m_opt = opt.m_opt;
      row.result = opt.best;
      return row;
    }
    if (param == "L") l = v;
    if (param == "tau_c") p.tau_c = v;
    if (param == "P_M") p.p_m = v;
    p.at(l, 1, 1).validate();
    const OptimizationResult opt = optimize(l, p, variant, measure, o.n_max);
    row.n_opt = opt.n_opt;
    row.m_opt = opt.m_opt;
    row.result = opt.best;
    return row;
  });

  out << "param,n_opt,m_opt,q,decay_time_s,measure_value,rate_per_memory_per_s\n";
  for (const SweepRow& r : rows) {
    out << format_double(r.param) << ',' << r.n_opt << ',' << r.m_opt << ',' << format_double(r.result.q) << ','
        << format_double(r.result.effective_decay_time) << ',' << format_double(r.result.measure_value) << ','
        << format_double(r.result.r) << '\n';
  }
  return kExitOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  SimConfig sc;
  sc.repeater = repeater_of(o);
  sc.cycles = o.cycles;
  sc.warmup_cycles = o.warmup ? *o.warmup : default_warmup(sc.repeater);
  sc.seed = o.seed;
  sc.measure = measure_of(o);
  try {
    sc.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const SimStats s = run(sc);
  const SimComparison cmp = compare_to_analytic(s, sc.repeater);

  json config = repeater_json(sc.repeater);
  config["cycles"] = sc.cycles;
  config["warmup_cycles"] = sc.warmup_cycles;
  config["seed"] = sc.seed;
  config["measure"] = std::string(to_string(sc.measure));

  json levels = json::array();
  for (const LevelCounters& c : s.levels)
    levels.push_back({{"level", c.level},
                      {"attempts", c.attempts},
                      {"successes", c.successes},
                      {"delay_cycles", c.delay_cycles}});
  json ages = json::array();
  for (const AgeBin& b : s.age_histogram) ages.push_back({{"age_s", b.age}, {"count", b.count}});

  json stats;
  stats["counted_cycles"] = s.counted_cycles;
  stats["link_attempts"] = s.link_attempts;
  stats["link_successes"] = s.link_successes;
  stats["levels"] = std::move(levels);
  stats["delivered_pairs"] = s.delivered_pairs;
  stats["pair_rate_per_s_per_memory"] = s.measured_normalized_rate;
  stats["pair_rate_stderr_per_s_per_memory"] = s.normalized_rate_stderr;
  stats["ebit_rate_per_s_per_memory"] = s.measured_ebit_rate;
  stats["ebit_rate_stderr_per_s_per_memory"] = s.ebit_rate_stderr;
  stats["mean_delivered_age_s"] = s.mean_delivered_age;
  stats["min_delivered_age_s"] = s.min_delivered_age;
  stats["max_delivered_age_s"] = s.max_delivered_age;
  stats["age_histogram"] = std::move(ages);

  json comparison;
  comparison["analytic_pair_rate_per_s_per_memory"] = cmp.analytic_pair_rate;
  comparison["pair_rate_ratio"] = cmp.pair_rate_ratio;
  comparison["pair_rate_ratio_stderr"] = cmp.pair_rate_ratio_stderr;
  comparison["analytic_ebit_rate_per_s_per_memory"] = cmp.analytic_ebit_rate;
  comparison["ebit_rate_ratio"] = cmp.ebit_rate_ratio;
  comparison["ebit_rate_ratio_stderr"] = cmp.ebit_rate_ratio_stderr;
  comparison["analytic_decay_time_s"] = cmp.analytic_decay_time;
  comparison["within_overestimate_bound"] = cmp.within_overestimate_bound;

  json j;
  j["command"] = "simulate";
  j["prng"] = s.prng;
  j["config"] = std::move(config);
  j["stats"] = std::move(stats);
  j["comparison"] = std::move(comparison);
  print_json(out, j);
  return kExitOk;
}

int cmd_scaling_fit(const Options& o, std::ostream& out) {
  const double from = parse_length(o.from.empty() ? "2000km" : o.from);
  const double to = parse_length(o.to.empty() ? "20000km" : o.to);
  if (!(from > 0.0 && to > from)) throw UsageError("scaling-fit needs 0 < --from < --to");
  const int steps = o.steps > 0 ? o.steps : 12;
  const Physics p = checked_physics(o, to);
  const std::vector<double> lengths = log_space(from, to, steps);
  const RateVariant variant = variant_of(o);
  const MeasureKind measure = measure_of(o);

  json j;
  j["command"] = "scaling-fit";
  j["config"] = physics_json(to, p);
  j["config"].erase("L_m");
  j["config"]["n_max"] = o.n_max;
  json points = json::array();
  if (o.law == "exp") {
    const ScalingFit fit = scaling_fit(p, variant, measure, lengths, o.n_max);
    j["law"] = "exp";
    j["slope_per_sqrt_m"] = fit.slope;
    j["predicted_slope_per_sqrt_m"] = fit.predicted_slope;
    j["relative_error"] = fit.relative_error;
    j["r_squared"] = fit.r_squared;
    for (std::size_t i = 0; i < fit.lengths.size(); ++i)
      points.push_back({{"L_m", fit.lengths[i]},
                        {"n_opt", fit.n_opt[i]},
                        {"m_opt", fit.m_opt[i]},
                        {"rate_ebits_per_s_per_memory", fit.rates[i]}});
  } else if (o.law == "power") {
    const PowerLawFit fit = power_law_fit(p, variant, measure, lengths, o.n_max);
    j["law"] = "power";
    j["exponent"] = fit.line.slope;
    j["intercept"] = fit.line.intercept;
    j["r_squared"] = fit.line.r_squared;
    for (std::size_t i = 0; i < fit.lengths.size(); ++i)
      points.push_back({{"L_m", fit.lengths[i]}, {"rate_ebits_per_s_per_memory", fit.rates[i]}});
  } else {
    throw UsageError("--law must be exp or power");
  }
  j["points"] = std::move(points);
  print_json(out, j);
  return kExitOk;
}

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(),
                     [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

std::optional<std::string> config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 == args.size()) throw UsageError("--config needs a file name");
      return args[i + 1];
    }
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

// Appends flags from the JSON config that the command line does not set.
// Keys that belong to other subcommands are skipped so one file can serve all.
void inject_config(std::vector<std::string>& args, const CLI::App& app) {
  const auto path = config_path(args);
  if (!path) return;
  std::ifstream in(*path);
  if (!in) throw UsageError("cannot read config file '" + *path + "'");
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("config file '" + *path + "': " + e.what());
  }
  if (!cfg.is_object()) throw UsageError("config file must hold a JSON object");

  const CLI::App* sub = nullptr;
  for (const auto& a : args) {
    if (!a.empty() && a[0] != '-') {
      sub = app.get_subcommand_ptr(a).get();
      break;
    }
  }
  if (sub == nullptr) return;

  for (const auto& [key, value] : cfg.items()) {
    const std::string flag = "--" + key;
    if (key == "config") continue;
    bool known = false;
    for (const CLI::App* s : app.get_subcommands({})) known = known || s->get_option_no_throw(flag) != nullptr;
    if (!known) throw UsageError("config file: unknown key '" + key + "'");
    if (sub->get_option_no_throw(flag) == nullptr || has_flag(args, flag)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
    } else if (value.is_string()) {
      args.push_back(flag);
      args.push_back(value.get<std::string>());
    } else if (value.is_number_integer() || value.is_number_unsigned()) {
      args.push_back(flag);
      args.push_back(value.dump());
    } else if (value.is_number_float()) {
      args.push_back(flag);
      args.push_back(format_double(value.get<double>()));
    } else {
      throw UsageError("config file: key '" + key + "' must be a string, number or boolean");
    }
  }
}

}  // namespace

double parse_length(std::string_view text) {
  const auto [num, unit] = split_unit(text);
  const double v = parse_number(num, "length");
  double scale = 0.0;
  if (unit.empty() || unit == "km")
    scale = kKm;
  else if (unit == "m")
    scale = 1.0;
  else
    throw UsageError("unknown length unit '" + std::string(unit) + "' (use km or m)");
  if (!(v > 0.0) || !std::isfinite(v)) throw UsageError("length must be positive: '" + std::string(text) + "'");
  return v * scale;
}

double parse_time(std::string_view text) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  const auto [num, unit] = split_unit(text);
  const double v = parse_number(num, "time");
  double scale = 0.0;
  if (unit.empty() || unit == "ms")
    scale = 1e-3;
  else if (unit == "s")
    scale = 1.0;
  else if (unit == "us")
    scale = 1e-6;
  else
    throw UsageError("unknown time unit '" + std::string(unit) + "' (use s, ms, us or inf)");
  if (!(v > 0.0) || !std::isfinite(v)) throw UsageError("time must be positive: '" + std::string(text) + "'");
  return v * scale;
}

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rates, optima and Monte-Carlo runs for nested quantum repeaters", "qrepeater"};
  app.require_subcommand(1);
  Options o;

  auto* rate = app.add_subcommand("rate", "normalized rate of one (n, m) configuration, JSON");
  add_physics(rate, o);
  add_nesting(rate, o);

  auto* sweep = app.add_subcommand("sweep", "rate optimized over (n, m) along one parameter, CSV");
  add_physics(sweep, o);
  sweep->add_option("--param", o.param, "swept parameter: n | tau_c | L | P_M")->required();
  sweep->add_option("--from", o.from, "first value (units as for the matching flag)")->required();
  sweep->add_option("--to", o.to, "last value")->required();
  sweep->add_option("--steps", o.steps, "number of points (default 20; n sweeps use every integer)");
  sweep->add_flag("--log", o.log, "log-spaced points");
  sweep->add_option("--n-max", o.n_max, "largest nesting level searched")->capture_default_str();

  auto* opt = app.add_subcommand("optimize", "grid optimum over (n, m) with closed-form predictions, JSON");
  add_physics(opt, o);
  opt->add_option("--n-max", o.n_max, "largest nesting level searched")->capture_default_str();

  auto* asym = app.add_subcommand("asymptotics", "closed-form large-distance optima, JSON");
  add_physics(asym, o);

  auto* sim = app.add_subcommand("simulate", "Monte-Carlo run compared with the analytic rate, JSON");
  add_physics(sim, o);
  add_nesting(sim, o);
  sim->add_option("--seed", o.seed, "PRNG seed")->capture_default_str();
  sim->add_option("--cycles", o.cycles, "simulated cycles including warmup")->capture_default_str();
  sim->add_option("--warmup", o.warmup, "cycles excluded from statistics (default 2^(m-1) + 1)");

  auto* fit = app.add_subcommand("scaling-fit", "fit of the optimized rate against distance, JSON");
  add_physics(fit, o);
  fit->add_option("--from", o.from, "shortest distance (default 2000km)");
  fit->add_option("--to", o.to, "longest distance (default 20000km)");
  fit->add_option("--steps", o.steps, "number of log-spaced distances (default 12)");
  fit->add_option("--law", o.law, "exp: ln R vs -sqrt(L); power: ln R vs ln L")->capture_default_str();
  fit->add_option("--n-max", o.n_max, "largest nesting level searched")->capture_default_str();

  try {
    if (args.empty()) {
      err << app.help();
      return kExitUsage;
    }
    inject_config(args, app);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << "\n\n";
    const auto selected = app.get_subcommands();
    err << (selected.empty() ? app.help() : selected.front()->help());
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*rate) return cmd_rate(o, out);
    if (*sweep) return cmd_sweep(o, out);
    if (*opt) return cmd_optimize(o, out);
    if (*asym) return cmd_asymptotics(o, out, err);
    if (*sim) return cmd_simulate(o, out);
    if (*fit) return cmd_scaling_fit(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace repeater::cli
