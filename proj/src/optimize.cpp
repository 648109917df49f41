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

#include "repeater/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

namespace repeater {

RepeaterConfig Physics::at(double length, int n, int m) const {
  RepeaterConfig config;
  config.length = length;
  config.n = n;
  config.m = m;
  config.p_m = p_m;
  config.tau_c = tau_c;
  config.channel = channel;
  return config;
}

OptimizationResult optimize(double length, const Physics& physics, RateVariant variant, MeasureKind measure,
                            int n_max, int n_min) {
  if (!(length > 0.0)) throw std::invalid_argument("optimize: L must be positive");
  if (n_min < 1 || n_max < n_min) throw std::invalid_argument("optimize: empty (n, m) grid");

  OptimizationResult out;
  out.table.reserve(static_cast<std::size_t>((n_max - n_min + 1) * (n_max + n_min)) / 2);
  bool have_best = false;
  for (int n = n_min; n <= n_max; ++n) {
    for (int m = 1; m <= n; ++m) {
      const RateResult result = normalized_rate(physics.at(length, n, m), variant, measure);
      out.table.push_back({n, m, result.r});
      if (!have_best || result.r > out.r_opt) {
        have_best = true;
        out.n_opt = n;
        out.m_opt = m;
        out.r_opt = result.r;
        out.best = result;
      }
    }
  }
  out.l0_opt = std::ldexp(length, -out.n_opt);
  return out;
}

double asymptotic_l0_opt(double p_m, double alpha) {
  if (!(p_m > 0.0 && p_m < 1.0)) throw std::invalid_argument("asymptotic_l0_opt: P_M must lie in (0, 1)");
  if (!(alpha > 0.0)) throw std::invalid_argument("asymptotic_l0_opt: alpha must be positive");
  return 2.0 * std::log(1.0 / p_m) / alpha;
}

double asymptotic_m_opt(double length, double p_m, double tau_c, double c, double alpha) {
  if (!(p_m > 0.0 && p_m < 1.0)) throw std::invalid_argument("asymptotic_m_opt: P_M must lie in (0, 1)");
  if (!(length > 0.0 && tau_c > 0.0 && c > 0.0 && alpha > 0.0) || !std::isfinite(tau_c))
    throw std::invalid_argument("asymptotic_m_opt: L, tau_c, c and alpha must be positive and finite");
  return std::log2(alpha * std::sqrt(2.0 * length * c * tau_c / std::log(1.0 / p_m)));
}

LineFit fit_line(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_line: need >= 2 paired samples");
  Eigen::MatrixXd design(x.size(), 2);
  design.col(0).setOnes();
  design.col(1) = x;
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(y);
  const Eigen::VectorXd residual = y - design * coef;
  const double ss_tot = (y.array() - y.mean()).square().sum();
  LineFit fit;
  fit.intercept = coef(0);
  fit.slope = coef(1);
  fit.r_squared = ss_tot > 0.0 ? 1.0 - residual.squaredNorm() / ss_tot : 1.0;
  return fit;
}

namespace {

void collect(const Physics& physics, RateVariant variant, MeasureKind measure, const std::vector<double>& lengths,
             int n_max, std::vector<double>& rates, std::vector<int>* n_opt, std::vector<int>* m_opt) {
  rates.clear();
  for (double length : lengths) {
    const OptimizationResult opt = optimize(length, physics, variant, measure, n_max);
    if (!(opt.r_opt > 0.0)) {
      std::ostringstream msg;
      msg << "rate fit: optimized rate underflows to zero at L = " << length << " m";
      throw std::invalid_argument(msg.str());
    }
    rates.push_back(opt.r_opt);
    if (n_opt) n_opt->push_back(opt.n_opt);
    if (m_opt) m_opt->push_back(opt.m_opt);
  }
}

Eigen::VectorXd map_log(const std::vector<double>& values) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) out(static_cast<Eigen::Index>(i)) = std::log(values[i]);
  return out;
}

}  // namespace

ScalingFit scaling_fit(const Physics& physics, RateVariant variant, MeasureKind measure,
                       const std::vector<double>& lengths, int n_max) {
  if (lengths.size() < 6) throw std::invalid_argument("scaling_fit: need at least 6 distance samples");
  if (!(physics.p_m > 0.0 && physics.p_m < 1.0)) throw std::invalid_argument("scaling_fit: P_M must lie in (0, 1)");
  const double l_max = *std::max_element(lengths.begin(), lengths.end());
  if (!(l_max / physics.channel.c >= 20.0 * physics.tau_c)) {
    std::ostringstream msg;
    msg << "scaling_fit: regime violation, max L/c = " << l_max / physics.channel.c
        << " s must be >= 20 tau_c = " << 20.0 * physics.tau_c << " s";
    throw std::invalid_argument(msg.str());
  }

  ScalingFit out;
  out.lengths = lengths;
  collect(physics, variant, measure, lengths, n_max, out.rates, &out.n_opt, &out.m_opt);

  Eigen::VectorXd x(static_cast<Eigen::Index>(lengths.size()));
  for (std::size_t i = 0; i < lengths.size(); ++i) x(static_cast<Eigen::Index>(i)) = -std::sqrt(lengths[i]);
  const LineFit line = fit_line(x, map_log(out.rates));
  out.slope = line.slope;
  out.r_squared = line.r_squared;
  out.predicted_slope = 2.0 * std::sqrt(std::log(1.0 / physics.p_m) / (physics.channel.c * physics.tau_c));
  out.relative_error = std::abs(out.slope - out.predicted_slope) / out.predicted_slope;
  return out;
}

PowerLawFit power_law_fit(const Physics& physics, RateVariant variant, MeasureKind measure,
                          const std::vector<double>& lengths, int n_max) {
  if (lengths.size() < 2) throw std::invalid_argument("power_law_fit: need at least 2 distance samples");
  PowerLawFit out;
  out.lengths = lengths;
  collect(physics, variant, measure, lengths, n_max, out.rates, nullptr, nullptr);
  out.line = fit_line(map_log(lengths), map_log(out.rates));
  return out;
}

std::vector<double> lin_space(double from, double to, int count) {
  if (count < 1) throw std::invalid_argument("lin_space: count must be >= 1");
  if (count == 1) return {from};
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = from + (to - from) * i / (count - 1);
  out.back() = to;
  return out;
}

std::vector<double> log_space(double from, double to, int count) {
  if (!(from > 0.0 && to > 0.0)) throw std::invalid_argument("log_space: endpoints must be positive");
  std::vector<double> out = lin_space(std::log(from), std::log(to), count);
  for (double& v : out) v = std::exp(v);
  out.front() = from;
  if (count > 1) out.back() = to;
  return out;
}

}  // namespace repeater
