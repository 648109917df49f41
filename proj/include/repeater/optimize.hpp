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

#include <vector>

#include <Eigen/Core>

#include "repeater/core.hpp"
#include "repeater/measures.hpp"
#include "repeater/rates.hpp"

namespace repeater {

/// Physical parameters held fixed while (n, m) are searched.
struct Physics {
  double p_m = 0.75;
  double tau_c = 5.0e-3;
  ChannelModel channel{};

  RepeaterConfig at(double length, int n, int m) const;
};

struct GridPoint {
  int n = 0;
  int m = 0;
  double r = 0.0;
};

struct OptimizationResult {
  int n_opt = 0;
  int m_opt = 0;
  double r_opt = 0.0;
  double l0_opt = 0.0;
  RateResult best{};
  std::vector<GridPoint> table;  // ordered by n, then m
};

inline constexpr int kDefaultMaxNesting = 24;

/// Exhaustive search over n_min <= n <= n_max, 1 <= m <= n. Ties go to the
/// smaller n, then the smaller m.
OptimizationResult optimize(double length, const Physics& physics, RateVariant variant, MeasureKind measure,
                            int n_max = kDefaultMaxNesting, int n_min = 1);

/// 2 ln(1/P_M) / alpha.
double asymptotic_l0_opt(double p_m, double alpha);

/// log2 of alpha * sqrt(2 L c tau_c / ln(1/P_M)).
double asymptotic_m_opt(double length, double p_m, double tau_c, double c, double alpha);

/// Least-squares line y = intercept + slope * x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

LineFit fit_line(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// ln R_opt regressed on -sqrt(L) in the short-coherence regime.
struct ScalingFit {
  double slope = 0.0;            // per sqrt(m)
  double predicted_slope = 0.0;  // 2 sqrt(ln(1/P_M) / (c tau_c))
  double relative_error = 0.0;
  double r_squared = 0.0;
  std::vector<double> lengths;  // m
  std::vector<double> rates;    // R_opt, ebits / s per memory
  std::vector<int> n_opt;
  std::vector<int> m_opt;
};

/// Requires at least 6 lengths, P_M < 1 and max(L) / c >= 20 tau_c.
ScalingFit scaling_fit(const Physics& physics, RateVariant variant, MeasureKind measure,
                       const std::vector<double>& lengths, int n_max = kDefaultMaxNesting);

/// ln R_opt regressed on ln L; the slope is the polynomial exponent.
struct PowerLawFit {
  LineFit line;
  std::vector<double> lengths;
  std::vector<double> rates;
};

PowerLawFit power_law_fit(const Physics& physics, RateVariant variant, MeasureKind measure,
                          const std::vector<double>& lengths, int n_max = kDefaultMaxNesting);

std::vector<double> lin_space(double from, double to, int count);
std::vector<double> log_space(double from, double to, int count);

}  // namespace repeater
