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

#include "repeater/measures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "repeater/bell_state.hpp"

namespace repeater {
namespace {

constexpr double kLn2 = 0.69314718055994530942;

void require_fidelity(double f, const char* who) {
  if (!(f >= 0.5 && f <= 1.0))
    throw std::invalid_argument(std::string(who) + ": fidelity must lie in [1/2, 1]; relabel the majority Bell component first");
}

void require_coherence(double eps, const char* who) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument(std::string(who) + ": coherence must lie in [0, 1]");
}

// H(d) for small d without forming 1 - d.
double entropy_of_minority(double d) {
  if (d <= 0.0) return 0.0;
  return -d * std::log2(d) - (1.0 - d) * std::log1p(-d) / kLn2;
}

}  // namespace

std::string_view to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::EntanglementCost:
      return "ec";
    case MeasureKind::DistillableEntanglement:
      return "ed";
  }
  return "?";
}

MeasureKind parse_measure(std::string_view text) {
  if (text == "ec" || text == "EntanglementCost") return MeasureKind::EntanglementCost;
  if (text == "ed" || text == "DistillableEntanglement") return MeasureKind::DistillableEntanglement;
  throw std::invalid_argument("unknown measure '" + std::string(text) + "' (expected ec or ed)");
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binary_entropy: p must lie in [0, 1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double fidelity_after(double t, double tau_c) { return dephasing_fidelity(t, tau_c); }

double coherence_after(double t, double tau_c) {
  if (!(t >= 0.0)) throw std::invalid_argument("coherence_after: t must be >= 0");
  if (!(tau_c > 0.0)) throw std::invalid_argument("coherence_after: tau_c must be positive");
  return std::exp(-t / tau_c);
}

double entanglement_cost(double f) {
  require_fidelity(f, "entanglement_cost");
  return entanglement_cost_from_coherence(2.0 * f - 1.0);
}

double distillable_entanglement(double f) {
  require_fidelity(f, "distillable_entanglement");
  return distillable_entanglement_from_coherence(2.0 * f - 1.0);
}

double entanglement_cost_from_coherence(double eps) {
  require_coherence(eps, "entanglement_cost");
  if (eps == 1.0) return 1.0;
  // H(1/2 + sqrt(f(1-f))) = H(d) with d = (1 - sqrt(1 - eps^2)) / 2
  const double root = std::sqrt((1.0 - eps) * (1.0 + eps));
  const double d = eps * eps / (2.0 * (1.0 + root));
  return std::min(1.0, entropy_of_minority(d));
}

double distillable_entanglement_from_coherence(double eps) {
  require_coherence(eps, "distillable_entanglement");
  if (eps == 1.0) return 1.0;
  double value;
  if (eps >= 0.5) {
    value = 1.0 - binary_entropy(0.5 * (1.0 + eps));
  } else {
    // 1 - H((1+eps)/2) = [ln(1 - eps^2) + 2 eps atanh(eps)] / (2 ln 2)
    value = (std::log1p(-eps * eps) + 2.0 * eps * std::atanh(eps)) / (2.0 * kLn2);
  }
  return std::max(0.0, value);
}

double measure_from_coherence(MeasureKind kind, double eps) {
  return kind == MeasureKind::EntanglementCost ? entanglement_cost_from_coherence(eps)
                                               : distillable_entanglement_from_coherence(eps);
}

}  // namespace repeater
