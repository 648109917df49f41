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

#include <string>
#include <string_view>

namespace repeater {

enum class MeasureKind { EntanglementCost, DistillableEntanglement };

std::string_view to_string(MeasureKind kind);
/// Accepts "ec" / "ed" and the full enumerator names.
MeasureKind parse_measure(std::string_view text);

/// H(p) in bits, with H(0) = H(1) = 0.
double binary_entropy(double p);

/// p(t) = (1 + exp(-t / tau_c)) / 2. tau_c may be +inf.
double fidelity_after(double t, double tau_c);

/// exp(-t / tau_c), i.e. 2 p(t) - 1. Kept separate from fidelity_after because
/// the measures lose all precision once p(t) rounds to 1/2.
double coherence_after(double t, double tau_c);

/// Entanglement cost of f |psi+><psi+| + (1 - f) |psi-><psi-|, f in [1/2, 1].
double entanglement_cost(double f);

/// Distillable entanglement (one-way hashing yield) of the same family.
double distillable_entanglement(double f);

/// Same measures parametrized by the coherence eps = 2f - 1 in [0, 1].
double entanglement_cost_from_coherence(double eps);
double distillable_entanglement_from_coherence(double eps);

double measure_from_coherence(MeasureKind kind, double eps);

}  // namespace repeater
