// Copyright 2026 The fockfilter Authors
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

// Photon statistics and quadrature noise of normalized single-mode states.
// All functions reject inputs that are not normalized (NotNormalized).

#include <vector>

#include "fockfilter/fock.hpp"

namespace fockfilter {

/// Variances below 1/4 − kSqueezingSlack count as squeezed.
inline constexpr double kSqueezingSlack = 1e-12;

/// X̂ = (â + â†)/2, Ŷ = (â − â†)/2i; vacuum variance 1/4.
struct QuadratureReport {
    double mean_x = 0.0;
    double mean_y = 0.0;
    double var_x = 0.0;
    double var_y = 0.0;
    bool squeezed_x = false;
    bool squeezed_y = false;
    /// N·|c_{N−1}|²: what the truncated â â† misses at the basis edge.
    double truncation_error = 0.0;
};

std::vector<double> photon_distribution(const FockVector &state);
double mean_photon_number(const FockVector &state);

/// Q = ⟨(Δn̂)²⟩/⟨n̂⟩ − 1 from the photon-number distribution.
/// Throws UndefinedForVacuum when ⟨n̂⟩ ≤ 1e-12.
double mandel_q(const FockVector &state);

/// Same quantity evaluated with the number-operator matrix.
double mandel_q_from_operators(const FockVector &state);

/// Throws CutoffTooSmall when the truncation error exceeds 1e-10.
QuadratureReport quadratures(const FockVector &state);

/// |⟨u|v⟩|².
double fidelity(const FockVector &u, const FockVector &v);

}  // namespace fockfilter
