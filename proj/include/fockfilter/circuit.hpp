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

// Brute-force three-mode simulation of the filter: |φ⟩|0⟩|ψ⟩ is evolved by
// exact beam-splitter unitaries and then projected on the detector counts.
// Serves as the reference the closed-form filter is checked against.

#include <cstddef>
#include <vector>

#include "fockfilter/filter.hpp"
#include "fockfilter/fock.hpp"

namespace fockfilter {

enum class Mode { A = 0, B = 1, C = 2 };

/// exp[iθ(x̂†ŷ + x̂ŷ†)] on the mode pair (first, second).
struct BeamSplitter {
    double theta = 0.0;
    Mode first = Mode::A;
    Mode second = Mode::B;

    Complex transmittance() const { return fockfilter::transmittance(theta); }
    Complex reflectance() const { return fockfilter::reflectance(theta); }
};

/// Dense amplitude tensor indexed (n_a, n_b, n_c), each index below `cutoff`.
class ThreeModeState {
public:
    explicit ThreeModeState(std::size_t cutoff);

    std::size_t cutoff() const noexcept { return cutoff_; }
    const Complex &at(std::size_t na, std::size_t nb, std::size_t nc) const { return amps_[index(na, nb, nc)]; }
    Complex &at(std::size_t na, std::size_t nb, std::size_t nc) { return amps_[index(na, nb, nc)]; }

    double norm_squared() const noexcept;
    /// Σ (n_a + n_b + n_c)|amplitude|².
    double mean_total_photons() const noexcept;

private:
    std::size_t index(std::size_t na, std::size_t nb, std::size_t nc) const noexcept {
        return (na * cutoff_ + nb) * cutoff_ + nc;
    }

    std::size_t cutoff_;
    std::vector<Complex> amps_;
};

/// |φ⟩|0⟩|ψ⟩. Throws DimensionMismatch when either factor exceeds `cutoff`.
ThreeModeState tensor_input(const FockVector &phi, const FockVector &psi, std::size_t cutoff);

/// Applies the splitter sector by sector in the total photon number of the
/// coupled pair. Amplitude that would land outside the cutoff is dropped.
ThreeModeState apply_beam_splitter(const ThreeModeState &state, const BeamSplitter &bs);

/// Mode-a vector conditioned on (b_count, c_count) detections, unnormalized.
HeraldedResult postselect(const ThreeModeState &state, std::size_t b_count, std::size_t c_count);

/// tensor_input → R̂₁ on (a, b) → R̂₂ on (c, b) → postselect(1, 0).
/// `cutoff` = 0 picks cutoff(φ) + cutoff(ψ) − 1, which no sector exceeds.
/// Throws CutoffTooSmall when more than 1e-10 of the norm leaks out.
HeraldedResult run_oracle(const FockVector &phi, const FockVector &psi, double theta1, double theta2,
                          std::size_t cutoff = 0);

/// Fixed global phase between the unitary route and the closed-form numerator:
/// run_oracle(...).collapsed = kHeraldPhase · filtered_state(...).collapsed.
inline constexpr double kHeraldPhase = -1.0;

struct OracleComparison {
    double max_amplitude_deviation = 0.0;
    double probability_deviation = 0.0;
    double oracle_probability = 0.0;
    double closed_form_probability = 0.0;
};

/// Runs both routes on the same inputs and reports the worst disagreement.
OracleComparison compare_with_closed_form(const FockVector &phi, const FockVector &psi, double theta1,
                                          double theta2, std::size_t cutoff = 0);

}  // namespace fockfilter
