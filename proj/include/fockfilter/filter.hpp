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

// Closed-form heralded filter: a state φ in mode a and an ancilla ψ in mode c
// meet vacuum in mode b at two beam splitters; detecting one photon in b and
// none in c leaves mode a in T₁^{n̂}(ψ₁R₂*·φ + ψ₀R₁*T₂*·âφ), up to norm.

#include <cmath>
#include <cstddef>

#include "fockfilter/fock.hpp"

namespace fockfilter {

/// Below this generation probability a heralded outcome is treated as impossible.
inline constexpr double kZeroProbability = 1e-14;

/// Transmittance cos θ.
inline Complex transmittance(double theta) { return {std::cos(theta), 0.0}; }
/// Reflectance i sin θ.
inline Complex reflectance(double theta) { return {0.0, std::sin(theta)}; }

/// Λ = R₁* T₂* / R₂*. Throws DegenerateSplitter when sin θ₂ ≈ 0.
Complex lambda_param(double theta1, double theta2);

class FilterConfig {
public:
    /// Ancilla given by its first two amplitudes.
    FilterConfig(double theta1, double theta2, Complex psi0, Complex psi1);
    /// Ancilla read from a full state; only ψ₀ and ψ₁ are kept.
    static FilterConfig from_ancilla(double theta1, double theta2, const FockVector &psi);
    /// Coherent ancilla |α⟩: ψ₀ = e^{−|α|²/2}, ψ₁ = αψ₀.
    static FilterConfig with_coherent_ancilla(double theta1, double theta2, Complex alpha);

    double theta1() const noexcept { return theta1_; }
    double theta2() const noexcept { return theta2_; }
    Complex psi0() const noexcept { return psi0_; }
    Complex psi1() const noexcept { return psi1_; }
    Complex lambda() const noexcept { return lambda_; }
    Complex t1() const { return transmittance(theta1_); }
    Complex r1() const { return reflectance(theta1_); }
    Complex t2() const { return transmittance(theta2_); }
    Complex r2() const { return reflectance(theta2_); }

private:
    double theta1_;
    double theta2_;
    Complex psi0_;
    Complex psi1_;
    Complex lambda_;
};

/// Unnormalized heralded mode-a vector together with its generation probability.
struct HeraldedResult {
    FockVector collapsed;
    double probability = 0.0;

    FockVector normalized() const { return normalize(collapsed); }
};

/// h_i = T₁^i (φ_i ψ₁ R₂* + √(i+1) φ_{i+1} ψ₀ R₁* T₂*), p = Σ|h_i|².
/// h keeps φ's cutoff; the top coefficient uses φ_N = 0.
/// Throws NotNormalized for unnormalized φ and ZeroProbability when p < 1e-14.
HeraldedResult filtered_state(const FockVector &phi, const FilterConfig &config);

/// Ĥ = T₁^{n̂}(â + ψ₁/(ψ₀Λ)·Î). Throws OperatorFormUndefined when ψ₀ = 0.
ModeOperatorMatrix hole_operator(const FilterConfig &config, std::size_t cutoff);

/// Coherent ancilla amplitude α⁽ⁿ⁾ = −Λ√(n+1)·φ_{n+1}/φ_n that empties |n⟩.
Complex alpha_for_hole(const FockVector &phi, std::size_t n, double theta1, double theta2);

enum class Parity { Even, Odd };

/// Coherent ancilla amplitude that leaves only `keep`-parity components of
/// the cat state C(|γ⟩ + e^{iδ}|−γ⟩):
///   keep = Even: −γΛ(1+e^{iδ})/(1−e^{iδ});  keep = Odd: −γΛ(1−e^{iδ})/(1+e^{iδ}).
Complex alpha_for_parity(Complex gamma, double delta, double theta1, double theta2, Parity keep);

}  // namespace fockfilter
