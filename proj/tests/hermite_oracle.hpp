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

// Closed-form ⟨n|D(γ)S(ξ)|0⟩ through the Hermite-polynomial expansion, used
// only to check the exponential-based constructors.
//
//   ⟨n|γ,ξ⟩ = (cosh s)^{-1/2} exp(−|γ|²/2 − γ*² e^{iφ} tanh s / 2)
//             · (e^{iφ} tanh s / 2)^{n/2} H_n(z) / √(n!),
//   z = (γ cosh s + γ* e^{iφ} sinh s) / √(e^{iφ} sinh 2s).
//
// With u_n = (e^{iφ} tanh s / 2)^{n/2} H_n(z) / √(n!) the Hermite recurrence
// H_{n+1} = 2z H_n − 2n H_{n−1} becomes branch-free:
//   u_{n+1} = (γ̃ / cosh s) u_n / √(n+1) − e^{iφ} tanh s · √n / √(n+1) · u_{n−1},
// with γ̃ = γ cosh s + γ* e^{iφ} sinh s.

#include <cmath>
#include <complex>
#include <vector>

namespace fockfilter::testing {

inline std::vector<std::complex<double>> hermite_squeezed_coherent(std::complex<double> gamma, double s,
                                                                   double phase, std::size_t count) {
    using C = std::complex<double>;
    const C e_phase = std::polar(1.0, phase);
    const C shifted = gamma * std::cosh(s) + std::conj(gamma) * e_phase * std::sinh(s);
    const C prefactor = std::exp(-0.5 * std::norm(gamma) - 0.5 * std::conj(gamma) * std::conj(gamma) * e_phase *
                                                            std::tanh(s)) /
                        std::sqrt(std::cosh(s));
    std::vector<C> u(count);
    u[0] = 1.0;
    if (count > 1) u[1] = shifted / std::cosh(s);
    for (std::size_t n = 1; n + 1 < count; ++n) {
        const double up = std::sqrt(double(n + 1));
        u[n + 1] = shifted / std::cosh(s) * u[n] / up - e_phase * std::tanh(s) * std::sqrt(double(n)) / up * u[n - 1];
    }
    for (auto &c : u) c *= prefactor;
    return u;
}

}  // namespace fockfilter::testing
