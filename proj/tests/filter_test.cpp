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

#include "fockfilter/filter.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"

#include "fockfilter/circuit.hpp"
#include "fockfilter/errors.hpp"
#include "fockfilter/metrics.hpp"

using namespace fockfilter;

namespace {

constexpr double kQuarter = std::numbers::pi / 4;

template <typename Fn>
void expect_error(ErrorKind kind, Fn &&fn) {
    try {
        fn();
        FAIL() << "expected " << to_string(kind);
    } catch (const FockError &e) {
        EXPECT_EQ(e.kind(), kind) << e.what();
    }
}

FockVector random_state(std::mt19937_64 &rng, std::size_t dim) {
    std::normal_distribution<double> g;
    std::vector<Complex> amps(dim);
    for (auto &c : amps) c = {g(rng), g(rng)};
    return normalize(FockVector(std::move(amps)));
}

double largest(const FockVector &v) {
    double m = 0.0;
    for (const auto &c : v.amplitudes()) m = std::max(m, std::abs(c));
    return m;
}

}  // namespace

TEST(lambda_param, balanced_and_limits) {
    EXPECT_NEAR(std::abs(lambda_param(kQuarter, kQuarter) - Complex(1.0 / std::sqrt(2.0))), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(lambda_param(kQuarter, std::numbers::pi / 2)), 0.0, 1e-15);
    expect_error(ErrorKind::DegenerateSplitter, [] { lambda_param(kQuarter, 0.0); });
    // Real angles give a real Λ = sin θ₁ cos θ₂ / sin θ₂.
    const Complex l = lambda_param(0.3, 1.1);
    EXPECT_NEAR(l.imag(), 0.0, 1e-16);
    EXPECT_NEAR(l.real(), std::sin(0.3) * std::cos(1.1) / std::sin(1.1), 1e-15);
}

TEST(filter_config, ancilla_forms_agree) {
    const Complex alpha(0.4, -0.7);
    const auto from_pair = FilterConfig::with_coherent_ancilla(0.6, 0.8, alpha);
    const auto from_state = FilterConfig::from_ancilla(0.6, 0.8, coherent_state(alpha, 32));
    EXPECT_NEAR(std::abs(from_pair.psi0() - from_state.psi0()), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(from_pair.psi1() - from_state.psi1()), 0.0, 1e-15);

    const auto phi = cat_state(0.9, 1.0, 32);
    const auto a = filtered_state(phi, from_pair);
    const auto b = filtered_state(phi, from_state);
    for (std::size_t i = 0; i < phi.cutoff(); ++i) EXPECT_NEAR(std::abs(a.collapsed[i] - b.collapsed[i]), 0.0, 1e-15);

    expect_error(ErrorKind::InvalidArgument, [] { FilterConfig(0.5, 0.5, 0.9, 0.9); });
}

TEST(filtered_state, single_photon_input) {
    const auto result = filtered_state(fock_state(1, 4), FilterConfig(kQuarter, kQuarter, 1.0, 0.0));
    EXPECT_NEAR(result.probability, 0.25, 1e-15);
    EXPECT_NEAR(fidelity(result.normalized(), fock_state(0, 4)), 1.0, 1e-15);
}

TEST(filtered_state, probability_is_squared_norm) {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 10; ++trial) {
        const auto result =
            filtered_state(random_state(rng, 16), FilterConfig::with_coherent_ancilla(0.4, 0.9, {0.3, 0.2}));
        EXPECT_NEAR(result.probability, result.collapsed.norm_squared(), 1e-14);
    }
}

TEST(filtered_state, hole_in_squeezed_coherent_state) {
    const auto phi = squeezed_coherent_state(0.5, 1.0, 96);
    const Complex alpha = alpha_for_hole(phi, 0, kQuarter, kQuarter);
    const auto result = filtered_state(phi, FilterConfig::with_coherent_ancilla(kQuarter, kQuarter, alpha));
    EXPECT_LE(std::abs(result.collapsed[0]), 1e-12);
}

TEST(filtered_state, coherent_input_is_attenuated) {
    const Complex gamma(0.9, 0.4);
    const double theta1 = 0.6;
    const auto result =
        filtered_state(coherent_state(gamma, 48), FilterConfig::with_coherent_ancilla(theta1, 0.7, {0.2, -0.1}));
    EXPECT_NEAR(fidelity(result.normalized(), coherent_state(std::cos(theta1) * gamma, 48)), 1.0, 1e-9);
}

TEST(filtered_state, rejects_unnormalized_and_impossible) {
    expect_error(ErrorKind::NotNormalized,
                 [] { filtered_state(FockVector(std::vector<Complex>{1.0, 1.0}), FilterConfig(0.5, 0.5, 1.0, 0.0)); });
    // Coherent input with α = −Λγ removes every component.
    const Complex gamma(1.0, 0.0);
    const Complex alpha = -lambda_param(kQuarter, kQuarter) * gamma;
    expect_error(ErrorKind::ZeroProbability, [&] {
        filtered_state(coherent_state(gamma, 48), FilterConfig::with_coherent_ancilla(kQuarter, kQuarter, alpha));
    });
}

TEST(hole_operator, pure_subtraction) {
    const auto h = hole_operator(FilterConfig(kQuarter, kQuarter, 1.0, 0.0), 6);
    const auto a = annihilation_operator(6);
    for (std::size_t m = 0; m < 6; ++m)
        for (std::size_t n = 0; n < 6; ++n)
            EXPECT_NEAR(std::abs(h(m, n) - std::pow(std::cos(kQuarter), double(m)) * a(m, n)), 0.0, 1e-15);

    // Fully transmitting first splitter: Ĥ = â.
    const auto bare = hole_operator(FilterConfig(0.0, kQuarter, 1.0, 0.0), 6);
    EXPECT_LE((bare.entries() - a.entries()).cwiseAbs().maxCoeff(), 0.0);

    expect_error(ErrorKind::OperatorFormUndefined, [] { hole_operator(FilterConfig(0.5, 0.5, 0.0, 1.0), 4); });
}

TEST(hole_operator, reproduces_collapsed_state) {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> angle(0.1, 1.4);
    for (int trial = 0; trial < 10; ++trial) {
        const auto phi = random_state(rng, 20);
        const auto config = FilterConfig::with_coherent_ancilla(angle(rng), angle(rng), {0.5, -0.3});
        const auto applied = hole_operator(config, phi.cutoff()).apply(phi);
        const auto result = filtered_state(phi, config);
        const Complex scale = config.psi0() * std::conj(config.r1()) * std::conj(config.t2());
        for (std::size_t i = 0; i < phi.cutoff(); ++i) {
            EXPECT_NEAR(std::abs(scale * applied[i] - result.collapsed[i]), 0.0, 1e-10) << trial << ":" << i;
        }
    }
}

TEST(alpha_for_hole, special_inputs) {
    // Squeezed vacuum has φ₁ = 0, so no ancilla is needed to empty |0⟩.
    EXPECT_EQ(std::abs(alpha_for_hole(squeezed_coherent_state(0.0, 0.8, 64), 0, kQuarter, kQuarter)), 0.0);

    const Complex gamma(0.7, 0.2);
    const auto coh = coherent_state(gamma, 48);
    const Complex expected = -lambda_param(kQuarter, kQuarter) * gamma;
    for (std::size_t n = 0; n < 6; ++n) EXPECT_NEAR(std::abs(alpha_for_hole(coh, n, kQuarter, kQuarter) - expected), 0.0, 1e-12);

    const FockVector gap = normalize(FockVector(std::vector<Complex>{1.0, 1.0, 0.0, 1.0}));
    expect_error(ErrorKind::HoleUndefined, [&] { alpha_for_hole(gap, 2, kQuarter, kQuarter); });
    expect_error(ErrorKind::CutoffExceeded, [&] { alpha_for_hole(gap, 3, kQuarter, kQuarter); });
}

TEST(alpha_for_hole, hole_is_exact_for_random_states) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> angle(0.1, 1.4);
    for (int trial = 0; trial < 10; ++trial) {
        const auto phi = random_state(rng, 14);
        const double t1 = angle(rng);
        const double t2 = angle(rng);
        const std::size_t n = static_cast<std::size_t>(trial) % 10;
        const Complex alpha = alpha_for_hole(phi, n, t1, t2);
        // |α| may be large here; only the ratio ψ₁/ψ₀ = α matters for the hole.
        const auto result = filtered_state(phi, FilterConfig(t1, t2, 1.0 / std::sqrt(1.0 + std::norm(alpha)),
                                                             alpha / std::sqrt(1.0 + std::norm(alpha))));
        EXPECT_LE(std::abs(result.collapsed[n]), 1e-12 * largest(result.collapsed)) << trial;
    }
}

TEST(alpha_for_hole, large_amplitude_starves_the_herald) {
    // phi_2 is nearly empty here, so alpha^(2) is large and the coherent ancilla's vacuum weight underflows.
    const auto phi = squeezed_coherent_state(0.5, 1.0, 96);
    const Complex alpha = alpha_for_hole(phi, 2, kQuarter, kQuarter);
    EXPECT_GT(std::abs(alpha), 50.0);
    expect_error(ErrorKind::ZeroProbability, [&] {
        filtered_state(phi, FilterConfig::with_coherent_ancilla(kQuarter, kQuarter, alpha));
    });

    // Same psi1/psi0 from a qubit-like ancilla: identical direction, and the hole is there.
    const double c = 1.0 / std::sqrt(1.0 + std::norm(alpha));
    const auto h = filtered_state(phi, FilterConfig(kQuarter, kQuarter, c, c * alpha)).collapsed;
    double peak = 0.0;
    for (const auto &x : h.amplitudes()) peak = std::max(peak, std::abs(x));
    EXPECT_LE(std::abs(h[2]), 1e-12 * peak);
}

TEST(alpha_for_parity, yurke_stoler_values) {
    const double half_pi = std::numbers::pi / 2;
    const Complex gamma(0.8, 0.0);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    // (1+i)/(1−i) = i and (1−i)/(1+i) = −i.
    EXPECT_NEAR(std::abs(alpha_for_parity(gamma, half_pi, kQuarter, kQuarter, Parity::Even) -
                         Complex(0.0, -0.8 * inv_sqrt2)),
                0.0, 1e-15);
    EXPECT_NEAR(std::abs(alpha_for_parity(gamma, half_pi, kQuarter, kQuarter, Parity::Odd) -
                         Complex(0.0, 0.8 * inv_sqrt2)),
                0.0, 1e-15);
    expect_error(ErrorKind::ParityUndefined, [] { alpha_for_parity(1.0, 0.0, kQuarter, kQuarter, Parity::Even); });
    expect_error(ErrorKind::ParityUndefined,
                 [] { alpha_for_parity(1.0, std::numbers::pi, kQuarter, kQuarter, Parity::Odd); });
}

TEST(alpha_for_parity, removes_whole_parity_class) {
    for (double delta : {std::numbers::pi / 2, 1.0, 2.2}) {
        const Complex gamma = std::polar(1.1, 0.3);
        const auto cat = cat_state(gamma, delta, 64);
        for (Parity keep : {Parity::Even, Parity::Odd}) {
            const Complex alpha = alpha_for_parity(gamma, delta, 0.5, 0.9, keep);
            const auto result = filtered_state(cat, FilterConfig::with_coherent_ancilla(0.5, 0.9, alpha));
            const std::size_t removed = keep == Parity::Even ? 1 : 0;
            for (std::size_t n = removed; n < cat.cutoff(); n += 2) {
                EXPECT_LE(std::abs(result.collapsed[n]), 1e-12) << "delta=" << delta << " n=" << n;
            }
        }
    }
}
