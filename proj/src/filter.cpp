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
#include <string>
#include <vector>

#include "fockfilter/errors.hpp"

namespace fockfilter {

Complex lambda_param(double theta1, double theta2) {
    if (std::abs(std::sin(theta2)) < 1e-12) {
        throw FockError(ErrorKind::DegenerateSplitter, "second splitter has zero reflectance (theta2 = " +
                                                           std::to_string(theta2) + ")");
    }
    return std::conj(reflectance(theta1)) * std::conj(transmittance(theta2)) / std::conj(reflectance(theta2));
}

FilterConfig::FilterConfig(double theta1, double theta2, Complex psi0, Complex psi1)
    : theta1_(theta1), theta2_(theta2), psi0_(psi0), psi1_(psi1), lambda_(lambda_param(theta1, theta2)) {
    if (std::norm(psi0) + std::norm(psi1) > 1.0 + kNormTolerance) {
        throw FockError(ErrorKind::InvalidArgument, "|psi0|^2 + |psi1|^2 exceeds 1");
    }
}

FilterConfig FilterConfig::from_ancilla(double theta1, double theta2, const FockVector &psi) {
    return FilterConfig(theta1, theta2, psi.amplitude_or_zero(0), psi.amplitude_or_zero(1));
}

FilterConfig FilterConfig::with_coherent_ancilla(double theta1, double theta2, Complex alpha) {
    const double psi0 = std::exp(-0.5 * std::norm(alpha));
    return FilterConfig(theta1, theta2, psi0, alpha * psi0);
}

HeraldedResult filtered_state(const FockVector &phi, const FilterConfig &config) {
    if (!phi.is_normalized()) throw FockError(ErrorKind::NotNormalized, "filtered_state expects a normalized input");
    const Complex keep = config.psi1() * std::conj(config.r2());
    const Complex lower = config.psi0() * std::conj(config.r1()) * std::conj(config.t2());
    const double t1 = config.t1().real();

    std::vector<Complex> h(phi.cutoff());
    double p = 0.0;
    double t1_power = 1.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        h[i] = t1_power * (phi[i] * keep + std::sqrt(double(i + 1)) * phi.amplitude_or_zero(i + 1) * lower);
        p += std::norm(h[i]);
        t1_power *= t1;
    }
    if (p < kZeroProbability) {
        throw FockError(ErrorKind::ZeroProbability,
                        "heralding probability " + std::to_string(p) +
                            " is zero; a coherent input with alpha = -Lambda*gamma is filtered out entirely");
    }
    return HeraldedResult{FockVector(std::move(h)), p};
}

ModeOperatorMatrix hole_operator(const FilterConfig &config, std::size_t cutoff) {
    if (std::abs(config.psi0()) == 0.0) {
        throw FockError(ErrorKind::OperatorFormUndefined, "psi0 = 0 leaves psi1/(psi0*Lambda) undefined");
    }
    const Complex lambda = config.lambda();
    if (config.psi1() != 0.0 && std::abs(lambda) == 0.0) {
        throw FockError(ErrorKind::OperatorFormUndefined, "Lambda = 0 with psi1 != 0");
    }
    const Complex shift = config.psi1() == 0.0 ? Complex{} : config.psi1() / (config.psi0() * lambda);
    const Eigen::MatrixXcd a = annihilation_operator(cutoff).entries();
    Eigen::VectorXcd attenuation(static_cast<Eigen::Index>(cutoff));
    const double t1 = config.t1().real();
    for (Eigen::Index n = 0; n < attenuation.size(); ++n) attenuation(n) = std::pow(t1, double(n));
    const auto dim = static_cast<Eigen::Index>(cutoff);
    const Eigen::MatrixXcd inner = a + shift * Eigen::MatrixXcd::Identity(dim, dim);
    return ModeOperatorMatrix(attenuation.asDiagonal() * inner);
}

Complex alpha_for_hole(const FockVector &phi, std::size_t n, double theta1, double theta2) {
    if (n + 1 >= phi.cutoff()) {
        throw FockError(ErrorKind::CutoffExceeded, "hole index " + std::to_string(n) + " needs phi_{n+1} in the basis");
    }
    if (std::abs(phi[n]) <= 1e-12) {
        throw FockError(ErrorKind::HoleUndefined, "component |" + std::to_string(n) + "> is already absent");
    }
    return -lambda_param(theta1, theta2) * std::sqrt(double(n + 1)) * phi[n + 1] / phi[n];
}

Complex alpha_for_parity(Complex gamma, double delta, double theta1, double theta2, Parity keep) {
    const Complex phase = std::polar(1.0, delta);
    const Complex plus = 1.0 + phase;
    const Complex minus = 1.0 - phase;
    const Complex &num = keep == Parity::Even ? plus : minus;
    const Complex &den = keep == Parity::Even ? minus : plus;
    if (std::abs(den) <= 1e-12) {
        throw FockError(ErrorKind::ParityUndefined,
                        std::string("no coherent amplitude keeps only ") + (keep == Parity::Even ? "even" : "odd") +
                            " components at delta = " + std::to_string(delta));
    }
    return -gamma * lambda_param(theta1, theta2) * num / den;
}

}  // namespace fockfilter
