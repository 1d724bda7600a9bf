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

#include "fockfilter/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fockfilter/errors.hpp"

namespace fockfilter {

namespace {

void require_normalized(const FockVector &state, const char *what) {
    if (!state.is_normalized()) {
        throw FockError(ErrorKind::NotNormalized,
                        std::string(what) + ": norm^2 = " + std::to_string(state.norm_squared()));
    }
}

double q_from_moments(double mean, double second_moment) {
    if (mean <= 1e-12) throw FockError(ErrorKind::UndefinedForVacuum, "mandel_q: <n> vanishes");
    return (second_moment - mean * mean) / mean - 1.0;
}

}  // namespace

std::vector<double> photon_distribution(const FockVector &state) {
    require_normalized(state, "photon_distribution");
    std::vector<double> p(state.cutoff());
    std::transform(state.amplitudes().begin(), state.amplitudes().end(), p.begin(),
                   [](const Complex &c) { return std::norm(c); });
    return p;
}

double mean_photon_number(const FockVector &state) {
    const auto p = photon_distribution(state);
    double mean = 0.0;
    for (std::size_t n = 0; n < p.size(); ++n) mean += double(n) * p[n];
    return mean;
}

double mandel_q(const FockVector &state) {
    const auto p = photon_distribution(state);
    double mean = 0.0;
    double second = 0.0;
    for (std::size_t n = 0; n < p.size(); ++n) {
        mean += double(n) * p[n];
        second += double(n) * double(n) * p[n];
    }
    return q_from_moments(mean, second);
}

double mandel_q_from_operators(const FockVector &state) {
    require_normalized(state, "mandel_q_from_operators");
    const Eigen::MatrixXcd number = number_operator(state.cutoff()).entries();
    const Eigen::VectorXcd v = state.to_eigen();
    const Eigen::VectorXcd nv = number * v;
    const double mean = v.dot(nv).real();
    const double second = nv.squaredNorm();
    return q_from_moments(mean, second);
}

QuadratureReport quadratures(const FockVector &state) {
    require_normalized(state, "quadratures");
    const std::size_t dim = state.cutoff();
    // Normal-ordered moments are exact for a vector living in the basis.
    Complex a1{};
    Complex a2{};
    double n1 = 0.0;
    for (std::size_t n = 0; n < dim; ++n) {
        n1 += double(n) * std::norm(state[n]);
        if (n >= 1) a1 += std::sqrt(double(n)) * std::conj(state[n - 1]) * state[n];
        if (n >= 2) a2 += std::sqrt(double(n) * double(n - 1)) * std::conj(state[n - 2]) * state[n];
    }
    QuadratureReport r;
    r.mean_x = a1.real();
    r.mean_y = a1.imag();
    const double sym = 2.0 * n1 + 1.0;
    const double x2 = (2.0 * a2.real() + sym) / 4.0;
    const double y2 = (sym - 2.0 * a2.real()) / 4.0;
    r.var_x = x2 - r.mean_x * r.mean_x;
    r.var_y = y2 - r.mean_y * r.mean_y;
    r.squeezed_x = r.var_x < 0.25 - kSqueezingSlack;
    r.squeezed_y = r.var_y < 0.25 - kSqueezingSlack;
    r.truncation_error = double(dim) * std::norm(state[dim - 1]);
    if (r.truncation_error > kTailTolerance) {
        throw FockError(ErrorKind::CutoffTooSmall,
                        "quadratures: top basis state carries " + std::to_string(r.truncation_error));
    }
    return r;
}

double fidelity(const FockVector &u, const FockVector &v) {
    require_normalized(u, "fidelity");
    require_normalized(v, "fidelity");
    return std::min(1.0, std::norm(inner_product(u, v)));
}

}  // namespace fockfilter
