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

#include "fockfilter/circuit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "fockfilter/errors.hpp"

namespace fockfilter {

namespace {

// exp[iθ(x̂†ŷ + x̂ŷ†)] on the sector spanned by |k, M−k⟩, k = 0..M.
Eigen::MatrixXcd sector_unitary(double theta, std::size_t total) {
    const auto dim = static_cast<Eigen::Index>(total + 1);
    Eigen::MatrixXd generator = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index k = 0; k + 1 < dim; ++k) {
        // ⟨k+1, M−k−1| x̂†ŷ |k, M−k⟩
        const double element = std::sqrt(double(k + 1) * double(static_cast<Eigen::Index>(total) - k));
        generator(k + 1, k) = element;
        generator(k, k + 1) = element;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(generator);
    const Eigen::MatrixXcd vectors = solver.eigenvectors().cast<Complex>();
    Eigen::VectorXcd phases(dim);
    for (Eigen::Index k = 0; k < dim; ++k) phases(k) = std::polar(1.0, theta * solver.eigenvalues()(k));
    return vectors * phases.asDiagonal() * vectors.transpose();
}

}  // namespace

ThreeModeState::ThreeModeState(std::size_t cutoff) : cutoff_(cutoff), amps_(cutoff * cutoff * cutoff) {
    if (cutoff == 0) throw FockError(ErrorKind::InvalidArgument, "cutoff must be positive");
}

double ThreeModeState::norm_squared() const noexcept {
    double s = 0.0;
    for (const auto &c : amps_) s += std::norm(c);
    return s;
}

double ThreeModeState::mean_total_photons() const noexcept {
    double s = 0.0;
    for (std::size_t na = 0; na < cutoff_; ++na)
        for (std::size_t nb = 0; nb < cutoff_; ++nb)
            for (std::size_t nc = 0; nc < cutoff_; ++nc)
                s += double(na + nb + nc) * std::norm(amps_[index(na, nb, nc)]);
    return s;
}

ThreeModeState tensor_input(const FockVector &phi, const FockVector &psi, std::size_t cutoff) {
    if (phi.cutoff() > cutoff || psi.cutoff() > cutoff) {
        throw FockError(ErrorKind::DimensionMismatch, "input cutoffs exceed the three-mode cutoff " +
                                                          std::to_string(cutoff));
    }
    ThreeModeState state(cutoff);
    for (std::size_t i = 0; i < phi.cutoff(); ++i)
        for (std::size_t n = 0; n < psi.cutoff(); ++n) state.at(i, 0, n) = phi[i] * psi[n];
    return state;
}

ThreeModeState apply_beam_splitter(const ThreeModeState &state, const BeamSplitter &bs) {
    if (bs.first == bs.second) throw FockError(ErrorKind::InvalidArgument, "beam splitter needs two distinct modes");
    const std::size_t n = state.cutoff();
    const auto x = static_cast<std::size_t>(bs.first);
    const auto y = static_cast<std::size_t>(bs.second);
    const std::size_t z = 3 - x - y;

    std::vector<Eigen::MatrixXcd> sectors;
    sectors.reserve(2 * n - 1);
    for (std::size_t total = 0; total + 1 < 2 * n; ++total) sectors.push_back(sector_unitary(bs.theta, total));

    ThreeModeState out(n);
    std::array<std::size_t, 3> idx{};
    auto element = [&](const ThreeModeState &s, std::size_t kx, std::size_t ky, std::size_t kz) -> const Complex & {
        idx[x] = kx;
        idx[y] = ky;
        idx[z] = kz;
        return s.at(idx[0], idx[1], idx[2]);
    };
    auto slot = [&](std::size_t kx, std::size_t ky, std::size_t kz) -> Complex & {
        idx[x] = kx;
        idx[y] = ky;
        idx[z] = kz;
        return out.at(idx[0], idx[1], idx[2]);
    };

    std::vector<Complex> in_block;
    for (std::size_t kz = 0; kz < n; ++kz) {
        for (std::size_t total = 0; total + 1 < 2 * n; ++total) {
            const std::size_t lo = total >= n ? total - n + 1 : 0;
            const std::size_t hi = std::min(total, n - 1);
            in_block.assign(hi - lo + 1, Complex{});
            bool empty = true;
            for (std::size_t k = lo; k <= hi; ++k) {
                in_block[k - lo] = element(state, k, total - k, kz);
                empty = empty && in_block[k - lo] == Complex{};
            }
            if (empty) continue;
            const Eigen::MatrixXcd &u = sectors[total];
            for (std::size_t k = lo; k <= hi; ++k) {
                Complex acc{};
                for (std::size_t j = lo; j <= hi; ++j)
                    acc += u(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) * in_block[j - lo];
                slot(k, total - k, kz) = acc;
            }
        }
    }
    return out;
}

HeraldedResult postselect(const ThreeModeState &state, std::size_t b_count, std::size_t c_count) {
    if (b_count >= state.cutoff() || c_count >= state.cutoff()) {
        throw FockError(ErrorKind::CutoffExceeded, "detector count outside the simulated basis");
    }
    std::vector<Complex> v(state.cutoff());
    double p = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = state.at(i, b_count, c_count);
        p += std::norm(v[i]);
    }
    return HeraldedResult{FockVector(std::move(v)), p};
}

HeraldedResult run_oracle(const FockVector &phi, const FockVector &psi, double theta1, double theta2,
                          std::size_t cutoff) {
    if (cutoff == 0) cutoff = phi.cutoff() + psi.cutoff() - 1;
    const ThreeModeState input = tensor_input(phi, psi, cutoff);
    const ThreeModeState after_first = apply_beam_splitter(input, BeamSplitter{theta1, Mode::A, Mode::B});
    const ThreeModeState output = apply_beam_splitter(after_first, BeamSplitter{theta2, Mode::C, Mode::B});
    const double leakage = std::abs(input.norm_squared() - output.norm_squared());
    if (leakage > 1e-10) {
        throw FockError(ErrorKind::CutoffTooSmall,
                        "three-mode cutoff " + std::to_string(cutoff) + " leaks " + std::to_string(leakage));
    }
    return postselect(output, 1, 0);
}

OracleComparison compare_with_closed_form(const FockVector &phi, const FockVector &psi, double theta1,
                                          double theta2, std::size_t cutoff) {
    const HeraldedResult oracle = run_oracle(phi, psi, theta1, theta2, cutoff);
    const HeraldedResult closed = filtered_state(phi, FilterConfig::from_ancilla(theta1, theta2, psi));
    OracleComparison cmp;
    const std::size_t dim = std::max(oracle.collapsed.cutoff(), closed.collapsed.cutoff());
    for (std::size_t i = 0; i < dim; ++i) {
        const Complex expected = kHeraldPhase * closed.collapsed.amplitude_or_zero(i);
        cmp.max_amplitude_deviation =
            std::max(cmp.max_amplitude_deviation, std::abs(oracle.collapsed.amplitude_or_zero(i) - expected));
    }
    cmp.oracle_probability = oracle.probability;
    cmp.closed_form_probability = closed.probability;
    cmp.probability_deviation = std::abs(oracle.probability - closed.probability);
    return cmp;
}

}  // namespace fockfilter
