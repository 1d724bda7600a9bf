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

// Single-mode truncated Fock space: state vectors, ladder-operator matrices
// and the standard input-state constructors.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace fockfilter {

using Complex = std::complex<double>;

inline constexpr std::size_t kDefaultCutoff = 64;
/// |norm² − 1| allowed for a vector that claims to be normalized.
inline constexpr double kNormTolerance = 1e-12;
/// Maximum probability mass allowed in the last kTailWindow basis states.
inline constexpr double kTailTolerance = 1e-10;
inline constexpr std::size_t kTailWindow = 4;

/// Amplitudes c_0..c_{N-1} over the photon-number basis of one mode.
class FockVector {
public:
    FockVector() = default;
    /// Zero vector with `cutoff` basis states.
    explicit FockVector(std::size_t cutoff);
    explicit FockVector(std::vector<Complex> amplitudes);

    std::size_t cutoff() const noexcept { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
    const Complex &operator[](std::size_t n) const { return amplitudes_[n]; }
    /// c_n, or zero for n outside the basis.
    Complex amplitude_or_zero(std::size_t n) const noexcept {
        return n < amplitudes_.size() ? amplitudes_[n] : Complex{};
    }

    double norm_squared() const noexcept;
    bool is_normalized(double tolerance = kNormTolerance) const noexcept;

    /// Keeps the first `cutoff` amplitudes, or zero-pads up to `cutoff`.
    FockVector resized(std::size_t cutoff) const;
    FockVector scaled(Complex factor) const;

    Eigen::VectorXcd to_eigen() const;
    static FockVector from_eigen(const Eigen::VectorXcd &v);

private:
    std::vector<Complex> amplitudes_;
};

/// Dense N×N operator in the Fock basis.
class ModeOperatorMatrix {
public:
    explicit ModeOperatorMatrix(Eigen::MatrixXcd entries);

    std::size_t cutoff() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
    const Eigen::MatrixXcd &entries() const noexcept { return entries_; }
    Complex operator()(std::size_t row, std::size_t col) const {
        return entries_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    }

    ModeOperatorMatrix adjoint() const;
    FockVector apply(const FockVector &v) const;

    friend ModeOperatorMatrix operator*(const ModeOperatorMatrix &lhs, const ModeOperatorMatrix &rhs);

private:
    Eigen::MatrixXcd entries_;
};

FockVector fock_state(std::size_t n, std::size_t cutoff = kDefaultCutoff);
FockVector coherent_state(Complex alpha, std::size_t cutoff = kDefaultCutoff);
FockVector squeezed_coherent_state(Complex gamma, Complex xi, std::size_t cutoff = kDefaultCutoff);
/// C(|γ⟩ + e^{iδ}|−γ⟩).
FockVector cat_state(Complex gamma, double delta, std::size_t cutoff = kDefaultCutoff);

ModeOperatorMatrix annihilation_operator(std::size_t cutoff);
ModeOperatorMatrix creation_operator(std::size_t cutoff);
ModeOperatorMatrix number_operator(std::size_t cutoff);
ModeOperatorMatrix identity_operator(std::size_t cutoff);

// Both are exponentiated at the padded cutoff 2N and cut back to the
// leading N×N block.
ModeOperatorMatrix displacement_operator(Complex gamma, std::size_t cutoff = kDefaultCutoff);
ModeOperatorMatrix squeeze_operator(Complex xi, std::size_t cutoff = kDefaultCutoff);

/// Conjugate-linear in `u`.
Complex inner_product(const FockVector &u, const FockVector &v);
double norm(const FockVector &u);
FockVector normalize(const FockVector &u);
/// Σ |c_n|² over the last `k` basis states.
double tail_mass(const FockVector &u, std::size_t k);

}  // namespace fockfilter
