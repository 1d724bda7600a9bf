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

#include "fockfilter/fock.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "fockfilter/errors.hpp"

namespace fockfilter {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::CutoffExceeded: return "CutoffExceeded";
        case ErrorKind::CutoffTooSmall: return "CutoffTooSmall";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::ZeroVector: return "ZeroVector";
        case ErrorKind::NotNormalized: return "NotNormalized";
        case ErrorKind::DegenerateSplitter: return "DegenerateSplitter";
        case ErrorKind::ZeroProbability: return "ZeroProbability";
        case ErrorKind::OperatorFormUndefined: return "OperatorFormUndefined";
        case ErrorKind::HoleUndefined: return "HoleUndefined";
        case ErrorKind::ParityUndefined: return "ParityUndefined";
        case ErrorKind::UndefinedForVacuum: return "UndefinedForVacuum";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

namespace {

using Amplitudes = std::vector<Complex>;
using Generator = std::function<void(const Amplitudes &, Amplitudes &)>;

void require_cutoff(std::size_t cutoff, std::size_t minimum, const char *what) {
    if (cutoff < minimum) {
        throw FockError(ErrorKind::InvalidArgument,
                        std::string(what) + " needs cutoff >= " + std::to_string(minimum));
    }
}

double l2(const Amplitudes &v) {
    double s = 0.0;
    for (const auto &c : v) s += std::norm(c);
    return std::sqrt(s);
}

// exp(G)·v by Taylor series on sub-steps of size 1/steps, where `bound` is
// an upper bound on the operator norm of G. Each sub-step has ‖G/steps‖ ≤ 1.
Amplitudes exp_action(const Generator &generator, double bound, Amplitudes v) {
    const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(bound)));
    const double inv_steps = 1.0 / static_cast<double>(steps);
    Amplitudes term(v.size());
    Amplitudes next(v.size());
    for (std::size_t step = 0; step < steps; ++step) {
        term = v;
        for (int k = 1; k <= 80; ++k) {
            generator(term, next);
            const double scale = inv_steps / k;
            for (std::size_t i = 0; i < next.size(); ++i) {
                term[i] = next[i] * scale;
                v[i] += term[i];
            }
            if (l2(term) <= 1e-18 * l2(v)) break;
        }
    }
    return v;
}

// ξ* a² − ξ a†², halved.
Generator squeeze_generator(Complex xi) {
    return [xi](const Amplitudes &in, Amplitudes &out) {
        const std::size_t dim = in.size();
        for (std::size_t n = 0; n < dim; ++n) {
            Complex acc{};
            if (n + 2 < dim) acc += std::conj(xi) * std::sqrt(double(n + 1) * double(n + 2)) * in[n + 2];
            if (n >= 2) acc -= xi * std::sqrt(double(n) * double(n - 1)) * in[n - 2];
            out[n] = 0.5 * acc;
        }
    };
}

// γ a† − γ* a.
Generator displacement_generator(Complex gamma) {
    return [gamma](const Amplitudes &in, Amplitudes &out) {
        const std::size_t dim = in.size();
        for (std::size_t n = 0; n < dim; ++n) {
            Complex acc{};
            if (n >= 1) acc += gamma * std::sqrt(double(n)) * in[n - 1];
            if (n + 1 < dim) acc -= std::conj(gamma) * std::sqrt(double(n + 1)) * in[n + 1];
            out[n] = acc;
        }
    };
}

double mass_from(const Amplitudes &v, std::size_t first) {
    double s = 0.0;
    for (std::size_t n = first; n < v.size(); ++n) s += std::norm(v[n]);
    return s;
}

// Truncates a padded amplitude list to `cutoff` after checking that the
// mass from index cutoff − kTailWindow upward stays below kTailTolerance.
FockVector truncate_checked(Amplitudes padded, std::size_t cutoff, const char *what) {
    const double tail = mass_from(padded, cutoff - kTailWindow);
    if (tail > kTailTolerance) {
        throw FockError(ErrorKind::CutoffTooSmall,
                        std::string(what) + ": tail mass " + std::to_string(tail) + " exceeds 1e-10 at cutoff " +
                            std::to_string(cutoff));
    }
    padded.resize(cutoff);
    return normalize(FockVector(std::move(padded)));
}

Amplitudes coherent_amplitudes(Complex alpha, std::size_t dim) {
    Amplitudes c(dim);
    c[0] = std::exp(-0.5 * std::norm(alpha));
    for (std::size_t n = 1; n < dim; ++n) c[n] = c[n - 1] * alpha / std::sqrt(double(n));
    return c;
}

Eigen::MatrixXcd ladder(std::size_t cutoff) {
    const auto dim = static_cast<Eigen::Index>(cutoff);
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

}  // namespace

FockVector::FockVector(std::size_t cutoff) : amplitudes_(cutoff) {
    if (cutoff == 0) throw FockError(ErrorKind::InvalidArgument, "cutoff must be positive");
}

FockVector::FockVector(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.empty()) throw FockError(ErrorKind::InvalidArgument, "cutoff must be positive");
}

double FockVector::norm_squared() const noexcept {
    return std::accumulate(amplitudes_.begin(), amplitudes_.end(), 0.0,
                           [](double acc, const Complex &c) { return acc + std::norm(c); });
}

bool FockVector::is_normalized(double tolerance) const noexcept {
    return std::abs(norm_squared() - 1.0) <= tolerance;
}

FockVector FockVector::resized(std::size_t cutoff) const {
    auto copy = amplitudes_;
    copy.resize(cutoff);
    return FockVector(std::move(copy));
}

FockVector FockVector::scaled(Complex factor) const {
    auto copy = amplitudes_;
    for (auto &c : copy) c *= factor;
    return FockVector(std::move(copy));
}

Eigen::VectorXcd FockVector::to_eigen() const {
    return Eigen::Map<const Eigen::VectorXcd>(amplitudes_.data(), static_cast<Eigen::Index>(amplitudes_.size()));
}

FockVector FockVector::from_eigen(const Eigen::VectorXcd &v) {
    return FockVector(Amplitudes(v.data(), v.data() + v.size()));
}

ModeOperatorMatrix::ModeOperatorMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
        throw FockError(ErrorKind::DimensionMismatch, "operator matrix must be square and non-empty");
    }
}

ModeOperatorMatrix ModeOperatorMatrix::adjoint() const { return ModeOperatorMatrix(entries_.adjoint()); }

FockVector ModeOperatorMatrix::apply(const FockVector &v) const {
    if (v.cutoff() != cutoff()) throw FockError(ErrorKind::DimensionMismatch, "operator and vector cutoffs differ");
    return FockVector::from_eigen(entries_ * v.to_eigen());
}

ModeOperatorMatrix operator*(const ModeOperatorMatrix &lhs, const ModeOperatorMatrix &rhs) {
    if (lhs.cutoff() != rhs.cutoff()) throw FockError(ErrorKind::DimensionMismatch, "operator cutoffs differ");
    return ModeOperatorMatrix(lhs.entries_ * rhs.entries_);
}

FockVector fock_state(std::size_t n, std::size_t cutoff) {
    if (n >= cutoff) {
        throw FockError(ErrorKind::CutoffExceeded,
                        "|" + std::to_string(n) + "> is outside a basis of size " + std::to_string(cutoff));
    }
    Amplitudes c(cutoff);
    c[n] = 1.0;
    return FockVector(std::move(c));
}

FockVector coherent_state(Complex alpha, std::size_t cutoff) {
    require_cutoff(cutoff, kTailWindow + 1, "coherent_state");
    return truncate_checked(coherent_amplitudes(alpha, 2 * cutoff), cutoff, "coherent_state");
}

FockVector squeezed_coherent_state(Complex gamma, Complex xi, std::size_t cutoff) {
    require_cutoff(cutoff, kTailWindow + 1, "squeezed_coherent_state");
    const std::size_t padded = 2 * cutoff;
    Amplitudes v(padded);
    v[0] = 1.0;
    const double dim = static_cast<double>(padded);
    v = exp_action(squeeze_generator(xi), std::abs(xi) * dim, std::move(v));
    v = exp_action(displacement_generator(gamma), 2.0 * std::abs(gamma) * std::sqrt(dim), std::move(v));
    return truncate_checked(std::move(v), cutoff, "squeezed_coherent_state");
}

FockVector cat_state(Complex gamma, double delta, std::size_t cutoff) {
    require_cutoff(cutoff, kTailWindow + 1, "cat_state");
    const Complex phase = std::polar(1.0, delta);
    const double denom = 2.0 + 2.0 * std::cos(delta) * std::exp(-2.0 * std::norm(gamma));
    if (denom < 1e-14) throw FockError(ErrorKind::ZeroVector, "cat superposition vanishes for these parameters");
    const double c_norm = 1.0 / std::sqrt(denom);
    Amplitudes c = coherent_amplitudes(gamma, 2 * cutoff);
    for (std::size_t n = 0; n < c.size(); ++n) {
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        c[n] *= c_norm * (1.0 + phase * sign);
    }
    return truncate_checked(std::move(c), cutoff, "cat_state");
}

ModeOperatorMatrix annihilation_operator(std::size_t cutoff) { return ModeOperatorMatrix(ladder(cutoff)); }

ModeOperatorMatrix creation_operator(std::size_t cutoff) { return ModeOperatorMatrix(ladder(cutoff).adjoint()); }

ModeOperatorMatrix number_operator(std::size_t cutoff) {
    Eigen::VectorXcd diag(static_cast<Eigen::Index>(cutoff));
    for (Eigen::Index n = 0; n < diag.size(); ++n) diag(n) = double(n);
    return ModeOperatorMatrix(diag.asDiagonal());
}

ModeOperatorMatrix identity_operator(std::size_t cutoff) {
    const auto dim = static_cast<Eigen::Index>(cutoff);
    return ModeOperatorMatrix(Eigen::MatrixXcd::Identity(dim, dim));
}

ModeOperatorMatrix displacement_operator(Complex gamma, std::size_t cutoff) {
    require_cutoff(cutoff, 2, "displacement_operator");
    const Eigen::MatrixXcd a = ladder(2 * cutoff);
    const Eigen::MatrixXcd generator = gamma * a.adjoint() - std::conj(gamma) * a;
    const Eigen::MatrixXcd full = generator.exp();
    const auto dim = static_cast<Eigen::Index>(cutoff);
    return ModeOperatorMatrix(full.topLeftCorner(dim, dim));
}

ModeOperatorMatrix squeeze_operator(Complex xi, std::size_t cutoff) {
    require_cutoff(cutoff, kTailWindow + 1, "squeeze_operator");
    const Eigen::MatrixXcd a = ladder(2 * cutoff);
    const Eigen::MatrixXcd a2 = a * a;
    const Eigen::MatrixXcd generator = 0.5 * (std::conj(xi) * a2 - xi * a2.adjoint());
    const Eigen::MatrixXcd full = generator.exp();
    double tail = 0.0;
    for (Eigen::Index n = static_cast<Eigen::Index>(cutoff - kTailWindow); n < full.rows(); ++n) {
        tail += std::norm(full(n, 0));
    }
    if (tail > kTailTolerance) {
        throw FockError(ErrorKind::CutoffTooSmall, "squeeze_operator: tail mass of S|0> is " + std::to_string(tail) +
                                                       " at cutoff " + std::to_string(cutoff));
    }
    const auto dim = static_cast<Eigen::Index>(cutoff);
    return ModeOperatorMatrix(full.topLeftCorner(dim, dim));
}

Complex inner_product(const FockVector &u, const FockVector &v) {
    if (u.cutoff() != v.cutoff()) throw FockError(ErrorKind::DimensionMismatch, "inner_product: cutoffs differ");
    Complex acc{};
    for (std::size_t n = 0; n < u.cutoff(); ++n) acc += std::conj(u[n]) * v[n];
    return acc;
}

double norm(const FockVector &u) { return std::sqrt(u.norm_squared()); }

FockVector normalize(const FockVector &u) {
    const double length = norm(u);
    if (length < 1e-14) throw FockError(ErrorKind::ZeroVector, "cannot normalize a zero vector");
    return u.scaled(1.0 / length);
}

double tail_mass(const FockVector &u, std::size_t k) {
    const std::size_t first = k >= u.cutoff() ? 0 : u.cutoff() - k;
    double s = 0.0;
    for (std::size_t n = first; n < u.cutoff(); ++n) s += std::norm(u[n]);
    return s;
}

}  // namespace fockfilter
