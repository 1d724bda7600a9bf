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

// Parameter sweeps, single filter runs and the oracle cross-check behind the
// command-line tool, kept in the library so tests can drive them directly.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fockfilter/filter.hpp"
#include "fockfilter/fock.hpp"

namespace fockfilter {

inline constexpr const char *kVersion = "0.1.0";

/// Flat `key = value` pairs from a TOML-style file. Strings may be quoted;
/// `[a, b]` lists are kept as comma-joined text. `#` starts a comment.
using KeyValues = std::map<std::string, std::string>;
KeyValues parse_key_values(std::istream &in);
KeyValues load_key_values(const std::string &path);

enum class InputFamily { SqueezedCoherent, Cat };
enum class SweepVariable { GammaAbs, SqueezeMagnitude };

/// Which component(s) the ancilla amplitude is tuned to remove.
struct HoleSelector {
    enum class Kind { Index, Parity };
    Kind kind = Kind::Index;
    std::size_t index = 0;
    Parity keep = Parity::Even;

    /// "n=3", "parity=even", "parity=odd".
    static HoleSelector parse(const std::string &text);
    std::string label() const;
};

struct SweepSpec {
    std::string name = "sweep";
    InputFamily family = InputFamily::SqueezedCoherent;
    SweepVariable variable = SweepVariable::GammaAbs;
    double start = 0.0;
    double stop = 2.0;
    std::size_t steps = 81;
    double gamma_abs = 0.5;
    double beta = 0.0;
    double s = 1.0;
    double squeeze_phase = 0.0;
    double delta = 1.5707963267948966;
    double theta1 = 0.7853981633974483;
    double theta2 = 0.7853981633974483;
    std::size_t cutoff = kDefaultCutoff;
    std::vector<HoleSelector> holes;
    // SVG rendering: metric column and fixed vertical range.
    std::string plot = "Q";
    double plot_y_min = -1.0;
    double plot_y_max = 1.0;

    /// Unknown keys and malformed values throw FockError(InvalidArgument).
    static SweepSpec from_key_values(const KeyValues &kv);
    void validate() const;
    double point(std::size_t i) const;
    KeyValues echo() const;
};

struct SweepRow {
    double sweep_value = 0.0;
    std::string hole;
    std::optional<Complex> alpha;
    std::optional<double> p;
    std::optional<double> q;
    std::optional<double> var_x;
    std::optional<double> var_y;
    std::optional<double> mean_n;
    std::optional<double> input_q;
    std::optional<double> input_var_x;
    std::optional<double> input_var_y;
    std::optional<double> input_mean_n;
    /// Empty when every cell is defined, otherwise ';'-joined error kinds.
    std::string flag;
};

/// One row per sweep point per hole selector, in sweep order. Points are
/// evaluated on `threads` workers (0 = hardware concurrency).
std::vector<SweepRow> run_sweep(const SweepSpec &spec, unsigned threads = 0);

void write_sweep_csv(std::ostream &out, const SweepSpec &spec, const std::vector<SweepRow> &rows);
nlohmann::json sweep_to_json(const SweepSpec &spec, const std::vector<SweepRow> &rows);
/// Line chart of `spec.plot` against the sweep variable, one series per hole
/// plus the input-state reference, on fixed axes.
void write_sweep_svg(std::ostream &out, const SweepSpec &spec, const std::vector<SweepRow> &rows);

/// Input state for a single filter run.
struct StateSpec {
    enum class Kind { SqueezedCoherent, Cat, Coherent, Fock };
    Kind kind = Kind::SqueezedCoherent;
    double gamma_abs = 0.5;
    double beta = 0.0;
    double s = 1.0;
    double squeeze_phase = 0.0;
    double delta = 1.5707963267948966;
    std::size_t photons = 1;

    FockVector build(std::size_t cutoff) const;
    Complex gamma() const;
    nlohmann::json to_json() const;
};

struct FilterRequest {
    StateSpec state;
    std::optional<HoleSelector> selector;
    std::optional<Complex> alpha;
    double theta1 = 0.7853981633974483;
    double theta2 = 0.7853981633974483;
    std::size_t cutoff = kDefaultCutoff;
    std::size_t amplitudes_shown = 8;
};

struct FilterReport {
    nlohmann::json body;
    /// 0 ok, 2 numeric failure.
    int exit_code = 0;
};

/// Never throws on numeric failures; those land in body["error"].
FilterReport run_filter(const FilterRequest &request);

struct OracleCheckReport {
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::size_t cutoff = 0;
    double max_amplitude_deviation = 0.0;
    double max_probability_deviation = 0.0;
    std::vector<double> trial_amplitude_deviation;
    std::vector<double> trial_probability_deviation;
    bool passed = false;
    std::string error;

    nlohmann::json to_json() const;
    std::string to_text() const;
};

inline constexpr double kOracleAmplitudeTolerance = 1e-9;
inline constexpr double kOracleProbabilityTolerance = 1e-10;
/// Random inputs carry at most this many photons.
inline constexpr std::size_t kOracleInputPhotons = 12;

/// Seeded random (φ, α, θ₁, θ₂) cases through both routes. `cutoff` is the
/// per-mode dimension of the three-mode tensor; the coherent ancilla is built
/// at cutoff − kOracleInputPhotons so no photon-number sector is truncated.
OracleCheckReport oracle_check(std::uint64_t seed, std::size_t trials, std::size_t cutoff);

}  // namespace fockfilter
