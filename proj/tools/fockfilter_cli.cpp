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

// fockfilter: sweeps, single filter runs and the oracle cross-check.
//
// Exit codes: 0 ok, 1 usage error, 2 numeric failure in single-run mode.

#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fockfilter/errors.hpp"
#include "fockfilter/experiment.hpp"

namespace {

using fockfilter::ErrorKind;
using fockfilter::FockError;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumeric = 2;

struct SweepOptions {
    std::string config;
    std::vector<std::string> overrides;
    std::optional<std::size_t> cutoff;
    std::optional<std::size_t> steps;
    std::string out;
    std::string format = "csv";
    std::string svg;
    unsigned threads = 0;
};

struct FilterOptions {
    std::string state = "squeezed";
    double gamma_abs = 0.5;
    double beta = 0.0;
    double s = 1.0;
    double squeeze_phase = 0.0;
    double delta = 1.5707963267948966;
    std::size_t photons = 1;
    std::optional<std::size_t> hole;
    std::string parity;
    std::optional<double> alpha_re;
    std::optional<double> alpha_im;
    double theta1 = 0.7853981633974483;
    double theta2 = 0.7853981633974483;
    std::size_t cutoff = fockfilter::kDefaultCutoff;
    std::size_t show = 8;
    std::string out;
};

struct OracleOptions {
    std::uint64_t seed = 42;
    std::size_t trials = 20;
    std::size_t cutoff = 48;
    std::string format = "text";
    std::string out;
};

// Writes to `path`, or stdout when empty.
template <typename Fn>
void with_output(const std::string &path, Fn &&fn) {
    if (path.empty()) {
        fn(std::cout);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw FockError(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
    fn(file);
}

int run_sweep_command(const SweepOptions &opt) {
    fockfilter::KeyValues kv;
    if (!opt.config.empty()) kv = fockfilter::load_key_values(opt.config);
    for (const auto &item : opt.overrides) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw FockError(ErrorKind::InvalidArgument, "--set expects key=value");
        std::istringstream line(item);
        for (const auto &[key, value] : fockfilter::parse_key_values(line)) kv[key] = value;
    }
    if (opt.cutoff) kv["cutoff"] = std::to_string(*opt.cutoff);
    if (opt.steps) kv["steps"] = std::to_string(*opt.steps);
    const auto spec = fockfilter::SweepSpec::from_key_values(kv);
    const auto rows = fockfilter::run_sweep(spec, opt.threads);

    with_output(opt.out, [&](std::ostream &os) {
        if (opt.format == "json") {
            os << fockfilter::sweep_to_json(spec, rows).dump(2) << '\n';
        } else {
            fockfilter::write_sweep_csv(os, spec, rows);
        }
    });
    if (!opt.svg.empty()) {
        std::ofstream svg(opt.svg, std::ios::binary);
        if (!svg) throw FockError(ErrorKind::InvalidArgument, "cannot write '" + opt.svg + "'");
        fockfilter::write_sweep_svg(svg, spec, rows);
    }
    return kExitOk;
}

int run_filter_command(const FilterOptions &opt) {
    fockfilter::FilterRequest req;
    using Kind = fockfilter::StateSpec::Kind;
    if (opt.state == "squeezed") req.state.kind = Kind::SqueezedCoherent;
    else if (opt.state == "cat") req.state.kind = Kind::Cat;
    else if (opt.state == "coherent") req.state.kind = Kind::Coherent;
    else if (opt.state == "fock") req.state.kind = Kind::Fock;
    else throw FockError(ErrorKind::InvalidArgument, "--state must be squeezed, cat, coherent or fock");
    req.state.gamma_abs = opt.gamma_abs;
    req.state.beta = opt.beta;
    req.state.s = opt.s;
    req.state.squeeze_phase = opt.squeeze_phase;
    req.state.delta = opt.delta;
    req.state.photons = opt.photons;

    if (opt.hole) req.selector = fockfilter::HoleSelector::parse("n=" + std::to_string(*opt.hole));
    if (!opt.parity.empty()) {
        if (req.selector) throw FockError(ErrorKind::InvalidArgument, "--hole and --parity are exclusive");
        req.selector = fockfilter::HoleSelector::parse("parity=" + opt.parity);
    }
    if (opt.alpha_re || opt.alpha_im) req.alpha = std::complex<double>(opt.alpha_re.value_or(0.0), opt.alpha_im.value_or(0.0));
    req.theta1 = opt.theta1;
    req.theta2 = opt.theta2;
    req.cutoff = opt.cutoff;
    req.amplitudes_shown = opt.show;

    const auto report = fockfilter::run_filter(req);
    with_output(opt.out, [&](std::ostream &os) { os << report.body.dump(2) << '\n'; });
    if (report.exit_code != 0) std::cerr << "error: " << report.body["error"]["message"].get<std::string>() << '\n';
    return report.exit_code;
}

int run_oracle_command(const OracleOptions &opt) {
    const auto report = fockfilter::oracle_check(opt.seed, opt.trials, opt.cutoff);
    with_output(opt.out, [&](std::ostream &os) {
        if (opt.format == "json") os << report.to_json().dump(2) << '\n';
        else os << report.to_text();
    });
    return report.passed ? kExitOk : kExitNumeric;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Heralded Fock-state filtering with two beam splitters"};
    app.require_subcommand(1);
    app.set_version_flag("--version", fockfilter::kVersion);

    SweepOptions sweep;
    auto *sweep_cmd = app.add_subcommand("sweep", "Parameter sweep over an input-state family");
    sweep_cmd->add_option("--config", sweep.config, "key = value sweep description")->check(CLI::ExistingFile);
    sweep_cmd->add_option("--set", sweep.overrides, "Override one config key (key=value), repeatable");
    sweep_cmd->add_option("--cutoff", sweep.cutoff, "Fock cutoff");
    sweep_cmd->add_option("--steps", sweep.steps, "Sweep points");
    sweep_cmd->add_option("--out", sweep.out, "Output file (default stdout)");
    sweep_cmd->add_option("--format", sweep.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sweep_cmd->add_option("--svg", sweep.svg, "Also render an SVG line chart");
    sweep_cmd->add_option("--threads", sweep.threads, "Worker threads (0 = all cores)");

    FilterOptions filter;
    auto *filter_cmd = app.add_subcommand("filter", "Filter one input state and report the heralded output");
    filter_cmd->add_option("--state", filter.state, "squeezed | cat | coherent | fock");
    filter_cmd->add_option("--gamma-abs", filter.gamma_abs, "|gamma|");
    filter_cmd->add_option("--beta", filter.beta, "Phase of gamma");
    filter_cmd->add_option("--s", filter.s, "Squeezing magnitude");
    filter_cmd->add_option("--squeeze-phase", filter.squeeze_phase, "Squeezing phase");
    filter_cmd->add_option("--delta", filter.delta, "Cat relative phase");
    filter_cmd->add_option("--photons", filter.photons, "Photon number for --state fock");
    filter_cmd->add_option("--hole", filter.hole, "Remove Fock component n");
    filter_cmd->add_option("--parity", filter.parity, "Keep only even or odd components (cat)")
        ->check(CLI::IsMember({"even", "odd"}));
    filter_cmd->add_option("--alpha-re", filter.alpha_re, "Explicit ancilla amplitude, real part");
    filter_cmd->add_option("--alpha-im", filter.alpha_im, "Explicit ancilla amplitude, imaginary part");
    filter_cmd->add_option("--theta1", filter.theta1, "First splitter angle");
    filter_cmd->add_option("--theta2", filter.theta2, "Second splitter angle");
    filter_cmd->add_option("--cutoff", filter.cutoff, "Fock cutoff");
    filter_cmd->add_option("--show", filter.show, "Amplitudes to print");
    filter_cmd->add_option("--out", filter.out, "Output file (default stdout)");
    filter_cmd->add_option("--format", "Output format (json only)")->check(CLI::IsMember({"json"}));

    OracleOptions oracle;
    auto *oracle_cmd = app.add_subcommand("oracle-check", "Compare the closed form with the three-mode simulation");
    oracle_cmd->add_option("--seed", oracle.seed, "RNG seed");
    oracle_cmd->add_option("--trials", oracle.trials, "Random cases");
    oracle_cmd->add_option("--cutoff", oracle.cutoff, "Per-mode dimension of the three-mode tensor");
    oracle_cmd->add_option("--format", oracle.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    oracle_cmd->add_option("--out", oracle.out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*sweep_cmd) return run_sweep_command(sweep);
        if (*filter_cmd) return run_filter_command(filter);
        if (*oracle_cmd) return run_oracle_command(oracle);
    } catch (const FockError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::InvalidArgument ? kExitUsage : kExitNumeric;
    }
    return kExitUsage;
}
