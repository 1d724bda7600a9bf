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

#include "fockfilter/experiment.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "gtest/gtest.h"

#include "fockfilter/errors.hpp"

using namespace fockfilter;

namespace {

std::string config_path(const std::string &name) { return std::string(FOCKFILTER_CONFIG_DIR) + "/" + name; }

SweepSpec small_spec(const std::string &extra = "") {
    std::istringstream in("family = \"squeezed_coherent\"\nsweep = \"gamma_abs\"\nstart = 0.1\nstop = 0.5\n"
                          "steps = 5\ns = 0.5\ncutoff = 48\nholes = [\"n=0\", \"n=1\"]\n" +
                          extra);
    return SweepSpec::from_key_values(parse_key_values(in));
}

std::string csv_of(const SweepSpec &spec, unsigned threads) {
    std::ostringstream out;
    write_sweep_csv(out, spec, run_sweep(spec, threads));
    return out.str();
}

}  // namespace

TEST(key_values, parsing) {
    std::istringstream in("# comment\nname = \"a # b\"  # trailing\nsteps=5\nholes = [\"n=0\", 'parity=odd']\n\n");
    const auto kv = parse_key_values(in);
    EXPECT_EQ(kv.at("name"), "a # b");
    EXPECT_EQ(kv.at("steps"), "5");
    EXPECT_EQ(kv.at("holes"), "n=0,parity=odd");

    std::istringstream bad("just words\n");
    EXPECT_THROW(parse_key_values(bad), FockError);
}

TEST(hole_selector, round_trip) {
    for (const char *text : {"n=0", "n=12", "parity=even", "parity=odd"}) {
        EXPECT_EQ(HoleSelector::parse(text).label(), text);
    }
    EXPECT_THROW(HoleSelector::parse("n=-1"), FockError);
    EXPECT_THROW(HoleSelector::parse("hole"), FockError);
}

TEST(sweep_spec, angle_expressions) {
    const auto spec = small_spec("theta1 = \"pi/4\"\ntheta2 = \"0.5*pi/3\"\n");
    EXPECT_DOUBLE_EQ(spec.theta1, std::numbers::pi / 4);
    EXPECT_DOUBLE_EQ(spec.theta2, 0.5 * std::numbers::pi / 3);
}

TEST(sweep_spec, validation) {
    auto rejects = [](const std::string &extra) {
        try {
            small_spec(extra);
        } catch (const FockError &e) {
            return e.kind() == ErrorKind::InvalidArgument;
        }
        return false;
    };
    EXPECT_TRUE(rejects("steps = 1\n"));
    EXPECT_TRUE(rejects("start = 0.6\n"));
    EXPECT_TRUE(rejects("theta1 = 0\n"));
    EXPECT_TRUE(rejects("theta2 = \"pi/2\"\n"));
    EXPECT_TRUE(rejects("holes = [\"parity=odd\"]\n"));
    EXPECT_TRUE(rejects("colour = 3\n"));
    EXPECT_TRUE(rejects("steps = 2.5\n"));
    EXPECT_FALSE(rejects(""));
}

TEST(sweep_spec, default_holes_follow_family) {
    std::istringstream in("family = \"cat\"\n");
    const auto spec = SweepSpec::from_key_values(parse_key_values(in));
    ASSERT_EQ(spec.holes.size(), 2u);
    EXPECT_EQ(spec.holes[0].label(), "parity=even");
    EXPECT_EQ(spec.holes[1].label(), "parity=odd");
    EXPECT_EQ(spec.steps, 81u);
}

TEST(run_sweep, rows_in_sweep_order) {
    const auto spec = small_spec();
    const auto rows = run_sweep(spec, 3);
    ASSERT_EQ(rows.size(), 10u);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_DOUBLE_EQ(rows[i].sweep_value, spec.point(i / 2));
        EXPECT_EQ(rows[i].hole, i % 2 == 0 ? "n=0" : "n=1");
        EXPECT_TRUE(rows[i].flag.empty()) << rows[i].flag;
        ASSERT_TRUE(rows[i].p.has_value());
        EXPECT_GT(*rows[i].p, 0.0);
        EXPECT_LE(*rows[i].p, 1.0);
    }
    EXPECT_DOUBLE_EQ(rows.back().sweep_value, 0.5);
}

TEST(run_sweep, deterministic_across_thread_counts) {
    const auto spec = small_spec();
    const std::string once = csv_of(spec, 1);
    EXPECT_EQ(once, csv_of(spec, 4));
    EXPECT_EQ(once, csv_of(spec, 0));
}

TEST(run_sweep, undefined_cells_are_flagged) {
    // |γ| = 0: φ₁ = 0, so the n=1 hole is undefined and the input has ⟨n⟩ > 0.
    const auto spec = small_spec("start = 0.0\n");
    const auto rows = run_sweep(spec, 1);
    EXPECT_TRUE(rows[0].flag.empty());
    EXPECT_EQ(rows[1].flag, "HoleUndefined");
    EXPECT_FALSE(rows[1].p.has_value());

    std::ostringstream out;
    write_sweep_csv(out, spec, rows);
    EXPECT_NE(out.str().find("\n0,n=1,,,,,,,,"), std::string::npos) << out.str();
}

TEST(run_sweep, cutoff_too_small_is_a_flag_not_a_crash) {
    const auto spec = small_spec("s = 1.0\ncutoff = 32\n");
    const auto rows = run_sweep(spec, 2);
    for (const auto &row : rows) {
        EXPECT_EQ(row.flag, "input:CutoffTooSmall");
        EXPECT_FALSE(row.q.has_value());
    }
}

TEST(write_sweep_csv, header_and_number_format) {
    const auto spec = small_spec();
    const std::string csv = csv_of(spec, 1);
    EXPECT_EQ(csv.rfind("# fockfilter sweep\n# version=", 0), 0u);
    EXPECT_NE(csv.find("# cutoff=48\n"), std::string::npos);
    EXPECT_NE(csv.find("\ngamma_abs,hole,alpha_re,alpha_im,p,Q,var_x,var_y,mean_n,input_Q,input_var_x,"
                       "input_var_y,input_mean_n,flag\n"),
              std::string::npos);
    EXPECT_NE(csv.find("\n0.1,n=0,"), std::string::npos);
}

TEST(sweep_outputs, json_and_svg) {
    const auto spec = small_spec("plot = \"p\"\nplot_y_min = 0\nplot_y_max = 0.5\n");
    const auto rows = run_sweep(spec, 1);
    const auto j = sweep_to_json(spec, rows);
    EXPECT_EQ(j["rows"].size(), rows.size());
    EXPECT_EQ(j["metadata"]["cutoff"], "48");
    EXPECT_DOUBLE_EQ(j["rows"][0]["p"].get<double>(), *rows[0].p);

    std::ostringstream svg;
    write_sweep_svg(svg, spec, rows);
    const std::string text = svg.str();
    EXPECT_EQ(text.rfind("<svg", 0), 0u);
    EXPECT_NE(text.find("<polyline"), std::string::npos);
    EXPECT_NE(text.find("</svg>"), std::string::npos);
}

TEST(shipped_configs, parse_and_validate) {
    for (const char *name : {"fig2_fig3_squeezed_gamma.toml", "fig4_squeezed_s.toml", "fig5_fig7_cat_gamma.toml"}) {
        const auto spec = SweepSpec::from_key_values(load_key_values(config_path(name)));
        EXPECT_EQ(spec.steps, 81u) << name;
        EXPECT_DOUBLE_EQ(spec.theta1, std::numbers::pi / 4) << name;
    }
}

TEST(run_filter, hole_report) {
    FilterRequest req;
    req.state.kind = StateSpec::Kind::SqueezedCoherent;
    req.state.gamma_abs = 0.5;
    req.state.s = 1.0;
    req.selector = HoleSelector::parse("n=0");
    req.cutoff = 96;
    const auto report = run_filter(req);
    EXPECT_EQ(report.exit_code, 0);
    EXPECT_TRUE(report.body["error"].is_null());
    EXPECT_LE(report.body["hole_check"]["abs"].get<double>(), 1e-12);
    EXPECT_EQ(report.body["hole_check"]["status"], "hole verified");
    EXPECT_EQ(report.body["amplitudes"].size(), 8u);
}

TEST(run_filter, parity_report) {
    FilterRequest req;
    req.state.kind = StateSpec::Kind::Cat;
    req.state.gamma_abs = 1.0;
    req.selector = HoleSelector::parse("parity=odd");
    const auto report = run_filter(req);
    EXPECT_EQ(report.exit_code, 0);
    EXPECT_LE(report.body["parity_check"]["max_removed_amplitude"].get<double>(), 1e-12);
    EXPECT_TRUE(report.body["parity_check"]["verified"].get<bool>());
}

TEST(run_filter, coherent_input_degenerates) {
    FilterRequest req;
    req.state.kind = StateSpec::Kind::Coherent;
    req.state.gamma_abs = 1.0;
    req.selector = HoleSelector::parse("n=0");
    const auto report = run_filter(req);
    EXPECT_EQ(report.exit_code, 2);
    EXPECT_EQ(report.body["error"]["kind"], "ZeroProbability");
    EXPECT_NE(report.body["error"]["message"].get<std::string>().find("coherent"), std::string::npos);
}

TEST(run_filter, usage_errors_throw) {
    FilterRequest req;
    EXPECT_THROW(run_filter(req), FockError);
    req.selector = HoleSelector::parse("parity=even");
    EXPECT_THROW(run_filter(req), FockError);
}

TEST(oracle_check, seeded_and_reproducible) {
    const auto a = oracle_check(42, 20, 48);
    EXPECT_TRUE(a.passed) << a.to_text();
    EXPECT_LE(a.max_amplitude_deviation, 1e-9);
    EXPECT_LE(a.max_probability_deviation, 1e-10);
    const auto b = oracle_check(42, 20, 48);
    EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
    EXPECT_NE(a.to_json().dump(), oracle_check(43, 20, 48).to_json().dump());
    EXPECT_THROW(oracle_check(42, 0, 48), FockError);
}
