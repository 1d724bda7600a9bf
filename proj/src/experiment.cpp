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

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "fockfilter/circuit.hpp"
#include "fockfilter/errors.hpp"
#include "fockfilter/metrics.hpp"

namespace fockfilter {

namespace {

[[noreturn]] void invalid(const std::string &message) { throw FockError(ErrorKind::InvalidArgument, message); }

std::string trim(const std::string &s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string unquote(const std::string &s) {
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
        return s.substr(1, s.size() - 2);
    }
    return s;
}

double parse_plain(const std::string &text, const std::string &key) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception &) {
        invalid("'" + key + "': not a number: '" + text + "'");
    }
    if (used != text.size()) invalid("'" + key + "': trailing characters in '" + text + "'");
    return value;
}

// Accepts plain numbers and the forms pi, pi/m, k*pi, k*pi/m.
double parse_real(const std::string &raw, const std::string &key) {
    const std::string text = trim(raw);
    const auto pos = text.find("pi");
    if (pos == std::string::npos) return parse_plain(text, key);
    double value = std::numbers::pi;
    const std::string head = trim(text.substr(0, pos));
    const std::string tail = trim(text.substr(pos + 2));
    if (!head.empty()) {
        if (head.back() != '*') invalid("'" + key + "': expected k*pi in '" + text + "'");
        value *= parse_plain(trim(head.substr(0, head.size() - 1)), key);
    }
    if (!tail.empty()) {
        if (tail.front() != '/') invalid("'" + key + "': expected pi/m in '" + text + "'");
        value /= parse_plain(trim(tail.substr(1)), key);
    }
    return value;
}

std::size_t parse_count(const std::string &text, const std::string &key) {
    const double value = parse_plain(trim(text), key);
    if (value < 0 || value != std::floor(value)) invalid("'" + key + "': expected a non-negative integer");
    return static_cast<std::size_t>(value);
}

std::vector<std::string> split_list(const std::string &text) {
    std::vector<std::string> items;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = unquote(trim(item));
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

std::string format_number(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", value + 0.0);
    return buf;
}

std::string csv_field(const std::string &text) {
    if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
    std::string quoted = "\"";
    for (char c : text) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + '"';
}

std::string cell(const std::optional<double> &v) { return v ? format_number(*v) : std::string(); }

nlohmann::json json_cell(const std::optional<double> &v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

nlohmann::json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

void add_flag(std::string &flag, const std::string &entry) {
    if (!flag.empty()) flag += ';';
    flag += entry;
}

const char *family_name(InputFamily f) { return f == InputFamily::Cat ? "cat" : "squeezed_coherent"; }

const char *variable_name(SweepVariable v) { return v == SweepVariable::SqueezeMagnitude ? "s" : "gamma_abs"; }

}  // namespace

KeyValues parse_key_values(std::istream &in) {
    KeyValues kv;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        // '#' inside quotes is kept.
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') quoted = !quoted;
            if (line[i] == '#' && !quoted) {
                line.resize(i);
                break;
            }
        }
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) invalid("config line " + std::to_string(number) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) invalid("config line " + std::to_string(number) + ": empty key");
        if (!value.empty() && value.front() == '[') {
            if (value.back() != ']') invalid("config line " + std::to_string(number) + ": unterminated list");
            std::string joined;
            for (const auto &item : split_list(value.substr(1, value.size() - 2))) {
                if (!joined.empty()) joined += ',';
                joined += item;
            }
            value = joined;
        } else {
            value = unquote(value);
        }
        kv[key] = value;
    }
    return kv;
}

KeyValues load_key_values(const std::string &path) {
    std::ifstream in(path);
    if (!in) invalid("cannot open config file '" + path + "'");
    return parse_key_values(in);
}

HoleSelector HoleSelector::parse(const std::string &raw) {
    const std::string text = trim(raw);
    HoleSelector sel;
    if (text.rfind("n=", 0) == 0) {
        sel.kind = Kind::Index;
        sel.index = parse_count(text.substr(2), "holes");
    } else if (text == "parity=even") {
        sel.kind = Kind::Parity;
        sel.keep = Parity::Even;
    } else if (text == "parity=odd") {
        sel.kind = Kind::Parity;
        sel.keep = Parity::Odd;
    } else {
        invalid("unknown hole selector '" + text + "' (use n=<k>, parity=even or parity=odd)");
    }
    return sel;
}

std::string HoleSelector::label() const {
    if (kind == Kind::Index) return "n=" + std::to_string(index);
    return keep == Parity::Even ? "parity=even" : "parity=odd";
}

SweepSpec SweepSpec::from_key_values(const KeyValues &kv) {
    SweepSpec spec;
    bool holes_given = false;
    for (const auto &[key, value] : kv) {
        if (key == "name") {
            spec.name = value;
        } else if (key == "family") {
            if (value == "squeezed_coherent") spec.family = InputFamily::SqueezedCoherent;
            else if (value == "cat") spec.family = InputFamily::Cat;
            else invalid("family must be squeezed_coherent or cat, got '" + value + "'");
        } else if (key == "sweep") {
            if (value == "gamma_abs") spec.variable = SweepVariable::GammaAbs;
            else if (value == "s") spec.variable = SweepVariable::SqueezeMagnitude;
            else invalid("sweep must be gamma_abs or s, got '" + value + "'");
        } else if (key == "start") {
            spec.start = parse_real(value, key);
        } else if (key == "stop") {
            spec.stop = parse_real(value, key);
        } else if (key == "steps") {
            spec.steps = parse_count(value, key);
        } else if (key == "gamma_abs") {
            spec.gamma_abs = parse_real(value, key);
        } else if (key == "beta") {
            spec.beta = parse_real(value, key);
        } else if (key == "s") {
            spec.s = parse_real(value, key);
        } else if (key == "squeeze_phase") {
            spec.squeeze_phase = parse_real(value, key);
        } else if (key == "delta") {
            spec.delta = parse_real(value, key);
        } else if (key == "theta1") {
            spec.theta1 = parse_real(value, key);
        } else if (key == "theta2") {
            spec.theta2 = parse_real(value, key);
        } else if (key == "cutoff") {
            spec.cutoff = parse_count(value, key);
        } else if (key == "holes") {
            holes_given = true;
            spec.holes.clear();
            for (const auto &item : split_list(value)) spec.holes.push_back(HoleSelector::parse(item));
        } else if (key == "plot") {
            spec.plot = value;
        } else if (key == "plot_y_min") {
            spec.plot_y_min = parse_real(value, key);
        } else if (key == "plot_y_max") {
            spec.plot_y_max = parse_real(value, key);
        } else {
            invalid("unknown sweep key '" + key + "'");
        }
    }
    if (!holes_given) {
        if (spec.family == InputFamily::Cat) {
            spec.holes = {HoleSelector::parse("parity=even"), HoleSelector::parse("parity=odd")};
        } else {
            spec.holes = {HoleSelector::parse("n=0"), HoleSelector::parse("n=1")};
        }
    }
    spec.validate();
    return spec;
}

void SweepSpec::validate() const {
    if (steps < 2) invalid("steps must be at least 2");
    if (!(start < stop)) invalid("sweep range needs start < stop");
    const double half_pi = std::numbers::pi / 2;
    for (double theta : {theta1, theta2}) {
        if (!(theta > 0.0 && theta < half_pi)) invalid("beam-splitter angles must lie in (0, pi/2)");
    }
    if (cutoff < kTailWindow + 2) invalid("cutoff too small to hold any state");
    if (holes.empty()) invalid("at least one hole selector is required");
    for (const auto &h : holes) {
        if (h.kind == HoleSelector::Kind::Parity && family != InputFamily::Cat) {
            invalid("parity selectors apply to the cat family only");
        }
    }
    if (family == InputFamily::Cat && variable == SweepVariable::SqueezeMagnitude) {
        invalid("the cat family has no squeezing parameter to sweep");
    }
    if (start < 0.0) invalid("sweep variable is a magnitude and must be non-negative");
    if (plot != "p" && plot != "Q" && plot != "var_x" && plot != "var_y" && plot != "mean_n") {
        invalid("plot must be one of p, Q, var_x, var_y, mean_n");
    }
    if (!(plot_y_min < plot_y_max)) invalid("plot_y_min must be below plot_y_max");
}

double SweepSpec::point(std::size_t i) const {
    if (i + 1 == steps) return stop;
    return start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

KeyValues SweepSpec::echo() const {
    KeyValues kv;
    kv["name"] = name;
    kv["family"] = family_name(family);
    kv["sweep"] = variable_name(variable);
    kv["start"] = format_number(start);
    kv["stop"] = format_number(stop);
    kv["steps"] = std::to_string(steps);
    if (variable != SweepVariable::GammaAbs) kv["gamma_abs"] = format_number(gamma_abs);
    kv["beta"] = format_number(beta);
    if (family == InputFamily::SqueezedCoherent) {
        if (variable != SweepVariable::SqueezeMagnitude) kv["s"] = format_number(s);
        kv["squeeze_phase"] = format_number(squeeze_phase);
    } else {
        kv["delta"] = format_number(delta);
    }
    kv["theta1"] = format_number(theta1);
    kv["theta2"] = format_number(theta2);
    kv["cutoff"] = std::to_string(cutoff);
    std::string hole_list;
    for (const auto &h : holes) hole_list += (hole_list.empty() ? "" : ";") + h.label();
    kv["holes"] = hole_list;
    return kv;
}

namespace {

std::vector<SweepRow> evaluate_point(const SweepSpec &spec, double value) {
    double gamma_abs = spec.gamma_abs;
    double s = spec.s;
    if (spec.variable == SweepVariable::GammaAbs) gamma_abs = value;
    else s = value;
    const Complex gamma = std::polar(gamma_abs, spec.beta);

    std::vector<SweepRow> rows(spec.holes.size());
    for (std::size_t h = 0; h < rows.size(); ++h) {
        rows[h].sweep_value = value;
        rows[h].hole = spec.holes[h].label();
    }

    std::optional<FockVector> input;
    std::string input_flag;
    try {
        input = spec.family == InputFamily::Cat
                    ? cat_state(gamma, spec.delta, spec.cutoff)
                    : squeezed_coherent_state(gamma, std::polar(s, spec.squeeze_phase), spec.cutoff);
    } catch (const FockError &e) {
        for (auto &row : rows) row.flag = "input:" + std::string(to_string(e.kind()));
        return rows;
    }

    std::optional<double> in_q;
    std::optional<double> in_vx;
    std::optional<double> in_vy;
    const double in_n = mean_photon_number(*input);
    try {
        in_q = mandel_q(*input);
    } catch (const FockError &e) {
        add_flag(input_flag, "input:" + std::string(to_string(e.kind())));
    }
    try {
        const auto quad = quadratures(*input);
        in_vx = quad.var_x;
        in_vy = quad.var_y;
    } catch (const FockError &e) {
        add_flag(input_flag, "input:" + std::string(to_string(e.kind())));
    }

    for (std::size_t h = 0; h < rows.size(); ++h) {
        SweepRow &row = rows[h];
        row.input_q = in_q;
        row.input_var_x = in_vx;
        row.input_var_y = in_vy;
        row.input_mean_n = in_n;
        row.flag = input_flag;
        const HoleSelector &sel = spec.holes[h];
        try {
            const Complex alpha = sel.kind == HoleSelector::Kind::Index
                                      ? alpha_for_hole(*input, sel.index, spec.theta1, spec.theta2)
                                      : alpha_for_parity(gamma, spec.delta, spec.theta1, spec.theta2, sel.keep);
            row.alpha = alpha;
            const auto result =
                filtered_state(*input, FilterConfig::with_coherent_ancilla(spec.theta1, spec.theta2, alpha));
            row.p = result.probability;
            const FockVector out = result.normalized();
            row.mean_n = mean_photon_number(out);
            try {
                row.q = mandel_q(out);
            } catch (const FockError &e) {
                add_flag(row.flag, to_string(e.kind()).data());
            }
            const auto quad = quadratures(out);
            row.var_x = quad.var_x;
            row.var_y = quad.var_y;
        } catch (const FockError &e) {
            add_flag(row.flag, to_string(e.kind()).data());
        }
    }
    return rows;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec &spec, unsigned threads) {
    spec.validate();
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(spec.steps));

    std::vector<std::vector<SweepRow>> per_point(spec.steps);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < spec.steps; i = next++) per_point[i] = evaluate_point(spec, spec.point(i));
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }

    std::vector<SweepRow> rows;
    rows.reserve(spec.steps * spec.holes.size());
    for (auto &point : per_point) {
        for (auto &row : point) rows.push_back(std::move(row));
    }
    return rows;
}

void write_sweep_csv(std::ostream &out, const SweepSpec &spec, const std::vector<SweepRow> &rows) {
    out << "# fockfilter sweep\n";
    out << "# version=" << kVersion << '\n';
    for (const auto &[key, value] : spec.echo()) out << "# " << key << '=' << value << '\n';
    out << variable_name(spec.variable)
        << ",hole,alpha_re,alpha_im,p,Q,var_x,var_y,mean_n,input_Q,input_var_x,input_var_y,input_mean_n,flag\n";
    for (const auto &row : rows) {
        out << format_number(row.sweep_value) << ',' << csv_field(row.hole) << ','
            << (row.alpha ? format_number(row.alpha->real()) : "") << ','
            << (row.alpha ? format_number(row.alpha->imag()) : "") << ',' << cell(row.p) << ',' << cell(row.q)
            << ',' << cell(row.var_x) << ',' << cell(row.var_y) << ',' << cell(row.mean_n) << ','
            << cell(row.input_q) << ',' << cell(row.input_var_x) << ',' << cell(row.input_var_y) << ','
            << cell(row.input_mean_n) << ',' << csv_field(row.flag) << '\n';
    }
}

nlohmann::json sweep_to_json(const SweepSpec &spec, const std::vector<SweepRow> &rows) {
    nlohmann::json meta = {{"version", kVersion}};
    for (const auto &[key, value] : spec.echo()) meta[key] = value;
    nlohmann::json out_rows = nlohmann::json::array();
    for (const auto &row : rows) {
        out_rows.push_back({
            {variable_name(spec.variable), row.sweep_value},
            {"hole", row.hole},
            {"alpha", row.alpha ? complex_json(*row.alpha) : nlohmann::json(nullptr)},
            {"p", json_cell(row.p)},
            {"Q", json_cell(row.q)},
            {"var_x", json_cell(row.var_x)},
            {"var_y", json_cell(row.var_y)},
            {"mean_n", json_cell(row.mean_n)},
            {"input_Q", json_cell(row.input_q)},
            {"input_var_x", json_cell(row.input_var_x)},
            {"input_var_y", json_cell(row.input_var_y)},
            {"input_mean_n", json_cell(row.input_mean_n)},
            {"flag", row.flag},
        });
    }
    return {{"metadata", meta}, {"rows", out_rows}};
}

namespace {

std::optional<double> plotted(const SweepRow &row, const std::string &metric, bool input) {
    if (metric == "p") return input ? std::optional<double>{} : row.p;
    if (metric == "Q") return input ? row.input_q : row.q;
    if (metric == "var_x") return input ? row.input_var_x : row.var_x;
    if (metric == "var_y") return input ? row.input_var_y : row.var_y;
    return input ? row.input_mean_n : row.mean_n;
}

std::string fixed3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v + 0.0);
    return buf;
}

}  // namespace

void write_sweep_svg(std::ostream &out, const SweepSpec &spec, const std::vector<SweepRow> &rows) {
    constexpr double width = 640, height = 420, left = 70, right = 20, top = 30, bottom = 50;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;
    auto sx = [&](double x) { return left + plot_w * (x - spec.start) / (spec.stop - spec.start); };
    auto sy = [&](double y) {
        return top + plot_h * (spec.plot_y_max - y) / (spec.plot_y_max - spec.plot_y_min);
    };
    static constexpr const char *colors[] = {"#1f77b4", "#ff7f0e", "#d62728", "#9467bd", "#8c564b"};

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    out << "<defs><clipPath id=\"area\"><rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w
        << "\" height=\"" << plot_h << "\"/></clipPath></defs>\n";
    out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\"" << plot_h
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        const double xv = spec.start + (spec.stop - spec.start) * tick / 4.0;
        const double yv = spec.plot_y_min + (spec.plot_y_max - spec.plot_y_min) * tick / 4.0;
        out << "<text x=\"" << fixed3(sx(xv)) << "\" y=\"" << height - bottom + 18
            << "\" font-size=\"12\" text-anchor=\"middle\">" << format_number(xv) << "</text>\n";
        out << "<text x=\"" << left - 6 << "\" y=\"" << fixed3(sy(yv) + 4)
            << "\" font-size=\"12\" text-anchor=\"end\">" << format_number(yv) << "</text>\n";
    }
    out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 10 << "\" font-size=\"14\" text-anchor=\"middle\">"
        << variable_name(spec.variable) << "</text>\n";
    out << "<text x=\"18\" y=\"" << top + plot_h / 2 << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << top + plot_h / 2 << ")\">" << spec.plot << "</text>\n";

    // Undefined cells split a series into separate polylines.
    auto emit_series = [&](const std::string &hole, bool input, const char *color, const char *dash) {
        std::string points;
        auto flush = [&] {
            if (!points.empty()) {
                out << "<polyline clip-path=\"url(#area)\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\""
                    << dash << " points=\"" << points << "\"/>\n";
            }
            points.clear();
        };
        for (const auto &row : rows) {
            if (row.hole != hole) continue;
            const auto v = plotted(row, spec.plot, input);
            if (!v || !std::isfinite(*v)) {
                flush();
                continue;
            }
            if (!points.empty()) points += ' ';
            points += fixed3(sx(row.sweep_value)) + "," + fixed3(sy(*v));
        }
        flush();
    };
    for (std::size_t h = 0; h < spec.holes.size(); ++h) {
        const char *color = colors[h % std::size(colors)];
        emit_series(spec.holes[h].label(), false, color, "");
        out << "<text x=\"" << left + 10 << "\" y=\"" << top + 16 + 16 * h << "\" font-size=\"12\" fill=\"" << color
            << "\">" << spec.holes[h].label() << "</text>\n";
    }
    if (spec.plot != "p" && !spec.holes.empty()) {
        emit_series(spec.holes.front().label(), true, "#2ca02c", " stroke-dasharray=\"6,3,2,3\"");
        out << "<text x=\"" << left + 10 << "\" y=\"" << top + 16 + 16 * spec.holes.size()
            << "\" font-size=\"12\" fill=\"#2ca02c\">input</text>\n";
    }
    out << "</svg>\n";
}

Complex StateSpec::gamma() const { return std::polar(gamma_abs, beta); }

FockVector StateSpec::build(std::size_t cutoff) const {
    switch (kind) {
        case Kind::SqueezedCoherent: return squeezed_coherent_state(gamma(), std::polar(s, squeeze_phase), cutoff);
        case Kind::Cat: return cat_state(gamma(), delta, cutoff);
        case Kind::Coherent: return coherent_state(gamma(), cutoff);
        case Kind::Fock: return fock_state(photons, cutoff);
    }
    invalid("unknown state kind");
}

nlohmann::json StateSpec::to_json() const {
    switch (kind) {
        case Kind::SqueezedCoherent:
            return {{"family", "squeezed_coherent"}, {"gamma_abs", gamma_abs}, {"beta", beta}, {"s", s},
                    {"squeeze_phase", squeeze_phase}};
        case Kind::Cat: return {{"family", "cat"}, {"gamma_abs", gamma_abs}, {"beta", beta}, {"delta", delta}};
        case Kind::Coherent: return {{"family", "coherent"}, {"gamma_abs", gamma_abs}, {"beta", beta}};
        case Kind::Fock: return {{"family", "fock"}, {"photons", photons}};
    }
    return {};
}

FilterReport run_filter(const FilterRequest &request) {
    if (request.alpha && request.selector) invalid("give either an explicit alpha or a hole selector, not both");
    if (!request.alpha && !request.selector) invalid("an explicit alpha or a hole selector is required");
    if (request.selector && request.selector->kind == HoleSelector::Kind::Parity &&
        request.state.kind != StateSpec::Kind::Cat) {
        invalid("parity selectors apply to cat states only");
    }

    FilterReport report;
    nlohmann::json &body = report.body;
    body["version"] = kVersion;
    body["input"] = request.state.to_json();
    body["cutoff"] = request.cutoff;
    body["theta1"] = request.theta1;
    body["theta2"] = request.theta2;
    body["error"] = nullptr;
    if (request.selector) body["selector"] = request.selector->label();

    try {
        body["lambda"] = complex_json(lambda_param(request.theta1, request.theta2));
        const FockVector phi = request.state.build(request.cutoff);
        Complex alpha{};
        if (request.alpha) {
            alpha = *request.alpha;
        } else if (request.selector->kind == HoleSelector::Kind::Index) {
            alpha = alpha_for_hole(phi, request.selector->index, request.theta1, request.theta2);
        } else {
            alpha = alpha_for_parity(request.state.gamma(), request.state.delta, request.theta1, request.theta2,
                                     request.selector->keep);
        }
        body["alpha"] = complex_json(alpha);

        const auto result =
            filtered_state(phi, FilterConfig::with_coherent_ancilla(request.theta1, request.theta2, alpha));
        const FockVector out = result.normalized();
        body["probability"] = result.probability;
        body["mean_photon_number"] = mean_photon_number(out);
        try {
            body["mandel_q"] = mandel_q(out);
        } catch (const FockError &e) {
            body["mandel_q"] = nullptr;
            body["mandel_q_note"] = to_string(e.kind());
        }
        const auto quad = quadratures(out);
        body["quadratures"] = {{"mean_x", quad.mean_x},         {"mean_y", quad.mean_y},
                               {"var_x", quad.var_x},           {"var_y", quad.var_y},
                               {"squeezed_x", quad.squeezed_x}, {"squeezed_y", quad.squeezed_y}};

        nlohmann::json amps = nlohmann::json::array();
        for (std::size_t n = 0; n < std::min(request.amplitudes_shown, out.cutoff()); ++n) {
            amps.push_back({{"n", n}, {"re", out[n].real()}, {"im", out[n].imag()}, {"abs", std::abs(out[n])}});
        }
        body["amplitudes"] = amps;

        double largest = 0.0;
        for (const auto &c : result.collapsed.amplitudes()) largest = std::max(largest, std::abs(c));
        if (request.selector && request.selector->kind == HoleSelector::Kind::Index) {
            const double hole = std::abs(result.collapsed[request.selector->index]);
            const bool ok = hole <= 1e-12 * largest;
            body["hole_check"] = {{"index", request.selector->index},
                                  {"abs", hole},
                                  {"relative", hole / largest},
                                  {"verified", ok},
                                  {"status", ok ? "hole verified" : "hole not verified"}};
        } else if (request.selector) {
            const std::size_t removed = request.selector->keep == Parity::Even ? 1 : 0;
            double worst = 0.0;
            for (std::size_t n = removed; n < result.collapsed.cutoff(); n += 2)
                worst = std::max(worst, std::abs(result.collapsed[n]));
            const bool ok = worst <= 1e-12;
            body["parity_check"] = {{"kept", request.selector->keep == Parity::Even ? "even" : "odd"},
                                    {"max_removed_amplitude", worst},
                                    {"verified", ok},
                                    {"status", ok ? "parity verified" : "parity not verified"}};
        }
    } catch (const FockError &e) {
        if (e.kind() == ErrorKind::InvalidArgument) throw;
        body["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
        report.exit_code = 2;
    }
    return report;
}

nlohmann::json OracleCheckReport::to_json() const {
    nlohmann::json j = {{"seed", seed},
                        {"trials", trials},
                        {"cutoff", cutoff},
                        {"max_amplitude_deviation", max_amplitude_deviation},
                        {"max_probability_deviation", max_probability_deviation},
                        {"amplitude_tolerance", kOracleAmplitudeTolerance},
                        {"probability_tolerance", kOracleProbabilityTolerance},
                        {"trial_amplitude_deviation", trial_amplitude_deviation},
                        {"trial_probability_deviation", trial_probability_deviation},
                        {"result", passed ? "PASS" : "FAIL"}};
    j["error"] = error.empty() ? nlohmann::json(nullptr) : nlohmann::json(error);
    return j;
}

std::string OracleCheckReport::to_text() const {
    char buf[256];
    std::string text;
    std::snprintf(buf, sizeof buf, "oracle-check seed=%llu trials=%zu cutoff=%zu\n",
                  static_cast<unsigned long long>(seed), trials, cutoff);
    text += buf;
    for (std::size_t t = 0; t < trial_amplitude_deviation.size(); ++t) {
        std::snprintf(buf, sizeof buf, "  trial %zu: amplitude %.3e probability %.3e\n", t,
                      trial_amplitude_deviation[t], trial_probability_deviation[t]);
        text += buf;
    }
    std::snprintf(buf, sizeof buf, "max amplitude deviation %.3e (tol %.0e)\nmax probability deviation %.3e (tol %.0e)\n",
                  max_amplitude_deviation, kOracleAmplitudeTolerance, max_probability_deviation,
                  kOracleProbabilityTolerance);
    text += buf;
    if (!error.empty()) text += "error: " + error + "\n";
    text += passed ? "PASS\n" : "FAIL\n";
    return text;
}

OracleCheckReport oracle_check(std::uint64_t seed, std::size_t trials, std::size_t cutoff) {
    if (trials == 0) invalid("oracle-check needs at least one trial");
    if (cutoff <= kOracleInputPhotons + kTailWindow + 1) {
        invalid("oracle-check cutoff must exceed " + std::to_string(kOracleInputPhotons + kTailWindow + 1));
    }
    OracleCheckReport report;
    report.seed = seed;
    report.trials = trials;
    report.cutoff = cutoff;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.1, 1.4);
    const std::size_t ancilla_cutoff = cutoff - kOracleInputPhotons;

    try {
        for (std::size_t t = 0; t < trials; ++t) {
            std::vector<Complex> amps(kOracleInputPhotons + 1);
            for (auto &c : amps) c = {gauss(rng), gauss(rng)};
            const FockVector phi = normalize(FockVector(std::move(amps)));
            // Uniform over the disk |α| ≤ 1.5.
            const double radius = 1.5 * std::sqrt(unit(rng));
            const Complex alpha = std::polar(radius, 2.0 * std::numbers::pi * unit(rng));
            const double theta1 = angle(rng);
            const double theta2 = angle(rng);
            const FockVector psi = coherent_state(alpha, ancilla_cutoff);
            const auto cmp = compare_with_closed_form(phi, psi, theta1, theta2, cutoff);
            report.trial_amplitude_deviation.push_back(cmp.max_amplitude_deviation);
            report.trial_probability_deviation.push_back(cmp.probability_deviation);
            report.max_amplitude_deviation = std::max(report.max_amplitude_deviation, cmp.max_amplitude_deviation);
            report.max_probability_deviation = std::max(report.max_probability_deviation, cmp.probability_deviation);
        }
        report.passed = report.max_amplitude_deviation <= kOracleAmplitudeTolerance &&
                        report.max_probability_deviation <= kOracleProbabilityTolerance;
    } catch (const FockError &e) {
        report.error = e.what();
        report.passed = false;
    }
    return report;
}

}  // namespace fockfilter
