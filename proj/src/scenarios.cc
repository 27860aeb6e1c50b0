// Copyright 2026 The Retrodiction Authors
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

#include "retro/scenarios.h"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "retro/errors.h"

namespace retro::scenarios {

namespace {

constexpr std::array<BuiltinBelief, 4> kTableBeliefs = {
    BuiltinBelief::flat, BuiltinBelief::proper_01, BuiltinBelief::improper_phi_plus,
    BuiltinBelief::xyz_design};

bool is_measurement_name(const std::string &s) {
    return s == "measure-z" || s == "measure-x";
}

// "0", "ket0", "+", "ket+", ... with the optional "ket" prefix stripped.
struct Label {
    char symbol;  // '0', '1', '+', '-'
};

std::optional<Label> parse_label(const std::string &s) {
    std::string t = s;
    if (t.rfind("ket", 0) == 0) {
        t = t.substr(3);
    }
    if (t == "0" || t == "1" || t == "+" || t == "-") {
        return Label{t[0]};
    }
    if (t == "−") {  // unicode minus
        return Label{'-'};
    }
    return std::nullopt;
}

std::optional<std::size_t> parse_index(const std::string &s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
        return std::nullopt;
    }
    return std::stoul(s);
}

double parse_number(const std::string &s, const std::string &context) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size()) {
            return v;
        }
    } catch (const std::exception &) {
    }
    throw ParseError(context + ": cannot read \"" + s + "\" as a number");
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> parts;
    std::stringstream in(s);
    std::string part;
    while (std::getline(in, part, sep)) {
        parts.push_back(part);
    }
    return parts;
}

DensityOperator label_state(char symbol) {
    switch (symbol) {
        case '0':
            return DensityOperator(from_bloch(0, 0, 1));
        case '1':
            return DensityOperator(from_bloch(0, 0, -1));
        case '+':
            return DensityOperator(from_bloch(1, 0, 0));
        default:
            return DensityOperator(from_bloch(-1, 0, 0));
    }
}

BlochXZ xz(const ComplexMatrix &rho) {
    const auto v = bloch_vector(rho);
    return {v[0], v[2]};
}

CurvePoint curve_point(double theta, const ComplexMatrix &rho, const QuantumChannel &d,
                       const QuantumChannel &recovery) {
    return {theta, xz(rho), xz(d.apply(rho)), xz(recovery.apply(rho))};
}

void check_in_ball(const CurvePoint &p, BuiltinBelief b) {
    for (const auto &v : {p.input, p.channel, p.recovered}) {
        if (v.radius() > 1 + 1e-9) {
            throw NumericalError(fmt::format("{}: Bloch vector of radius {} at theta = {}",
                                             builtin_belief_name(b), v.radius(), p.theta));
        }
    }
}

}  // namespace

Belief resolve_belief(const std::string &spec) {
    if (const auto name = parse_builtin_belief(spec)) {
        return builtin_belief(*name);
    }
    return io::belief_from_json(io::read_json_file(spec));
}

QuantumChannel resolve_channel(const std::string &spec) {
    if (spec == "measure-z") {
        return measurement_channel(z_basis_povm());
    }
    if (spec == "measure-x") {
        return measurement_channel(x_basis_povm());
    }
    const auto parts = split(spec, ':');
    if (!parts.empty() && parts[0] == "identity" && parts.size() <= 2) {
        const std::size_t d = parts.size() == 2 ? parse_index(parts[1]).value_or(0) : 2;
        if (d == 0) {
            throw ParseError("identity:d needs a positive integer dimension, got " + spec);
        }
        return QuantumChannel::identity(d);
    }
    if (!parts.empty() && parts[0] == "depolarize" && (parts.size() == 2 || parts.size() == 3)) {
        const double p = parse_number(parts[1], "depolarize:p");
        if (!(p >= 0.0 && p <= 1.0)) {
            throw InvalidChannel("depolarize:p needs 0 <= p <= 1, got " + parts[1]);
        }
        const std::size_t d = parts.size() == 3 ? parse_index(parts[2]).value_or(0) : 2;
        if (d == 0) {
            throw ParseError("depolarize:p:d needs a positive integer dimension, got " + spec);
        }
        return QuantumChannel::depolarizing(d, p);
    }
    return io::channel_from_json(io::read_json_file(spec));
}

DensityOperator resolve_evidence(const std::string &spec, const std::string &channel_spec,
                                 std::size_t output_dim) {
    if (const auto label = parse_label(spec)) {
        if (is_measurement_name(channel_spec)) {
            const bool z = channel_spec == "measure-z";
            const char s = label->symbol;
            const bool fits = z ? (s == '0' || s == '1') : (s == '+' || s == '-');
            if (!fits) {
                throw UnsupportedEvidence(fmt::format("evidence '{}' is not an outcome of {}", spec,
                                                      channel_spec));
            }
            const std::size_t k = (s == '0' || s == '+') ? 0 : 1;
            return DensityOperator::pure(ComplexMatrix::ket(2, k));
        }
        if (output_dim == 2) {
            return label_state(label->symbol);
        }
    }
    if (const auto k = parse_index(spec)) {
        if (*k >= output_dim) {
            throw DimensionMismatch(fmt::format("evidence index {} for an output of dimension {}",
                                                *k, output_dim));
        }
        return DensityOperator::pure(ComplexMatrix::ket(output_dim, *k));
    }
    return io::state_from_json(io::read_json_file(spec));
}

ComplexMatrix table1_reference(BuiltinBelief belief, const std::string &evidence) {
    const auto target = label_state(parse_label(evidence).value().symbol).matrix();
    const auto half = ComplexMatrix::identity(2) / 2.0;
    const bool z_evidence = evidence == "0" || evidence == "1";
    switch (belief) {
        case BuiltinBelief::flat:
            return target;
        case BuiltinBelief::proper_01:
            return z_evidence ? target : half;
        case BuiltinBelief::improper_phi_plus:
            return half;
        default:
            return (target + ComplexMatrix::identity(2)) / 3.0;
    }
}

Table1Report table1() {
    const auto start = std::chrono::steady_clock::now();
    Table1Report report;
    const std::array<std::pair<const char *, const char *>, 4> columns = {
        {{"measure-z", "0"}, {"measure-z", "1"}, {"measure-x", "+"}, {"measure-x", "-"}}};
    for (const auto b : kTableBeliefs) {
        const auto belief = builtin_belief(b);
        for (const auto &[channel_name, evidence] : columns) {
            const auto channel = resolve_channel(channel_name);
            const Retrodictor retro(channel, belief);
            Table1Cell cell{b, channel_name, evidence, {}, table1_reference(b, evidence), 0};
            cell.updated_s =
                retro.retrodict(resolve_evidence(evidence, channel_name, 2)).state().matrix();
            cell.deviation = frobenius_distance(cell.updated_s, cell.reference);
            report.max_deviation = std::max(report.max_deviation, cell.deviation);
            report.cells.push_back(std::move(cell));
        }
    }
    report.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

io::Json to_json(const Table1Report &report) {
    io::Json cells = io::Json::array();
    for (const auto &c : report.cells) {
        cells.push_back({{"belief", builtin_belief_name(c.belief)},
                         {"channel", c.channel},
                         {"evidence", c.evidence},
                         {"updated_S", io::to_json(c.updated_s)},
                         {"reference", io::to_json(c.reference)},
                         {"deviation", c.deviation}});
    }
    return {{"cells", std::move(cells)},
            {"max_deviation", report.max_deviation},
            {"seconds", report.seconds}};
}

std::string to_text(const Table1Report &report) {
    std::string out = fmt::format("{:<9} {:<10} {:<3} {:<44} {}\n", "belief", "channel",
                                  "ev", "updated_S (real part, row-major)", "deviation");
    for (const auto &c : report.cells) {
        const auto &m = c.updated_s;
        const std::string entries =
            fmt::format("[{:.6f} {:.6f}; {:.6f} {:.6f}]", m(0, 0).real(), m(0, 1).real(),
                        m(1, 0).real(), m(1, 1).real());
        out += fmt::format("{:<9} {:<10} {:<3} {:<44} {}\n", builtin_belief_name(c.belief),
                           c.channel, c.evidence, entries, io::format_double(c.deviation));
    }
    out += fmt::format("max deviation {}\n", io::format_double(report.max_deviation));
    return out;
}

double BlochXZ::radius() const {
    return std::hypot(x, z);
}

ComplexMatrix circle_state(double theta) {
    return from_bloch(std::sin(theta), 0, std::cos(theta));
}

std::vector<RecoveryCurve> fig1(std::size_t samples) {
    if (samples < 4) {
        throw ValidationError(fmt::format("fig1 needs at least 4 samples, got {}", samples));
    }
    const auto d = QuantumChannel::depolarizing(2, kFig1Depolarization);
    const double pi = std::numbers::pi;
    const std::array<std::pair<double, std::array<double, 3>>, 4> marked = {
        {{0.0, {0, 0, 1}}, {pi, {0, 0, -1}}, {pi / 2, {1, 0, 0}}, {3 * pi / 2, {-1, 0, 0}}}};

    std::vector<RecoveryCurve> curves;
    for (const auto b : kTableBeliefs) {
        const auto recovery = recovery_compose(d, builtin_belief(b));
        RecoveryCurve curve{b, {}, {}};
        for (std::size_t k = 0; k < samples; ++k) {
            const double theta = 2 * pi * static_cast<double>(k) / static_cast<double>(samples);
            curve.points.push_back(curve_point(theta, circle_state(theta), d, recovery));
            check_in_ball(curve.points.back(), b);
        }
        for (std::size_t m = 0; m < 4; ++m) {
            const auto &[theta, v] = marked[m];
            curve.markers[m] = curve_point(theta, from_bloch(v[0], v[1], v[2]), d, recovery);
        }
        curves.push_back(std::move(curve));
    }
    return curves;
}

std::string fig1_csv(const std::vector<RecoveryCurve> &curves) {
    std::string out = "belief,theta,in_x,in_z,chan_x,chan_z,rec_x,rec_z\n";
    for (const auto &c : curves) {
        for (const auto &p : c.points) {
            out += fmt::format("{},{},{},{},{},{},{},{}\n", builtin_belief_name(c.belief),
                               io::format_double(p.theta), io::format_double(p.input.x),
                               io::format_double(p.input.z), io::format_double(p.channel.x),
                               io::format_double(p.channel.z), io::format_double(p.recovered.x),
                               io::format_double(p.recovered.z));
        }
    }
    return out;
}

std::vector<CsvRow> parse_fig1_csv(const std::string &text) {
    std::stringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "belief,theta,in_x,in_z,chan_x,chan_z,rec_x,rec_z") {
        throw ParseError("fig1 CSV: unexpected header");
    }
    std::vector<CsvRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto fields = split(line, ',');
        if (fields.size() != 8) {
            throw ParseError("fig1 CSV: expected 8 fields in \"" + line + "\"");
        }
        CsvRow row{fields[0], {}};
        for (std::size_t i = 0; i < 7; ++i) {
            row.values[i] = parse_number(fields[i + 1], "fig1 CSV");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

io::Json fig1_json(const std::vector<RecoveryCurve> &curves) {
    const auto point = [](const CurvePoint &p) {
        return io::Json{{"theta", p.theta},
                        {"in", {p.input.x, p.input.z}},
                        {"channel", {p.channel.x, p.channel.z}},
                        {"recovered", {p.recovered.x, p.recovered.z}}};
    };
    const std::array<const char *, 4> labels = {"0", "1", "+", "-"};
    io::Json out = {{"depolarization", kFig1Depolarization}, {"curves", io::Json::array()}};
    for (const auto &c : curves) {
        io::Json points = io::Json::array();
        for (const auto &p : c.points) {
            points.push_back(point(p));
        }
        io::Json markers = io::Json::array();
        for (std::size_t m = 0; m < 4; ++m) {
            auto j = point(c.markers[m]);
            j["label"] = labels[m];
            markers.push_back(std::move(j));
        }
        out["curves"].push_back({{"belief", builtin_belief_name(c.belief)},
                                 {"points", std::move(points)},
                                 {"markers", std::move(markers)}});
    }
    out["samples"] = curves.empty() ? 0 : curves.front().points.size();
    return out;
}

std::string fig1_svg(const std::vector<RecoveryCurve> &curves) {
    constexpr double kPanel = 240, kScale = 100, kTop = 30;
    const auto px = [&](std::size_t panel, const BlochXZ &v) {
        return std::pair<double, double>{kPanel * static_cast<double>(panel) + kPanel / 2 +
                                             kScale * v.x,
                                         kTop + kPanel / 2 - kScale * v.z};
    };
    std::string out = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
        "font-family=\"sans-serif\" font-size=\"12\">\n",
        kPanel * static_cast<double>(curves.size()), kPanel + kTop);
    const std::array<std::pair<const char *, const char *>, 3> styles = {
        {{"input", "#000000"}, {"channel", "#888888"}, {"recovered", "#1f77b4"}}};
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const auto &c = curves[i];
        const auto [cx, cy] = px(i, {0, 0});
        out += fmt::format("<g id=\"{}\">\n<text x=\"{}\" y=\"18\" text-anchor=\"middle\">{}</text>\n",
                           builtin_belief_name(c.belief), cx, builtin_belief_name(c.belief));
        out += fmt::format(
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"#bbbbbb\" "
            "stroke-dasharray=\"4 3\"/>\n",
            cx, cy, kScale);
        for (std::size_t s = 0; s < 3; ++s) {
            std::string pts;
            for (std::size_t k = 0; k <= c.points.size(); ++k) {
                const auto &p = c.points[k % c.points.size()];
                const auto &v = s == 0 ? p.input : s == 1 ? p.channel : p.recovered;
                const auto [x, y] = px(i, v);
                pts += fmt::format("{:.3f},{:.3f} ", x, y);
            }
            out += fmt::format(
                "<polyline class=\"{}\" points=\"{}\" fill=\"none\" stroke=\"{}\" "
                "stroke-width=\"1.5\"/>\n",
                styles[s].first, pts, styles[s].second);
        }
        // One marker per labelled state, drawn at its input, channel and recovered images.
        for (std::size_t m = 0; m < 4; ++m) {
            const auto &p = c.markers[m];
            std::string glyphs;
            for (const auto &v : {p.input, p.channel, p.recovered}) {
                const auto [x, y] = px(i, v);
                switch (m) {
                    case 0:
                        glyphs += fmt::format(
                            "<circle cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"5\" fill=\"none\" "
                            "stroke=\"red\"/>",
                            x, y);
                        break;
                    case 1:
                        glyphs += fmt::format(
                            "<circle cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"3\" fill=\"green\"/>", x, y);
                        break;
                    case 2:
                        glyphs += fmt::format(
                            "<path d=\"M{:.3f} {:.3f}h10M{:.3f} {:.3f}v10\" stroke=\"#d4b000\" "
                            "stroke-width=\"2\"/>",
                            x - 5, y, x, y - 5);
                        break;
                    default:
                        glyphs += fmt::format(
                            "<path d=\"M{:.3f} {:.3f}h10\" stroke=\"blue\" stroke-width=\"2\"/>",
                            x - 5, y);
                }
            }
            out += fmt::format("<g class=\"marker\">{}</g>\n", glyphs);
        }
        out += "</g>\n";
    }
    out += "</svg>\n";
    return out;
}

EquivalenceReport compare_beliefs(const Belief &b1, const Belief &b2, double tol, bool run_oracle,
                                  std::uint64_t seed) {
    auto report = equivalent(b1, b2, tol);
    if (run_oracle) {
        const auto oracle = oracle_equivalent(b1, b2, {.seed = seed});
        report.oracle_equivalent = oracle.equivalent;
        report.oracle_max_deviation = oracle.max_deviation;
        report.seed = oracle.seed;
        report.channels_tested = oracle.channels_tested;
        if (oracle.equivalent != report.equivalent) {
            throw OracleDisagreement(fmt::format(
                "signature says {} (distance {}), oracle says {} (max deviation {})",
                report.equivalent ? "equivalent" : "inequivalent", report.signature_distance,
                oracle.equivalent ? "equivalent" : "inequivalent", oracle.max_deviation));
        }
    }
    return report;
}

}  // namespace retro::scenarios
