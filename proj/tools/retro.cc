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

// retro: command-line front end.
//
//   retro table1 [--format text|json] [--tol T]
//   retro fig1 [--samples N] [--format csv|json|svg] [--out FILE]
//   retro retrodict --belief B --channel E --evidence S [--project-support]
//                   [--renormalize] [--joint]
//   retro equiv B1 B2 [--oracle] [--tol T] [--seed N]
//   retro verify [--seed N]
//
// Exit codes: 0 success, 1 invalid input, 2 numerical failure or tolerance
// exceeded, 3 I/O error.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdint>
#include <iostream>
#include <optional>

#include "retro/errors.h"
#include "retro/io.h"
#include "retro/scenarios.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitIo = 3;

using retro::io::Json;
namespace sc = retro::scenarios;

struct Globals {
    std::optional<double> tol;
    std::uint64_t seed = retro::kDefaultOracleSeed;
    std::string out;
    std::string format;
};

// Reports holding matrices print on one line; flat reports are indented.
std::string dump(const Json &j, bool compact = true) {
    return (compact ? j.dump() : j.dump(2)) + "\n";
}

void require_format(const std::string &format, std::initializer_list<const char *> allowed) {
    for (const char *a : allowed) {
        if (format == a) {
            return;
        }
    }
    std::string list;
    for (const char *a : allowed) {
        list += list.empty() ? a : std::string(", ") + a;
    }
    throw retro::ValidationError(fmt::format("--format {} is not one of: {}", format, list));
}

int cmd_table1(const Globals &g) {
    const std::string format = g.format.empty() ? "text" : g.format;
    require_format(format, {"text", "json"});
    const double tol = g.tol.value_or(1e-9);
    const auto report = sc::table1();
    retro::io::write_text(g.out,
                          format == "json" ? dump(sc::to_json(report)) : sc::to_text(report));
    return report.max_deviation <= tol ? kExitOk : kExitNumerical;
}

int cmd_fig1(const Globals &g, std::size_t samples) {
    const std::string format = g.format.empty() ? "csv" : g.format;
    require_format(format, {"csv", "json", "svg"});
    const auto curves = sc::fig1(samples);
    std::string text;
    if (format == "csv") {
        text = sc::fig1_csv(curves);
    } else if (format == "json") {
        text = dump(sc::fig1_json(curves));
    } else {
        text = sc::fig1_svg(curves);
    }
    retro::io::write_text(g.out, text);
    return kExitOk;
}

struct RetrodictArgs {
    std::string belief;
    std::string channel;
    std::string evidence;
    bool project_support = false;
    bool renormalize = false;
    bool joint = false;
};

int cmd_retrodict(const Globals &g, const RetrodictArgs &a) {
    require_format(g.format.empty() ? "json" : g.format, {"json"});
    const auto belief = sc::resolve_belief(a.belief);
    const auto channel = sc::resolve_channel(a.channel);
    const auto sigma = sc::resolve_evidence(a.evidence, a.channel, channel.dim_out());
    const auto result = retro::petz_extended(
        channel, belief, sigma,
        {.project_support = a.project_support, .renormalize = a.renormalize});
    // Report entries are meant to be density operators; a sub-normalized
    // projection is still printed, with its deficit.
    if (!a.project_support || a.renormalize) {
        result.state();
    }
    Json j = retro::io::to_json(result, a.joint);
    j["belief"] = a.belief;
    j["channel"] = a.channel;
    j["evidence"] = a.evidence;
    retro::io::write_text(g.out, dump(j));
    return kExitOk;
}

int cmd_equiv(const Globals &g, const std::string &b1, const std::string &b2, bool oracle) {
    require_format(g.format.empty() ? "json" : g.format, {"json"});
    const auto report = sc::compare_beliefs(sc::resolve_belief(b1), sc::resolve_belief(b2),
                                            g.tol.value_or(retro::kEquivalenceTol), oracle, g.seed);
    retro::io::write_text(g.out, dump(retro::io::to_json(report), false));
    return kExitOk;
}

int cmd_verify(const Globals &g) {
    const std::string format = g.format.empty() ? "text" : g.format;
    require_format(format, {"text", "json"});
    const auto results = sc::verify(g.seed);
    bool all = true;
    std::string text;
    Json j = {{"seed", g.seed}, {"properties", Json::array()}};
    for (const auto &r : results) {
        all = all && r.passed;
        text += fmt::format("{} {} (worst {}, tolerance {}, {} cases){}\n",
                            r.passed ? "PASS" : "FAIL", r.name, retro::io::format_double(r.worst),
                            retro::io::format_double(r.tolerance), r.cases,
                            r.detail.empty() ? "" : ": " + r.detail);
        j["properties"].push_back({{"name", r.name},
                                   {"passed", r.passed},
                                   {"worst", r.worst},
                                   {"tolerance", r.tolerance},
                                   {"cases", r.cases},
                                   {"detail", r.detail}});
    }
    j["all_passed"] = all;
    text += fmt::format("{} of {} properties passed (seed {})\n",
                        std::count_if(results.begin(), results.end(),
                                      [](const auto &r) { return r.passed; }),
                        results.size(), g.seed);
    retro::io::write_text(g.out, format == "json" ? dump(j, false) : text);
    return all ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Bayesian retrodiction with extended prior beliefs"};
    app.require_subcommand(1);

    Globals g;
    app.add_option("--tol", g.tol, "Tolerance (table1 pass threshold, equiv signature distance)")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "Seed for random channels and property checks");
    app.add_option("--out", g.out, "Output file (stdout if omitted)");
    app.add_option("--format", g.format, "Output format: text, json, csv or svg");
    app.fallthrough();

    auto *table1 = app.add_subcommand("table1", "Updated beliefs for four priors and two measurements");

    std::size_t samples = sc::kDefaultFig1Samples;
    auto *fig1 = app.add_subcommand("fig1", "Depolarization-recovery curves on the x-z circle");
    fig1->add_option("--samples", samples, "Points per curve")->check(CLI::Range(4, 1 << 20));

    RetrodictArgs ra;
    auto *retrodict = app.add_subcommand("retrodict", "Update a belief given evidence on a channel output");
    retrodict->add_option("--belief", ra.belief, "Built-in belief name or belief JSON file")->required();
    retrodict->add_option("--channel", ra.channel,
                          "measure-z, measure-x, identity[:d], depolarize:p[:d] or channel JSON file")
        ->required();
    retrodict->add_option("--evidence", ra.evidence,
                          "0, 1, +, -, a basis index, or a state JSON file")
        ->required();
    retrodict->add_flag("--project-support", ra.project_support,
                        "Drop evidence weight outside the predicted support instead of failing");
    retrodict->add_flag("--renormalize", ra.renormalize, "Rescale to unit trace after projection");
    retrodict->add_flag("--joint", ra.joint, "Also print the updated joint belief");

    std::string b1, b2;
    bool oracle = false;
    auto *equiv = app.add_subcommand("equiv", "Decide whether two beliefs retrodict identically");
    equiv->add_option("b1", b1, "First belief (name or file)")->required();
    equiv->add_option("b2", b2, "Second belief (name or file)")->required();
    equiv->add_flag("--oracle", oracle, "Cross-check with the brute-force channel battery");

    auto *verify = app.add_subcommand("verify", "Run the invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (*table1) {
            return cmd_table1(g);
        }
        if (*fig1) {
            return cmd_fig1(g, samples);
        }
        if (*retrodict) {
            return cmd_retrodict(g, ra);
        }
        if (*equiv) {
            return cmd_equiv(g, b1, b2, oracle);
        }
        if (*verify) {
            return cmd_verify(g);
        }
    } catch (const retro::SupportViolation &e) {
        std::cerr << "error: " << e.what() << "; rerun with --project-support to drop that weight\n";
        return kExitValidation;
    } catch (const retro::IoError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const retro::NumericalError &e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const retro::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}
