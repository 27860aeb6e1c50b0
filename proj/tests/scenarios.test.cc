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

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "retro/errors.h"
#include "retro/io.h"
#include "retro/random.h"
#include "test_util.h"

using namespace retro;
using namespace retro::scenarios;
using retro::io::Json;

namespace {

std::size_t count(const std::string &haystack, const std::string &needle) {
    std::size_t n = 0;
    for (auto pos = haystack.find(needle); pos != std::string::npos;
         pos = haystack.find(needle, pos + needle.size())) {
        ++n;
    }
    return n;
}

class TempFile {
  public:
    TempFile(const std::string &name, const std::string &contents)
        : path_(std::filesystem::temp_directory_path() / ("retro_test_" + name)) {
        std::ofstream(path_) << contents;
    }
    ~TempFile() {
        std::filesystem::remove(path_);
    }
    std::string str() const {
        return path_.string();
    }

  private:
    std::filesystem::path path_;
};

bool bit_equal(double a, double b) {
    return std::memcmp(&a, &b, sizeof(double)) == 0;
}

}  // namespace

// ---------------------------------------------------------------------------
// JSON

TEST(IoJson, ComplexIsReImPair) {
    EXPECT_EQ(io::to_json(Complex(1.5, -2)).dump(), "[1.5,-2.0]");
    EXPECT_EQ(io::complex_from_json(Json::parse("[0.25, 3]")), Complex(0.25, 3));
    EXPECT_EQ(io::complex_from_json(Json::parse("7")), Complex(7, 0));
    EXPECT_THROW(io::complex_from_json(Json::parse("[1, 2, 3]")), ParseError);
    EXPECT_THROW(io::complex_from_json(Json::parse("\"x\"")), ParseError);
}

TEST(IoJson, MatrixIsRowMajor) {
    ComplexMatrix m(2, 3);
    m(0, 2) = Complex(1, 2);
    m(1, 0) = Complex(-3, 0);
    const Json j = io::to_json(m);
    ASSERT_EQ(j.size(), 2u);
    ASSERT_EQ(j[0].size(), 3u);
    EXPECT_EQ(j[0][2], Json::parse("[1.0, 2.0]"));
    EXPECT_EQ(j[1][0], Json::parse("[-3.0, 0.0]"));
    EXPECT_EQ(frobenius_distance(io::matrix_from_json(j), m), 0.0);
}

TEST(IoJson, RaggedMatrixRejected) {
    EXPECT_THROW(io::matrix_from_json(Json::parse("[[[1,0],[0,0]],[[1,0]]]")), ParseError);
    EXPECT_THROW(io::matrix_from_json(Json::parse("[]")), ParseError);
    EXPECT_THROW(io::matrix_from_json(Json::parse("{}")), ParseError);
}

TEST(IoJson, BeliefRoundTripIsExact) {
    Rng rng(11);
    const auto b = random_belief(rng, 2, 3, 4);
    const Json j = io::to_json(b);
    EXPECT_EQ(j["dim_S"], 2);
    EXPECT_EQ(j["dim_R"], 3);
    const auto back = io::belief_from_json(Json::parse(j.dump()));
    EXPECT_EQ(back.dim_s(), 2u);
    EXPECT_EQ(back.dim_r(), 3u);
    EXPECT_EQ(frobenius_distance(back.joint().matrix(), b.joint().matrix()), 0.0);
}

TEST(IoJson, BeliefShapeChecked) {
    Json j = io::to_json(builtin_belief(BuiltinBelief::flat));
    j["dim_R"] = 3;
    EXPECT_THROW(io::belief_from_json(j), DimensionMismatch);
    j.erase("dim_R");
    EXPECT_THROW(io::belief_from_json(j), ParseError);
}

TEST(IoJson, ChannelRoundTripIsExact) {
    Rng rng(12);
    const auto e = random_channel(rng, 2, 3, 2);
    const auto back = io::channel_from_json(Json::parse(io::to_json(e).dump()));
    EXPECT_EQ(back.dim_in(), 2u);
    EXPECT_EQ(back.dim_out(), 3u);
    EXPECT_EQ(frobenius_distance(back.choi(), e.choi()), 0.0);
}

TEST(IoJson, ChannelKrausShapeChecked) {
    Json j = io::to_json(QuantumChannel::identity(2));
    j["dim_out"] = 3;
    EXPECT_THROW(io::channel_from_json(j), DimensionMismatch);
}

TEST(IoJson, NonTracePreservingChannelRejected) {
    const Json j = Json::parse(R"({"dim_in":2,"dim_out":2,"kraus":[[[[1,0],[0,0]],[[0,0],[0,0]]]]})");
    EXPECT_THROW(io::channel_from_json(j), InvalidChannel);
}

TEST(IoJson, PovmRoundTrip) {
    const auto p = sic_povm();
    const auto back = io::povm_from_json(io::to_json(p));
    ASSERT_EQ(back.size(), p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        EXPECT_EQ(frobenius_distance(back.effects()[i], p.effects()[i]), 0.0);
    }
    EXPECT_THROW(io::povm_from_json(Json::parse(R"({"effects":[[[[0.5,0]]]]})")), InvalidPOVM);
}

TEST(IoJson, StateAcceptsObjectOrBareMatrix) {
    const auto a = io::state_from_json(Json::parse(R"({"matrix":[[[1,0],[0,0]],[[0,0],[0,0]]]})"));
    const auto b = io::state_from_json(Json::parse(R"([[1,0],[0,0]])"));
    EXPECT_EQ(frobenius_distance(a.matrix(), b.matrix()), 0.0);
    EXPECT_THROW(io::state_from_json(Json::parse(R"([[2,0],[0,0]])")), InvalidState);
}

TEST(IoJson, EquivalenceReportFields) {
    auto r = equivalent(builtin_belief(BuiltinBelief::xyz_design),
                        builtin_belief(BuiltinBelief::sic_design));
    Json j = io::to_json(r);
    for (const char *key :
         {"equivalent", "signature_distance", "marginal_distance", "seed", "channels_tested"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_TRUE(j["seed"].is_null());
    EXPECT_TRUE(j["equivalent"].get<bool>());
}

TEST(IoFiles, MissingFileIsIoError) {
    EXPECT_THROW(io::read_json_file("/nonexistent/retro.json"), IoError);
}

TEST(IoFiles, MalformedFileIsParseError) {
    TempFile f("malformed.json", "{\"dim_S\": ");
    EXPECT_THROW(io::read_json_file(f.str()), ParseError);
}

TEST(IoFiles, UnwritablePathIsIoError) {
    EXPECT_THROW(io::write_text("/nonexistent/dir/out.txt", "x"), IoError);
}

TEST(IoFormat, ShortestRoundTrip) {
    for (double x : {0.1, 1.0 / 3.0, -2.5e-17, 0.9, 6.02214076e23, std::nextafter(1.0, 2.0)}) {
        const std::string s = io::format_double(x);
        EXPECT_TRUE(bit_equal(std::stod(s), x)) << s;
        std::size_t digits = 0;
        for (char c : s.substr(0, s.find_first_of("eE"))) {
            digits += std::isdigit(static_cast<unsigned char>(c)) ? 1 : 0;
        }
        EXPECT_LE(digits, 17u) << s;
    }
}

// ---------------------------------------------------------------------------
// Name resolution

TEST(Resolve, BuiltinBeliefsAndFiles) {
    EXPECT_EQ(resolve_belief("beta-s").dim_r(), 1u);
    EXPECT_EQ(resolve_belief("beta-sic").dim_r(), 4u);
    TempFile f("belief.json", io::to_json(builtin_belief(BuiltinBelief::proper_01)).dump());
    EXPECT_EQ(frobenius_distance(resolve_belief(f.str()).joint().matrix(),
                                 builtin_belief(BuiltinBelief::proper_01).joint().matrix()),
              0.0);
    EXPECT_THROW(resolve_belief("beta-nope"), IoError);
}

TEST(Resolve, ChannelNames) {
    EXPECT_EQ(resolve_channel("identity").dim_in(), 2u);
    EXPECT_EQ(resolve_channel("identity:3").dim_out(), 3u);
    EXPECT_EQ(resolve_channel("depolarize:0.25:4").dim_in(), 4u);
    EXPECT_MATRIX_NEAR(resolve_channel("depolarize:0.1").choi(),
                       QuantumChannel::depolarizing(2, 0.1).choi(), 1e-15);
    EXPECT_MATRIX_NEAR(resolve_channel("measure-z").choi(),
                       measurement_channel(z_basis_povm()).choi(), 1e-15);
    EXPECT_THROW(resolve_channel("depolarize:1.5"), InvalidChannel);
    EXPECT_THROW(resolve_channel("depolarize:abc"), ParseError);
    EXPECT_THROW(resolve_channel("identity:0"), ParseError);
}

TEST(Resolve, MeasurementEvidenceLabels) {
    const auto ket0 = ComplexMatrix::ket(2, 0);
    const auto ket1 = ComplexMatrix::ket(2, 1);
    EXPECT_MATRIX_NEAR(resolve_evidence("0", "measure-z", 2).matrix(), ket0 * ket0.adjoint(), 0);
    EXPECT_MATRIX_NEAR(resolve_evidence("1", "measure-z", 2).matrix(), ket1 * ket1.adjoint(), 0);
    EXPECT_MATRIX_NEAR(resolve_evidence("+", "measure-x", 2).matrix(), ket0 * ket0.adjoint(), 0);
    EXPECT_MATRIX_NEAR(resolve_evidence("-", "measure-x", 2).matrix(), ket1 * ket1.adjoint(), 0);
    EXPECT_MATRIX_NEAR(resolve_evidence("−", "measure-x", 2).matrix(), ket1 * ket1.adjoint(),
                       0);
    EXPECT_THROW(resolve_evidence("+", "measure-z", 2), UnsupportedEvidence);
    EXPECT_THROW(resolve_evidence("0", "measure-x", 2), UnsupportedEvidence);
}

TEST(Resolve, PureStateEvidenceOnOtherChannels) {
    EXPECT_MATRIX_NEAR(resolve_evidence("+", "identity", 2).matrix(), from_bloch(1, 0, 0), 1e-15);
    EXPECT_MATRIX_NEAR(resolve_evidence("ket-", "identity", 2).matrix(), from_bloch(-1, 0, 0),
                       1e-15);
    EXPECT_MATRIX_NEAR(resolve_evidence("2", "identity:3", 3).matrix(),
                       ComplexMatrix::unit(3, 2, 2), 0);
    EXPECT_THROW(resolve_evidence("3", "identity:3", 3), DimensionMismatch);
}

// ---------------------------------------------------------------------------
// Table

TEST(Table1, SixteenCellsMatchClosedForms) {
    const auto report = table1();
    ASSERT_EQ(report.cells.size(), 16u);
    EXPECT_LE(report.max_deviation, 1e-9);
    EXPECT_LT(report.seconds, 1.0);
}

TEST(Table1, SpotCells) {
    const auto report = table1();
    const auto find = [&](BuiltinBelief b, const std::string &ev) {
        for (const auto &c : report.cells) {
            if (c.belief == b && c.evidence == ev) {
                return c.updated_s;
            }
        }
        ADD_FAILURE() << "missing cell";
        return ComplexMatrix();
    };
    const ComplexMatrix half = ComplexMatrix::identity(2) / 2.0;
    EXPECT_MATRIX_NEAR(find(BuiltinBelief::flat, "+"), from_bloch(1, 0, 0), 1e-9);
    EXPECT_MATRIX_NEAR(find(BuiltinBelief::proper_01, "+"), half, 1e-9);
    EXPECT_MATRIX_NEAR(find(BuiltinBelief::improper_phi_plus, "0"), half, 1e-9);
    // (|-><-| + 1)/3: Bloch vector shrunk to 1/3.
    EXPECT_MATRIX_NEAR(find(BuiltinBelief::xyz_design, "-"), from_bloch(-1.0 / 3, 0, 0), 1e-9);
}

TEST(Table1, JsonAndTextRenderEveryCell) {
    const auto report = table1();
    const Json j = to_json(report);
    EXPECT_EQ(j["cells"].size(), 16u);
    EXPECT_EQ(count(to_text(report), "\n"), 18u);
}

// ---------------------------------------------------------------------------
// Recovery curves

TEST(Fig1, TooFewSamplesRejected) {
    EXPECT_THROW(fig1(3), ValidationError);
}

TEST(Fig1, RadiiOfChannelAndRecoveredCurves) {
    const auto curves = fig1(64);
    ASSERT_EQ(curves.size(), 4u);
    for (const auto &c : curves) {
        for (const auto &p : c.points) {
            EXPECT_NEAR(p.input.radius(), 1.0, 1e-12);
            EXPECT_NEAR(p.channel.radius(), 0.9, 1e-12);
            EXPECT_LE(p.recovered.radius(), 1.0 + 1e-9);
            if (c.belief == BuiltinBelief::flat) {
                EXPECT_NEAR(p.recovered.radius(), 0.81, 1e-9);
            }
            if (c.belief == BuiltinBelief::improper_phi_plus) {
                EXPECT_NEAR(p.recovered.radius(), 0.0, 1e-10);
            }
        }
    }
}

TEST(Fig1, ChannelCurveDoesNotDependOnBelief) {
    const auto curves = fig1(32);
    for (std::size_t k = 0; k < 32; ++k) {
        for (const auto &c : curves) {
            EXPECT_EQ(c.points[k].channel.x, curves[0].points[k].channel.x);
            EXPECT_EQ(c.points[k].channel.z, curves[0].points[k].channel.z);
        }
    }
}

TEST(Fig1, MarkersSitOnAxes) {
    const auto curves = fig1(16);
    const std::array<std::pair<double, double>, 4> xz = {{{0, 1}, {0, -1}, {1, 0}, {-1, 0}}};
    for (const auto &c : curves) {
        for (std::size_t m = 0; m < 4; ++m) {
            EXPECT_NEAR(c.markers[m].input.x, xz[m].first, 1e-15);
            EXPECT_NEAR(c.markers[m].input.z, xz[m].second, 1e-15);
        }
    }
}

TEST(Fig1, ProperBeliefRecoveryKeepsOnlyZ) {
    for (const auto &c : fig1(32)) {
        if (c.belief != BuiltinBelief::proper_01) {
            continue;
        }
        for (const auto &p : c.points) {
            EXPECT_NEAR(p.recovered.x, 0.0, 1e-10);
        }
    }
}

TEST(Fig1, CsvRoundTripIsBitExact) {
    const auto curves = fig1(40);
    const std::string csv = fig1_csv(curves);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "belief,theta,in_x,in_z,chan_x,chan_z,rec_x,rec_z");
    const auto rows = parse_fig1_csv(csv);
    ASSERT_EQ(rows.size(), 4u * 40u);
    for (std::size_t c = 0; c < 4; ++c) {
        for (std::size_t k = 0; k < 40; ++k) {
            const auto &row = rows[c * 40 + k];
            const auto &p = curves[c].points[k];
            EXPECT_EQ(row.belief, builtin_belief_name(curves[c].belief));
            const std::array<double, 7> expect = {p.theta,     p.input.x,     p.input.z,
                                                  p.channel.x, p.channel.z,   p.recovered.x,
                                                  p.recovered.z};
            for (std::size_t i = 0; i < 7; ++i) {
                EXPECT_TRUE(bit_equal(row.values[i], expect[i])) << c << "," << k << "," << i;
            }
        }
    }
}

TEST(Fig1, CsvParserRejectsJunk) {
    EXPECT_THROW(parse_fig1_csv("a,b\n"), ParseError);
    EXPECT_THROW(parse_fig1_csv("belief,theta,in_x,in_z,chan_x,chan_z,rec_x,rec_z\nbeta-s,1,2\n"),
                 ParseError);
    EXPECT_THROW(
        parse_fig1_csv("belief,theta,in_x,in_z,chan_x,chan_z,rec_x,rec_z\nbeta-s,1,2,3,4,5,6,x\n"),
        ParseError);
}

TEST(Fig1, JsonRoundTripIsBitExact) {
    const auto curves = fig1(8);
    const Json j = Json::parse(fig1_json(curves).dump());
    EXPECT_EQ(j["samples"], 8);
    ASSERT_EQ(j["curves"].size(), 4u);
    for (std::size_t c = 0; c < 4; ++c) {
        const auto &jc = j["curves"][c];
        ASSERT_EQ(jc["markers"].size(), 4u);
        EXPECT_EQ(jc["markers"][2]["label"], "+");
        for (std::size_t k = 0; k < 8; ++k) {
            const auto &p = curves[c].points[k];
            EXPECT_TRUE(bit_equal(jc["points"][k]["recovered"][0].get<double>(), p.recovered.x));
            EXPECT_TRUE(bit_equal(jc["points"][k]["recovered"][1].get<double>(), p.recovered.z));
        }
    }
}

TEST(Fig1, SvgHasCirclePolylinesAndMarkersPerPanel) {
    const std::string svg = fig1_svg(fig1(16));
    EXPECT_EQ(count(svg, "<svg"), 1u);
    EXPECT_EQ(count(svg, "stroke-dasharray"), 4u);
    EXPECT_EQ(count(svg, "<polyline"), 12u);
    EXPECT_EQ(count(svg, "<g class=\"marker\">"), 16u);
    EXPECT_EQ(count(svg, "</svg>"), 1u);
}

// ---------------------------------------------------------------------------
// Equivalence front end

TEST(CompareBeliefs, DesignsAgreeWithOracle) {
    const auto r = compare_beliefs(builtin_belief(BuiltinBelief::xyz_design),
                                   builtin_belief(BuiltinBelief::sic_design), kEquivalenceTol, true,
                                   kDefaultOracleSeed);
    EXPECT_TRUE(r.equivalent);
    ASSERT_TRUE(r.oracle_equivalent.has_value());
    EXPECT_TRUE(*r.oracle_equivalent);
    EXPECT_EQ(r.seed, kDefaultOracleSeed);
    EXPECT_GT(r.channels_tested, 0u);
}

TEST(CompareBeliefs, DistinctPriorsAgreeWithOracle) {
    const auto r = compare_beliefs(builtin_belief(BuiltinBelief::proper_01),
                                   builtin_belief(BuiltinBelief::improper_phi_plus),
                                   kEquivalenceTol, true, 5);
    EXPECT_FALSE(r.equivalent);
    EXPECT_FALSE(*r.oracle_equivalent);
}

TEST(CompareBeliefs, WithoutOracleLeavesFieldsEmpty) {
    const auto r = compare_beliefs(builtin_belief(BuiltinBelief::flat),
                                   builtin_belief(BuiltinBelief::flat), kEquivalenceTol, false, 1);
    EXPECT_TRUE(r.equivalent);
    EXPECT_FALSE(r.oracle_equivalent.has_value());
    EXPECT_FALSE(r.seed.has_value());
}

// ---------------------------------------------------------------------------
// Self-check

TEST(Verify, AllPropertiesPassForDefaultSeed) {
    const auto results = verify(kDefaultOracleSeed);
    EXPECT_GE(results.size(), 20u);
    for (const auto &r : results) {
        EXPECT_TRUE(r.passed) << r.name << ": worst " << r.worst << " > " << r.tolerance << " "
                              << r.detail;
    }
}

TEST(Verify, OtherSeedAlsoPasses) {
    for (const auto &r : verify(42)) {
        EXPECT_TRUE(r.passed) << r.name << ": " << r.detail;
    }
}
