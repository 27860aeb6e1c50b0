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

// Concrete scenarios behind the command-line tool: the four-belief comparison
// table, depolarization-recovery curves on the x-z great circle, ad-hoc
// retrodiction and equivalence, and a self-check suite.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "retro/equivalence.h"
#include "retro/io.h"
#include "retro/model.h"
#include "retro/retrodiction.h"

namespace retro::scenarios {

// ---------------------------------------------------------------------------
// Names

/// Built-in belief name (beta-s, beta-1, ...; aliases accepted) or a path to a
/// belief JSON file.
Belief resolve_belief(const std::string &spec);

/// measure-z, measure-x, identity, identity:d, depolarize:p, depolarize:p:d,
/// or a path to a channel JSON file.
QuantumChannel resolve_channel(const std::string &spec);

/// Evidence on the output of `channel`.
///
/// For the measure-z / measure-x channels the labels 0, 1, +, - (also "−",
/// ket0, ket1, ket+, ket-) name register basis states: 0 and 1 under measure-z,
/// + and - under measure-x. For any other channel with a qubit output they
/// name the pure states |0>, |1>, |+>, |->. A bare integer k names the k-th
/// basis state of the output. Anything else is read as a JSON state file.
DensityOperator resolve_evidence(const std::string &spec, const std::string &channel_spec,
                                 std::size_t output_dim);

// ---------------------------------------------------------------------------
// Comparison table

struct Table1Cell {
    BuiltinBelief belief;
    std::string channel;   // measure-z or measure-x
    std::string evidence;  // 0, 1, +, -
    ComplexMatrix updated_s;
    ComplexMatrix reference;
    double deviation = 0;
};

struct Table1Report {
    std::vector<Table1Cell> cells;
    double max_deviation = 0;
    double seconds = 0;
};

/// Closed-form reference for one table cell.
ComplexMatrix table1_reference(BuiltinBelief belief, const std::string &evidence);

/// All 16 cells: {beta-s, beta-1, beta-2, beta-xyz} x {0, 1 | measure-z; +, - | measure-x}.
Table1Report table1();

io::Json to_json(const Table1Report &report);
std::string to_text(const Table1Report &report);

// ---------------------------------------------------------------------------
// Recovery curves

struct BlochXZ {
    double x = 0;
    double z = 0;
    double radius() const;
};

struct CurvePoint {
    double theta = 0;
    BlochXZ input;
    BlochXZ channel;
    BlochXZ recovered;
};

struct RecoveryCurve {
    BuiltinBelief belief;
    std::vector<CurvePoint> points;
    /// |0>, |1>, |+>, |-> in that order.
    std::array<CurvePoint, 4> markers;
};

inline constexpr std::size_t kDefaultFig1Samples = 256;
inline constexpr double kFig1Depolarization = 0.1;

/// Pure input rho(theta) = (1 + sin(theta) X + cos(theta) Z)/2.
ComplexMatrix circle_state(double theta);

/// For each of beta-s, beta-1, beta-2, beta-xyz: `samples` equally spaced
/// inputs on the x-z circle, pushed through D(rho) = 0.9 rho + 0.1 1/2 and then
/// through recovery_compose(D, belief). ValidationError if samples < 4;
/// NumericalError if any Bloch vector leaves the unit ball by more than 1e-9.
std::vector<RecoveryCurve> fig1(std::size_t samples = kDefaultFig1Samples);

std::string fig1_csv(const std::vector<RecoveryCurve> &curves);
io::Json fig1_json(const std::vector<RecoveryCurve> &curves);
std::string fig1_svg(const std::vector<RecoveryCurve> &curves);

/// Rows of a CSV produced by fig1_csv, one vector of 7 numbers per point
/// (theta, in_x, in_z, chan_x, chan_z, rec_x, rec_z) plus the belief name.
struct CsvRow {
    std::string belief;
    std::array<double, 7> values;
};
std::vector<CsvRow> parse_fig1_csv(const std::string &text);

// ---------------------------------------------------------------------------
// Equivalence with optional oracle

/// Signature comparison; with `run_oracle` also the brute-force decision,
/// throwing OracleDisagreement if the two verdicts differ.
EquivalenceReport compare_beliefs(const Belief &b1, const Belief &b2, double tol, bool run_oracle,
                                  std::uint64_t seed);

// ---------------------------------------------------------------------------
// Self-check

struct PropertyResult {
    std::string name;
    bool passed = false;
    /// Worst deviation observed (or mismatch count for decision properties).
    double worst = 0;
    double tolerance = 0;
    std::size_t cases = 0;
    std::string detail;
};

/// Runs the invariant suite of every module with the given seed. Failures are
/// recorded in the results, never thrown.
std::vector<PropertyResult> verify(std::uint64_t seed);

}  // namespace retro::scenarios
