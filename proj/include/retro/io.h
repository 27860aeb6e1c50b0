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

// JSON encoding of the model types.
//
//   complex   [re, im]
//   matrix    row-major nested arrays of complex
//   Belief    {"dim_S": n, "dim_R": m, "matrix": ...}
//   channel   {"dim_in": n, "dim_out": m, "kraus": [matrix, ...]}
//   POVM      {"effects": [matrix, ...]}
//   state     {"matrix": ...} or a bare matrix
//
// Malformed documents throw ParseError; well-formed documents describing
// invalid objects throw the model's ValidationError subclasses.

#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "retro/equivalence.h"
#include "retro/model.h"
#include "retro/retrodiction.h"

namespace retro::io {

using Json = nlohmann::json;

Json to_json(Complex z);
Json to_json(const ComplexMatrix &m);
Json to_json(const DensityOperator &rho);
Json to_json(const Belief &b);
Json to_json(const QuantumChannel &e);
Json to_json(const POVM &povm);
Json to_json(const EquivalenceReport &r);
Json to_json(const RetrodictionResult &r, bool include_joint);

Complex complex_from_json(const Json &j);
ComplexMatrix matrix_from_json(const Json &j);
DensityOperator state_from_json(const Json &j);
Belief belief_from_json(const Json &j);
QuantumChannel channel_from_json(const Json &j);
POVM povm_from_json(const Json &j);

/// Parses a file; IoError if it cannot be opened, ParseError on bad JSON.
Json read_json_file(const std::filesystem::path &path);
/// Writes `text` to `path`, or to stdout when the path is empty or "-".
void write_text(const std::filesystem::path &path, const std::string &text);

/// Shortest representation that parses back to the same double (at most 17
/// significant digits).
std::string format_double(double x);

}  // namespace retro::io
