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

#include "retro/io.h"

#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <sstream>

#include "retro/errors.h"

namespace retro::io {

namespace {

const Json &field(const Json &j, const char *key, const char *what) {
    if (!j.is_object()) {
        throw ParseError(std::string(what) + ": expected an object");
    }
    const auto it = j.find(key);
    if (it == j.end()) {
        throw ParseError(std::string(what) + ": missing field \"" + key + "\"");
    }
    return *it;
}

std::size_t count_field(const Json &j, const char *key, const char *what) {
    const auto &v = field(j, key, what);
    if (!v.is_number_integer() || v.get<long long>() < 1) {
        throw ParseError(std::string(what) + ": \"" + key + "\" must be a positive integer");
    }
    return v.get<std::size_t>();
}

void require_shape(const ComplexMatrix &m, std::size_t rows, std::size_t cols, const char *what) {
    if (m.rows() != rows || m.cols() != cols) {
        throw DimensionMismatch(std::string(what) + ": matrix is " + std::to_string(m.rows()) +
                                "x" + std::to_string(m.cols()) + ", expected " +
                                std::to_string(rows) + "x" + std::to_string(cols));
    }
}

std::vector<ComplexMatrix> matrix_list(const Json &j, const char *what) {
    if (!j.is_array() || j.empty()) {
        throw ParseError(std::string(what) + ": expected a nonempty array of matrices");
    }
    std::vector<ComplexMatrix> out;
    for (const auto &m : j) {
        out.push_back(matrix_from_json(m));
    }
    return out;
}

}  // namespace

Json to_json(Complex z) {
    return Json::array({z.real(), z.imag()});
}

Json to_json(const ComplexMatrix &m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            row.push_back(to_json(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const DensityOperator &rho) {
    return {{"matrix", to_json(rho.matrix())}};
}

Json to_json(const Belief &b) {
    return {{"dim_S", b.dim_s()}, {"dim_R", b.dim_r()}, {"matrix", to_json(b.joint().matrix())}};
}

Json to_json(const QuantumChannel &e) {
    Json kraus = Json::array();
    for (const auto &k : e.kraus_ops()) {
        kraus.push_back(to_json(k));
    }
    return {{"dim_in", e.dim_in()}, {"dim_out", e.dim_out()}, {"kraus", std::move(kraus)}};
}

Json to_json(const POVM &povm) {
    Json effects = Json::array();
    for (const auto &f : povm.effects()) {
        effects.push_back(to_json(f));
    }
    return {{"effects", std::move(effects)}};
}

Json to_json(const EquivalenceReport &r) {
    Json j = {{"equivalent", r.equivalent},
              {"signature_distance", r.signature_distance},
              {"marginal_distance", r.marginal_distance},
              {"tolerance", r.tolerance},
              {"seed", r.seed ? Json(*r.seed) : Json(nullptr)},
              {"channels_tested", r.channels_tested}};
    if (r.oracle_equivalent) {
        j["oracle_equivalent"] = *r.oracle_equivalent;
    }
    if (r.oracle_max_deviation) {
        j["oracle_max_deviation"] = *r.oracle_max_deviation;
    }
    return j;
}

Json to_json(const RetrodictionResult &r, bool include_joint) {
    Json j = {{"dim_S", r.dim_s},
              {"dim_R", r.dim_r},
              {"updated_S", to_json(r.updated_s)},
              {"norm_deficit", r.norm_deficit},
              {"renormalized", r.renormalized}};
    if (include_joint && r.updated_joint) {
        j["updated_joint"] = to_json(*r.updated_joint);
    }
    return j;
}

Complex complex_from_json(const Json &j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ParseError("complex number must be [re, im], got " + j.dump());
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

ComplexMatrix matrix_from_json(const Json &j) {
    if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) {
        throw ParseError("matrix must be a nonempty array of nonempty rows");
    }
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].size();
    ComplexMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols) {
            throw ParseError("matrix row " + std::to_string(r) + " does not have " +
                             std::to_string(cols) + " entries");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m(r, c) = complex_from_json(j[r][c]);
        }
    }
    return m;
}

DensityOperator state_from_json(const Json &j) {
    if (j.is_object()) {
        return DensityOperator(matrix_from_json(field(j, "matrix", "state")));
    }
    return DensityOperator(matrix_from_json(j));
}

Belief belief_from_json(const Json &j) {
    const std::size_t ds = count_field(j, "dim_S", "belief");
    const std::size_t dr = count_field(j, "dim_R", "belief");
    const auto m = matrix_from_json(field(j, "matrix", "belief"));
    require_shape(m, ds * dr, ds * dr, "belief");
    return Belief(m, ds, dr);
}

QuantumChannel channel_from_json(const Json &j) {
    const std::size_t din = count_field(j, "dim_in", "channel");
    const std::size_t dout = count_field(j, "dim_out", "channel");
    auto kraus = matrix_list(field(j, "kraus", "channel"), "channel kraus");
    for (const auto &k : kraus) {
        require_shape(k, dout, din, "kraus operator");
    }
    return QuantumChannel(std::move(kraus));
}

POVM povm_from_json(const Json &j) {
    return POVM(matrix_list(field(j, "effects", "POVM"), "POVM effects"));
}

Json read_json_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error &e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_text(const std::filesystem::path &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << text;
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

std::string format_double(double x) {
    // {} is the shortest round-trip form; it never needs more than 17 digits.
    return fmt::format("{}", x);
}

}  // namespace retro::io
