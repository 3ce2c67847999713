// Copyright 2026 The qent Authors
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

#include "qent/io.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace qent {

using nlohmann::json;

namespace {

Index read_index(const json& rec, const char* key, std::size_t line) {
    if (!rec.contains(key) || !rec[key].is_number_integer()) throw FormatError(std::string("missing integer \"") + key + "\"", line);
    return rec[key].get<Index>();
}

double read_number(const json& rec, const char* key, std::size_t line) {
    if (!rec.contains(key) || !rec[key].is_number()) throw FormatError(std::string("missing number \"") + key + "\"", line);
    const double v = rec[key].get<double>();
    if (!std::isfinite(v)) throw FormatError(std::string("\"") + key + "\" is not finite", line);
    return v;
}

bool blank(const std::string& s) { return s.find_first_not_of(" \t\r\n") == std::string::npos; }

} // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

CircuitFile read_circuit(std::istream& in) {
    CircuitFile out;
    std::string text;
    std::size_t line = 0;
    bool have_header = false;
    while (std::getline(in, text)) {
        ++line;
        if (blank(text)) continue;
        json rec;
        try {
            rec = json::parse(text);
        } catch (const json::parse_error& e) {
            throw FormatError(std::string("malformed JSON: ") + e.what(), line);
        }
        if (!rec.is_object()) throw FormatError("record is not a JSON object", line);

        if (!have_header) {
            if (!rec.contains("version") || !rec["version"].is_number_integer() || rec["version"].get<int>() != 1)
                throw FormatError("unsupported circuit file version (expected 1)", line);
            const Index dim = read_index(rec, "dim", line);
            const Index io_dim = read_index(rec, "io_dim", line);
            if (dim < 1 || io_dim < 1 || io_dim > dim) throw FormatError("need 1 <= io_dim <= dim", line);
            out.circuit = Circuitd(dim, io_dim);
            if (rec.contains("transform")) {
                if (!rec["transform"].is_string()) throw FormatError("\"transform\" must be a string", line);
                out.transform = rec["transform"].get<std::string>();
            }
            have_header = true;
            continue;
        }

        if (!rec.contains("g") || !rec["g"].is_string()) throw FormatError("gate record without \"g\"", line);
        const auto kind = rec["g"].get<std::string>();
        const Index dim = out.circuit.dim;
        if (kind == "rot") {
            const Index k = read_index(rec, "k", line);
            const Index l = read_index(rec, "l", line);
            const double theta = read_number(rec, "theta", line);
            if (k < 1 || l > dim || k >= l) throw FormatError("rotation needs 1 <= k < l <= dim", line);
            out.circuit.rotate(k - 1, l - 1, theta);
        } else if (kind == "const") {
            const Index k = read_index(rec, "k", line);
            const double c = read_number(rec, "c", line);
            if (k < 1 || k > dim) throw FormatError("constant index outside [1, dim]", line);
            if (c == 0.0) throw FormatError("constant gate with c = 0", line);
            out.circuit.scale(k - 1, c);
        } else {
            throw FormatError("unknown gate type \"" + kind + "\"", line);
        }
    }
    if (!have_header) throw FormatError("empty circuit file (missing header record)", line);
    return out;
}

CircuitFile read_circuit_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open circuit file " + path);
    return read_circuit(in);
}

void write_circuit(std::ostream& out, const Circuitd& circuit, const std::optional<std::string>& transform) {
    out << "{\"version\":1,\"dim\":" << circuit.dim << ",\"io_dim\":" << circuit.io_dim;
    if (transform) out << ",\"transform\":" << json(*transform).dump();
    out << "}\n";
    for (const auto& g : circuit.gates) {
        if (g.is_rotation())
            out << "{\"g\":\"rot\",\"k\":" << g.k + 1 << ",\"l\":" << g.l + 1 << ",\"theta\":" << format_double(g.theta)
                << "}\n";
        else
            out << "{\"g\":\"const\",\"k\":" << g.k + 1 << ",\"c\":" << format_double(g.c) << "}\n";
    }
}

void write_circuit_file(const std::string& path, const Circuitd& circuit, const std::optional<std::string>& transform) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write circuit file " + path);
    write_circuit(out, circuit, transform);
}

MatrixXd read_matrix_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (blank(text)) continue;
        std::vector<double> row;
        std::stringstream ss(text);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            const auto first = cell.find_first_not_of(" \t\r");
            const auto last = cell.find_last_not_of(" \t\r");
            if (first == std::string::npos) throw FormatError("empty cell", line);
            const std::string trimmed = cell.substr(first, last - first + 1);
            double v = 0;
            const auto res = std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), v);
            if (res.ec != std::errc() || res.ptr != trimmed.data() + trimmed.size())
                throw FormatError("cannot parse \"" + trimmed + "\" as a number", line);
            if (!std::isfinite(v)) throw FormatError("non-finite entry", line);
            row.push_back(v);
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw FormatError("row has " + std::to_string(row.size()) + " entries, expected " +
                                  std::to_string(rows.front().size()),
                              line);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw FormatError("empty matrix file", line);
    MatrixXd m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return m;
}

MatrixXd read_matrix_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file " + path);
    return read_matrix_csv(in);
}

void write_matrix_csv(std::ostream& out, const MatrixXd& m) {
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
}

void write_matrix_csv_file(const std::string& path, const MatrixXd& m) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write matrix file " + path);
    write_matrix_csv(out, m);
}

} // namespace qent
