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

/**
 * @file io.hpp
 * @brief Circuit files (JSON lines) and matrix files (CSV).
 *
 * Circuit file: the first record is
 *     {"version":1,"dim":D,"io_dim":n}
 * optionally with "transform":"wht"|"dft" naming the matrix the circuit is
 * meant to compute. Each following line is one gate,
 *     {"g":"rot","k":K,"l":L,"theta":T}   or   {"g":"const","k":K,"c":C}
 * with 1-based indices. Unknown "g" values and versions other than 1 are
 * rejected.
 *
 * Matrix file: one row per line, comma-separated decimal doubles, no header.
 */
#pragma once

#include "qent/circuit.hpp"
#include "qent/types.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

namespace qent {

class FormatError : public std::runtime_error {
public:
    FormatError(const std::string& what, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct CircuitFile {
    Circuitd circuit;
    std::optional<std::string> transform;
};

CircuitFile read_circuit(std::istream& in);
CircuitFile read_circuit_file(const std::string& path);
void write_circuit(std::ostream& out, const Circuitd& circuit, const std::optional<std::string>& transform = {});
void write_circuit_file(const std::string& path, const Circuitd& circuit,
                        const std::optional<std::string>& transform = {});

MatrixXd read_matrix_csv(std::istream& in);
MatrixXd read_matrix_csv_file(const std::string& path);
void write_matrix_csv(std::ostream& out, const MatrixXd& m);
void write_matrix_csv_file(const std::string& path, const MatrixXd& m);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

} // namespace qent
