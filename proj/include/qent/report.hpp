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
 * @file report.hpp
 * @brief Circuit analysis reports and JSON/CSV serialization of every result type.
 *
 * All JSON produced here is a pure function of the inputs: no timestamps, no
 * host information, keys in a fixed order.
 */
#pragma once

#include "qent/bounds.hpp"
#include "qent/compiler.hpp"
#include "qent/io.hpp"
#include "qent/lemma1.hpp"
#include "qent/trace.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace qent {

using Json = nlohmann::ordered_json;

struct AnalysisOptions {
    bool exact_cond = false;     ///< kappa at every layer (dim <= 256)
    Index checkpoint_every = 0;  ///< 0 selects 4 * dim
    std::optional<double> C;     ///< constant of the per-gate bound; default max g on the phi grid
    std::optional<double> R;     ///< uniform condition bound; default the measured value
    std::uint64_t seed = 0;
};

struct AnalysisReport {
    std::string circuit_path;
    Index n = 0;
    Index N = 0;
    std::size_t rotation_count = 0;
    std::size_t constant_count = 0;
    UniformCondition<double> uniform_condition;
    double phi_initial = 0;
    double phi_final = 0;
    std::optional<double> phi_n_final;  ///< only when N > 0
    double C = 0;
    std::string C_source;
    double R = 0;
    std::string R_source;
    double lower_bound_reference = 0;  ///< phi_final / (2 C R)
    double max_inverse_residual = 0;
    double max_phi_drift = 0;
    Index checkpoints = 0;
    Index reinversions = 0;
    std::uint64_t seed = 0;
    std::optional<std::string> transform;
    std::optional<double> digest;  ///< max-norm error of the defining matrix against the named transform
};

struct Analysis {
    AnalysisReport report;
    CircuitTrace<double> trace;
};

Analysis analyze_circuit(const CircuitFile& file, const std::string& path, const AnalysisOptions& opts);

/// Max-norm error of the circuit's defining matrix against "wht" or "dft"; throws for other names.
double transform_digest(const Circuitd& circuit, const std::string& transform);

/// The default C: max of g over the dense phi grid.
double default_lemma1_constant();

/// Columns step, gate_kind, phi, phi_n, kappa; missing kappa is an empty cell.
void write_phi_trace_csv(std::ostream& out, const CircuitTrace<double>& trace);

Json to_json(const AnalysisReport& report);
Json to_json(const CompileResult<double>& result, const std::string& mode);

/// Common verification record: {lemma, verdict, value, bound, witness, seed, samples, grid, details}.
struct VerifyReport {
    std::string lemma;
    std::string verdict;  ///< "pass", "fail" or "hypothesis-violation"
    double value = 0;
    std::optional<double> bound;
    Json witness;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    std::size_t grid = 0;
    Json details;

    bool passed() const { return verdict == "pass"; }
};

Json to_json(const VerifyReport& report);

/// Global rotation-spread constant: passes when the estimate lies in [1, 2].
VerifyReport lemma1_report(const Lemma1Estimate& estimate);
VerifyReport delta_report(const DeltaBoundReport& report, const std::string& circuit_path);
VerifyReport range_report(const RangeSweep& sweep, const RangeCheck& flat, Index flat_n);
/// Passes when every swept eps within radius C0 satisfies the inequality and the estimate reaches C0.
VerifyReport flat_row_report(const C0Estimate& estimate, const std::vector<PerturbedRowSweep>& sweeps, double C0);
VerifyReport extra_space_report(const ExtraSpaceReport& report);

} // namespace qent
