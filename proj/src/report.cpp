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

#include "qent/report.hpp"

#include "qent/transforms.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace qent {

namespace {

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

const char* kind_name(GateKind k) { return k == GateKind::rotation ? "rot" : "const"; }

} // namespace

double default_lemma1_constant() {
    static const double value = g_phi_grid_max(kLemma1PhiGridPoints);
    return value;
}

double transform_digest(const Circuitd& circuit, const std::string& transform) {
    MatrixXd target;
    if (transform == "wht") {
        target = walsh_hadamard_matrix<double>(circuit.dim);
    } else if (transform == "dft") {
        if (circuit.dim % 2 != 0) throw std::invalid_argument("dft circuits need an even dimension");
        target = dft_real_embedding<double>(circuit.dim / 2);
    } else {
        throw std::invalid_argument("unknown transform \"" + transform + "\"");
    }
    return (defining_matrix(circuit) - target).cwiseAbs().maxCoeff();
}

Analysis analyze_circuit(const CircuitFile& file, const std::string& path, const AnalysisOptions& opts) {
    const auto& circuit = file.circuit;
    TraceOptions topts;
    topts.cond_every = opts.exact_cond ? 1 : 0;
    topts.checkpoint_every = opts.checkpoint_every;

    Analysis out;
    out.trace = build_trace(circuit, topts);
    auto& rep = out.report;
    rep.circuit_path = path;
    rep.n = circuit.io_dim;
    rep.N = circuit.extra_dim();
    rep.rotation_count = circuit.rotation_count();
    rep.constant_count = circuit.constant_count();
    rep.uniform_condition = uniform_condition_number(out.trace);
    rep.phi_initial = out.trace.layers.front().phi;
    rep.phi_final = out.trace.phi_final();
    if (rep.N > 0) rep.phi_n_final = out.trace.phi_n_final();

    if (opts.C) {
        rep.C = *opts.C;
        rep.C_source = "user";
    } else {
        rep.C = default_lemma1_constant();
        rep.C_source = "max of g(phi) over a 2^20-point grid of (0, pi/2]";
    }
    if (opts.R) {
        rep.R = *opts.R;
        rep.R_source = "user";
    } else {
        rep.R = rep.uniform_condition.value;
        rep.R_source = rep.uniform_condition.exact ? "measured uniform condition number"
                                                   : "measured at checkpoints (lower bound on R)";
    }
    rep.lower_bound_reference = rep.phi_final / (2.0 * rep.C * rep.R);
    rep.max_inverse_residual = out.trace.max_inverse_residual;
    rep.max_phi_drift = out.trace.max_phi_drift;
    rep.checkpoints = static_cast<Index>(out.trace.checkpoints.size());
    rep.reinversions = out.trace.reinversions;
    rep.seed = opts.seed;
    rep.transform = file.transform;
    if (file.transform) rep.digest = transform_digest(circuit, *file.transform);
    return out;
}

void write_phi_trace_csv(std::ostream& out, const CircuitTrace<double>& trace) {
    out << "step,gate_kind,phi,phi_n,kappa\n";
    for (const auto& layer : trace.layers) {
        out << layer.step << ',' << (layer.gate ? kind_name(*layer.gate) : "init") << ',' << format_double(layer.phi)
            << ',' << format_double(layer.phi_n) << ',';
        if (layer.kappa) out << format_double(*layer.kappa);
        out << '\n';
    }
}

Json to_json(const AnalysisReport& r) {
    Json j;
    j["circuit_path"] = r.circuit_path;
    j["n"] = r.n;
    j["N"] = r.N;
    j["rotation_count"] = r.rotation_count;
    j["constant_count"] = r.constant_count;
    j["uniform_condition"] = {{"value", r.uniform_condition.value},
                              {"exact", r.uniform_condition.exact},
                              {"lower_bound", !r.uniform_condition.exact}};
    j["phi_initial"] = r.phi_initial;
    j["phi_final"] = r.phi_final;
    if (r.phi_n_final) j["phi_n_final"] = *r.phi_n_final;
    j["lower_bound_reference"] = {{"value", r.lower_bound_reference},
                                  {"formula", "phi_final / (2 C R)"},
                                  {"C", r.C},
                                  {"C_source", r.C_source},
                                  {"R", r.R},
                                  {"R_source", r.R_source},
                                  {"note", "each rotation changes Phi by at most 2 C kappa <= 2 C R, so the "
                                           "rotation count is at least this value; the R^-1 form is used"}};
    j["drift"] = {{"max_inverse_residual", r.max_inverse_residual},
                  {"max_phi_drift", r.max_phi_drift},
                  {"checkpoints", r.checkpoints},
                  {"reinversions", r.reinversions}};
    j["seed"] = r.seed;
    if (r.transform) {
        j["transform"] = *r.transform;
        j["digest"] = optional_number(r.digest);
    }
    return j;
}

Json to_json(const CompileResult<double>& r, const std::string& mode) {
    Json j;
    j["mode"] = mode;
    j["dim"] = r.circuit.dim;
    j["rotation_count"] = r.rotation_count;
    j["constant_count"] = r.constant_count;
    j["reconstruction_error"] = r.reconstruction_error;
    j["uniform_condition"] = {{"value", r.uniform_condition.value},
                              {"exact", r.uniform_condition.exact},
                              {"lower_bound", !r.uniform_condition.exact}};
    return j;
}

Json to_json(const VerifyReport& r) {
    Json j;
    j["lemma"] = r.lemma;
    j["verdict"] = r.verdict;
    j["value"] = r.value;
    j["bound"] = optional_number(r.bound);
    j["witness"] = r.witness;
    j["seed"] = r.seed;
    j["samples"] = r.samples;
    j["grid"] = r.grid;
    j["details"] = r.details;
    return j;
}

VerifyReport lemma1_report(const Lemma1Estimate& e) {
    VerifyReport r;
    r.lemma = "lemma1";
    r.value = e.value;
    r.bound = 2.0;
    r.verdict = (e.value >= 1.0 - e.tolerance && e.value <= 2.0) ? "pass" : "fail";
    r.witness = {{"label", e.witness_label}, {"wxyz", e.witness}};
    r.seed = e.seed;
    r.samples = e.sample_count;
    r.grid = e.grid_resolution;
    double phi_star = 0;
    g_phi_grid_max(e.phi_grid_points, &phi_star);
    r.details = {{"random_max", e.random_max},
                 {"phi_grid_max", e.phi_grid_max},
                 {"phi_grid_argmax", phi_star},
                 {"phi_grid_points", e.phi_grid_points},
                 {"proportional_max", e.proportional_max},
                 {"g_pi_over_4", g_phi(std::numbers::pi / 4)},
                 {"g_pi_over_2", g_phi(std::numbers::pi / 2)}};
    return r;
}

VerifyReport delta_report(const DeltaBoundReport& d, const std::string& circuit_path) {
    VerifyReport r;
    r.lemma = "delta";
    r.verdict = d.passed() ? "pass" : "fail";
    r.value = d.max_bound_ratio;
    r.bound = 1.0;
    r.samples = d.rotations_checked + d.constants_checked;
    Json violations = Json::array();
    for (const auto& v : d.violations)
        violations.push_back({{"step", v.step},
                              {"gate_kind", kind_name(v.kind)},
                              {"delta_phi", v.delta_phi},
                              {"bound", v.bound},
                              {"kappa", v.kappa}});
    r.witness = violations;
    r.details = {{"circuit", circuit_path},
                 {"C", d.C},
                 {"rotation_bound", "2 C kappa(M_i)"},
                 {"value", "max |delta Phi| / (2 C kappa) over rotations"},
                 {"rotations_checked", d.rotations_checked},
                 {"constants_checked", d.constants_checked},
                 {"violations", d.violations.size()},
                 {"chain_violations", d.chain_violations},
                 {"max_rotation_delta", d.max_rotation_delta},
                 {"max_constant_delta", d.max_constant_delta},
                 {"max_bound_ratio", d.max_bound_ratio},
                 {"kappa_exact", d.kappa_exact}};
    return r;
}

VerifyReport range_report(const RangeSweep& s, const RangeCheck& flat, Index flat_n) {
    VerifyReport r;
    r.lemma = "appendixA";
    r.verdict = (s.violations == 0 && flat.holds) ? "pass" : "fail";
    r.value = s.min_slack;
    r.bound = 0.0;
    r.witness = {{"n", s.witness_n}};
    r.seed = s.seed;
    r.samples = s.samples;
    r.details = {{"form", "|sum fhat(x_i, y_i)| <= ab log2 n + |ab log2(ab)|"},
                 {"violations", s.violations},
                 {"min_slack", s.min_slack},
                 {"min_relative_slack", s.min_relative_slack},
                 {"flat_case", {{"n", flat_n}, {"sum", flat.sum}, {"bound", flat.bound}, {"slack", flat.slack}}}};
    return r;
}

VerifyReport flat_row_report(const C0Estimate& e, const std::vector<PerturbedRowSweep>& sweeps, double C0) {
    VerifyReport r;
    r.lemma = "appendixB";
    r.value = e.value;
    r.bound = C0;
    r.seed = e.seed;
    r.samples = e.sample_count;
    r.witness = {{"label", e.witness_label}, {"n_and_radius", e.witness}};
    std::size_t violations = 0;
    Json sweep_json = Json::array();
    for (const auto& s : sweeps) {
        violations += s.violations;
        sweep_json.push_back({{"n", s.n},
                              {"radius", s.radius},
                              {"samples", s.samples},
                              {"violations", s.violations},
                              {"min_slack", s.min_slack}});
    }
    Json per_n = Json::array();
    for (const auto& p : e.per_n) {
        Json structured = Json::array();
        for (const auto& w : p.structured) structured.push_back({{"direction", w.direction}, {"radius", w.radius}});
        per_n.push_back({{"n", p.n},
                         {"radius", p.radius},
                         {"binding_direction", p.binding_direction},
                         {"random_trials", p.random_trials},
                         {"random_binding", p.random_binding},
                         {"structured", structured}});
    }
    r.verdict = (violations == 0 && e.value >= C0) ? "pass" : "fail";
    r.details = {{"C0", C0},
                 {"estimate_is", "largest radius for which every probed eps satisfies the inequality"},
                 {"estimate_below_one_quarter", e.value < 0.25},
                 {"in_ball_sweeps", sweep_json},
                 {"per_n", per_n}};
    return r;
}

VerifyReport extra_space_report(const ExtraSpaceReport& x) {
    VerifyReport r;
    r.lemma = "extra-space";
    r.verdict = x.verdict();
    r.value = x.phi_n;
    r.bound = x.phi_n_bound;
    r.samples = 1;
    r.details = {{"n", x.n},
                 {"N", x.N},
                 {"R", x.R},
                 {"C0", x.C0},
                 {"hypotheses",
                  {{"top_block_is_F", x.top_block_is_F},
                   {"top_block_error", x.top_block_error},
                   {"garbage_norm", x.garbage_norm},
                   {"garbage_bound", x.garbage_bound},
                   {"garbage_ok", x.garbage_ok},
                   {"kappa", x.kappa},
                   {"well_conditioned", x.well_conditioned}}},
                 {"intermediate",
                  {{"max_u_norm", x.max_u_norm},
                   {"u_bound", x.u_bound},
                   {"u_ok", x.u_ok},
                   {"max_v_norm", x.max_v_norm},
                   {"v_ok", x.v_ok},
                   {"error_norm", x.error_norm},
                   {"error_ok", x.error_ok},
                   {"max_row_sum_deviation", x.max_row_sum_deviation}}},
                 {"conclusion", x.hypotheses_hold() ? Json(x.conclusion) : Json(nullptr)}};
    return r;
}

} // namespace qent
