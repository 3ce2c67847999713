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

#include "qent/bounds.hpp"

#include "qent/conditioning.hpp"
#include "qent/entropy.hpp"
#include "qent/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>

namespace qent {

DeltaBoundReport verify_gate_delta_bound(const CircuitTrace<double>& trace, double C) {
    if (!(C > 0)) throw std::invalid_argument("the delta bound constant C must be positive");
    DeltaBoundReport report;
    report.C = C;
    report.kappa_exact = true;
    const double fallback_kappa = uniform_condition_number(trace).value;

    for (std::size_t i = 1; i < trace.layers.size(); ++i) {
        const auto& layer = trace.layers[i];
        const double delta = std::abs(layer.delta_phi);
        if (layer.gate == GateKind::constant) {
            ++report.constants_checked;
            report.max_constant_delta = std::max(report.max_constant_delta, delta);
            const double tol = kConstantGateRelTol * std::max(1.0, std::abs(layer.phi));
            if (delta > tol) report.violations.push_back({layer.step, GateKind::constant, layer.delta_phi, tol, 0.0});
            continue;
        }
        ++report.rotations_checked;
        report.max_rotation_delta = std::max(report.max_rotation_delta, delta);
        double kappa = fallback_kappa;
        if (layer.kappa) {
            kappa = *layer.kappa;
        } else {
            report.kappa_exact = false;
        }
        const double bound = 2.0 * C * kappa;
        report.max_bound_ratio = std::max(report.max_bound_ratio, delta / bound);
        if (delta > bound + kRotationBoundAbsTol)
            report.violations.push_back({layer.step, GateKind::rotation, layer.delta_phi, bound, kappa});
        if (delta > C * layer.pair_norm_sum + kRotationBoundAbsTol) ++report.chain_violations;
    }
    return report;
}

RangeCheck verify_quasi_entropy_range(const VectorXd& x, const VectorXd& y) {
    if (x.size() != y.size() || x.size() < 1) throw std::invalid_argument("vectors must have equal, positive length");
    RangeCheck out;
    for (Index i = 0; i < x.size(); ++i) out.sum += fhat(x(i), y(i));
    const double ab = x.norm() * y.norm();
    const double log_ab = ab > 0 ? std::log2(ab) : 0.0;
    out.bound = ab * std::log2(static_cast<double>(x.size())) + std::abs(ab * log_ab);
    out.slack = out.bound - std::abs(out.sum);
    out.holds = out.slack >= -1e-12 * std::max(1.0, out.bound);
    return out;
}

RangeSweep sweep_quasi_entropy_range(std::size_t samples, Index n_min, Index n_max, std::uint64_t seed) {
    if (n_min < 1 || n_max < n_min) throw std::invalid_argument("invalid dimension range");
    RangeSweep out;
    out.samples = samples;
    out.seed = seed;
    out.min_slack = std::numeric_limits<double>::infinity();
    out.min_relative_slack = std::numeric_limits<double>::infinity();

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Index> dim(n_min, n_max);
    std::uniform_real_distribution<double> log_norm(-3.0, 3.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::bernoulli_distribution coin(0.5);

    VectorXd x, y;
    for (std::size_t s = 0; s < samples; ++s) {
        const Index n = dim(rng);
        x.resize(n);
        y.resize(n);
        for (Index i = 0; i < n; ++i) x(i) = normal(rng);
        switch (s % 4) {
        case 0: // y aligned with x up to per-coordinate signs
            for (Index i = 0; i < n; ++i) y(i) = coin(rng) ? x(i) : -x(i);
            break;
        case 1: // sparse supports
            for (Index i = 0; i < n; ++i) {
                if (coin(rng)) x(i) = 0;
                y(i) = coin(rng) ? 0.0 : normal(rng);
            }
            if (x.norm() == 0) x(0) = 1;
            if (y.norm() == 0) y(0) = 1;
            break;
        case 2: // near-flat
            for (Index i = 0; i < n; ++i) {
                x(i) = 1 + 0.05 * normal(rng);
                y(i) = x(i) * (1 + 0.05 * normal(rng));
            }
            break;
        default:
            for (Index i = 0; i < n; ++i) y(i) = normal(rng);
        }
        x *= std::pow(10.0, log_norm(rng)) / x.norm();
        y *= std::pow(10.0, log_norm(rng)) / y.norm();
        const auto check = verify_quasi_entropy_range(x, y);
        if (!check.holds) ++out.violations;
        if (check.slack < out.min_slack) {
            out.min_slack = check.slack;
            out.witness_n = n;
        }
        if (check.bound > 0) out.min_relative_slack = std::min(out.min_relative_slack, check.slack / check.bound);
    }
    return out;
}

PerturbedRowCheck verify_perturbed_flat_row(Index n, const VectorXd& eps) {
    if (n < 1 || eps.size() != n) throw std::invalid_argument("eps must have length n >= 1");
    PerturbedRowCheck out;
    const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(n));
    for (Index i = 0; i < n; ++i) out.lhs += neg_t_log2_abs_t(inv_sqrt * (inv_sqrt + eps(i)));
    out.rhs = 0.75 * std::log2(static_cast<double>(n));
    out.holds = out.lhs >= out.rhs;
    return out;
}

PerturbedRowSweep sweep_perturbed_flat_row(Index n, double radius, std::size_t trials, std::uint64_t seed) {
    if (n < 1 || !(radius >= 0)) throw std::invalid_argument("need n >= 1 and radius >= 0");
    PerturbedRowSweep out;
    out.n = n;
    out.radius = radius;
    out.seed = seed;
    out.min_slack = std::numeric_limits<double>::infinity();
    auto check = [&](const VectorXd& eps) {
        const auto r = verify_perturbed_flat_row(n, eps);
        ++out.samples;
        if (!r.holds) ++out.violations;
        out.min_slack = std::min(out.min_slack, r.slack());
    };
    check(VectorXd::Zero(n));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    VectorXd d(n);
    for (std::size_t t = 0; t < trials; ++t) {
        for (Index i = 0; i < n; ++i) d(i) = normal(rng);
        if (t % 2 == 1) d = -d.cwiseAbs();
        const double rho = t % 4 < 2 ? radius : radius * unit(rng);
        check(d * (rho / d.norm()));
    }
    return out;
}

namespace {

// Largest rho in [0, limit] with holds(rho), assuming failures are monotone in rho.
double bisect_radius(const std::function<bool(double)>& holds, double limit) {
    if (holds(limit)) return limit;
    double lo = 0;
    double hi = limit;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (holds(mid))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

std::vector<std::pair<std::string, VectorXd>> structured_directions(Index n) {
    std::vector<std::pair<std::string, VectorXd>> dirs;
    VectorXd one_hot = VectorXd::Zero(n);
    one_hot(0) = 1;
    dirs.emplace_back("one-hot negative", -one_hot);
    dirs.emplace_back("one-hot positive", one_hot);
    const VectorXd flat = VectorXd::Ones(n) / std::sqrt(static_cast<double>(n));
    dirs.emplace_back("flat negative", -flat);
    dirs.emplace_back("flat positive", flat);
    for (Index k = 2; k < n; k *= 2) {
        VectorXd d = VectorXd::Zero(n);
        d.head(k).setConstant(-1.0 / std::sqrt(static_cast<double>(k)));
        dirs.emplace_back("sparse negative k=" + std::to_string(k), d);
    }
    if (n >= 2) {
        VectorXd alt(n);
        for (Index i = 0; i < n; ++i) alt(i) = (i % 2 == 0) ? 1.0 : -1.0;
        dirs.emplace_back("alternating", alt.normalized());
    }
    return dirs;
}

} // namespace

C0Estimate estimate_C0(const std::vector<Index>& n_list, std::size_t trials, std::uint64_t seed) {
    if (n_list.empty()) throw std::invalid_argument("estimate_C0 needs at least one n");
    if (trials < kC0MinTrials) throw std::invalid_argument("estimate_C0 needs at least 1e4 trials per n");
    C0Estimate out;
    out.seed = seed;
    out.sample_count = trials;
    out.tolerance = 1e-12;
    out.value = std::numeric_limits<double>::infinity();

    for (Index n : n_list) {
        if (n < 2) throw std::invalid_argument("estimate_C0 needs n >= 2");
        C0PerN entry;
        entry.n = n;
        entry.random_trials = trials;

        for (auto& [label, dir] : structured_directions(n)) {
            const VectorXd d = dir;
            const double r = bisect_radius(
                [&](double rho) { return verify_perturbed_flat_row(n, rho * d).holds; }, out.search_limit);
            entry.structured.push_back({label, r});
        }
        std::sort(entry.structured.begin(), entry.structured.end(),
                  [](const RadiusWitness& a, const RadiusWitness& b) { return a.radius < b.radius; });
        entry.radius = entry.structured.front().radius;
        entry.binding_direction = entry.structured.front().direction;

        // Random directions are regenerated from the same seed on every pass.
        const std::uint64_t n_seed = seed ^ (0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(n));
        auto all_random_hold = [&](double rho) {
            std::mt19937_64 rng(n_seed);
            std::normal_distribution<double> normal(0.0, 1.0);
            VectorXd d(n);
            for (std::size_t t = 0; t < trials; ++t) {
                for (Index i = 0; i < n; ++i) d(i) = normal(rng);
                if (t % 2 == 1) d = -d.cwiseAbs();
                d *= rho / d.norm();
                if (!verify_perturbed_flat_row(n, d).holds) return false;
            }
            return true;
        };
        if (!all_random_hold(entry.radius)) {
            entry.radius = bisect_radius(all_random_hold, entry.radius);
            entry.binding_direction = "random";
            entry.random_binding = true;
        }
        if (entry.radius < out.value) {
            out.value = entry.radius;
            out.witness_label = entry.binding_direction + " (n=" + std::to_string(n) + ")";
            out.witness = {static_cast<double>(n), entry.radius};
        }
        out.per_n.push_back(std::move(entry));
    }
    return out;
}

std::string ExtraSpaceReport::verdict() const {
    if (!hypotheses_hold()) return "hypothesis-violation";
    return (conclusion && u_ok && v_ok && error_ok) ? "pass" : "fail";
}

ExtraSpaceReport verify_extra_space_entropy(const MatrixXd& m, Index n, Index N, double R, double C0) {
    if (n < 1 || N < 0 || m.rows() != n + N || m.cols() != n + N)
        throw std::invalid_argument("matrix must be (n+N) x (n+N)");
    if (static_cast<double>(N) > static_cast<double>(n) * std::log2(static_cast<double>(n)))
        throw std::invalid_argument("extra space N must not exceed n log2 n");
    if (!(R >= 1) || !(C0 > 0)) throw std::invalid_argument("need R >= 1 and C0 > 0");

    ExtraSpaceReport rep;
    rep.n = n;
    rep.N = N;
    rep.R = R;
    rep.C0 = C0;

    const MatrixXd minv = checked_inverse(m);
    const MatrixXd f = walsh_hadamard_matrix<double>(n);

    rep.top_block_error = (m.topLeftCorner(n, n) - f).cwiseAbs().maxCoeff();
    rep.top_block_is_F = rep.top_block_error <= kTopBlockTolerance;

    const MatrixXd garbage = m.bottomLeftCorner(N, n);
    rep.garbage_norm = N > 0 ? spectral_norm(garbage).value : 0.0;
    rep.garbage_bound = C0 / R;
    rep.garbage_ok = rep.garbage_norm <= rep.garbage_bound;

    rep.kappa = condition_number(m, minv);
    rep.well_conditioned = rep.kappa <= R * (1 + 1e-12);

    // u_j: column j of the garbage block; v_j: the matching column of (M^{-1})^T, i.e. row j of
    // M^{-1} restricted to the extra coordinates.
    rep.u_bound = 1.0 / (4.0 * R);
    if (N > 0) {
        rep.max_u_norm = garbage.colwise().norm().maxCoeff();
        rep.max_v_norm = minv.topRightCorner(n, N).rowwise().norm().maxCoeff();
    }
    rep.u_ok = rep.max_u_norm <= rep.u_bound;
    rep.v_ok = rep.max_v_norm <= R;

    rep.error_norm = spectral_norm(MatrixXd(minv.topLeftCorner(n, n) - f)).value;
    rep.error_ok = rep.error_norm <= C0;

    const MatrixXd p = quasi_probabilities(m, minv);
    rep.max_row_sum_deviation = (p.rowwise().sum().array() - 1.0).abs().maxCoeff();

    rep.phi_n = partial_quasi_entropy(m, minv, n, false);
    rep.phi_n_bound = 0.25 * static_cast<double>(n) * std::log2(static_cast<double>(n)) - 0.5 * static_cast<double>(n);
    rep.conclusion = rep.phi_n >= rep.phi_n_bound;
    return rep;
}

} // namespace qent
