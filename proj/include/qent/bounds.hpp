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
 * @file bounds.hpp
 * @brief Numerical checks of the finite inequalities behind the lower bounds.
 *
 *  - per-gate change of Phi: zero for constant gates, at most 2 C kappa(M_i)
 *    for rotations (through the intermediate C * sum_q pair-norm products);
 *  - |sum_i fhat(x_i, y_i)| <= ab log2 n + |ab log2(ab)| for ||x|| = a, ||y|| = b;
 *  - the perturbed flat row inequality and the largest radius for which it holds;
 *  - the extra-space entropy bound Phi_n >= n log2 n / 4 - n / 2 and its hypotheses.
 */
#pragma once

#include "qent/lemma1.hpp"
#include "qent/trace.hpp"
#include "qent/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qent {

// ---------------------------------------------------------------- gate delta

struct DeltaViolation {
    Index step = 0;
    GateKind kind = GateKind::rotation;
    double delta_phi = 0;
    double bound = 0;
    double kappa = 0;
};

struct DeltaBoundReport {
    double C = 0;
    std::size_t rotations_checked = 0;
    std::size_t constants_checked = 0;
    std::vector<DeltaViolation> violations;  ///< against 2 C kappa (rotations) or 0 (constants)
    std::size_t chain_violations = 0;        ///< |dPhi| > C * pair_norm_sum
    double max_rotation_delta = 0;
    double max_constant_delta = 0;
    double max_bound_ratio = 0;  ///< max |dPhi| / (2 C kappa) over rotations
    bool kappa_exact = false;    ///< every rotation layer carried its own kappa

    bool passed() const { return violations.empty() && chain_violations == 0; }
};

inline constexpr double kConstantGateRelTol = 1e-9;
inline constexpr double kRotationBoundAbsTol = 1e-9;

/**
 * Checks every gate of the trace. Rotations use the post-gate kappa of their
 * layer; layers without one fall back to the trace maximum and the report is
 * marked inexact.
 */
DeltaBoundReport verify_gate_delta_bound(const CircuitTrace<double>& trace, double C);

// ---------------------------------------------------------------- range bound

struct RangeCheck {
    bool holds = false;
    double sum = 0;    ///< sum_i fhat(x_i, y_i)
    double bound = 0;  ///< ab log2 n + |ab log2(ab)|
    double slack = 0;  ///< bound - |sum|
};

RangeCheck verify_quasi_entropy_range(const VectorXd& x, const VectorXd& y);

struct RangeSweep {
    std::size_t samples = 0;
    std::size_t violations = 0;
    double min_slack = 0;
    double min_relative_slack = 0;  ///< slack / bound
    std::uint64_t seed = 0;
    Index witness_n = 0;
};

/// Seeded pairs with n in [n_min, n_max] and norms log-uniform in [1e-3, 1e3].
RangeSweep sweep_quasi_entropy_range(std::size_t samples, Index n_min, Index n_max, std::uint64_t seed);

// ---------------------------------------------------------------- flat row

struct PerturbedRowCheck {
    bool holds = false;
    double lhs = 0;  ///< -sum (1/sqrt n)(1/sqrt n + eps_i) log2|(1/sqrt n)(1/sqrt n + eps_i)|
    double rhs = 0;  ///< (3/4) log2 n
    double slack() const { return lhs - rhs; }
};

PerturbedRowCheck verify_perturbed_flat_row(Index n, const VectorXd& eps);

struct PerturbedRowSweep {
    Index n = 0;
    double radius = 0;
    std::size_t samples = 0;
    std::size_t violations = 0;
    double min_slack = 0;
    std::uint64_t seed = 0;
};

/// eps = 0 plus `trials` seeded eps with ||eps|| <= radius (half on the sphere, half negative-orthant).
PerturbedRowSweep sweep_perturbed_flat_row(Index n, double radius, std::size_t trials, std::uint64_t seed);

struct RadiusWitness {
    std::string direction;
    double radius = 0;  ///< largest radius found along this direction (capped at the search limit)
};

struct C0PerN {
    Index n = 0;
    double radius = 0;
    std::string binding_direction;
    std::vector<RadiusWitness> structured;  ///< sorted by radius, smallest first
    std::size_t random_trials = 0;
    bool random_binding = false;
};

struct C0Estimate : LemmaEstimate {
    std::vector<C0PerN> per_n;
    double search_limit = 1.0;
};

inline constexpr std::size_t kC0MinTrials = 10000;

/**
 * For each n, the largest radius rho such that every probed eps with
 * ||eps|| = rho satisfies the flat-row inequality. Probes are structured
 * directions (one-hot, flat and k-sparse shifts of both signs) plus `trials`
 * seeded random directions, half of them restricted to the negative orthant.
 * Radii are found by bisection on [0, 1]. The estimate is the minimum over n.
 */
C0Estimate estimate_C0(const std::vector<Index>& n_list, std::size_t trials, std::uint64_t seed);

// ---------------------------------------------------------------- extra space

struct ExtraSpaceReport {
    Index n = 0;
    Index N = 0;
    double R = 0;
    double C0 = 0;

    double top_block_error = 0;  ///< ||[M]_{[n],[n]} - F||_max
    bool top_block_is_F = false;
    double garbage_norm = 0;  ///< spectral norm of rows n..n+N, columns 0..n
    double garbage_bound = 0; ///< C0 / R
    bool garbage_ok = false;
    double kappa = 0;
    bool well_conditioned = false;  ///< kappa(M) <= R

    double max_u_norm = 0;
    double u_bound = 0;  ///< 1 / (4R)
    bool u_ok = false;
    double max_v_norm = 0;
    bool v_ok = false;  ///< max ||v_j|| <= R
    double error_norm = 0;  ///< ||[M^{-1}]_{[n],[n]} - F||
    bool error_ok = false;  ///< <= C0
    double max_row_sum_deviation = 0;

    double phi_n = 0;
    double phi_n_bound = 0;  ///< n log2 n / 4 - n / 2
    bool conclusion = false;

    bool hypotheses_hold() const { return top_block_is_F && garbage_ok && well_conditioned; }
    /// "pass", "fail" (hypotheses hold, conclusion does not) or "hypothesis-violation".
    std::string verdict() const;
};

inline constexpr double kTopBlockTolerance = 1e-9;

/// M is (n+N) x (n+N) with N <= n log2 n; F is the n x n Walsh-Hadamard matrix.
ExtraSpaceReport verify_extra_space_entropy(const MatrixXd& m, Index n, Index N, double R, double C0);

} // namespace qent
