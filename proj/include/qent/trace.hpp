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
 * @file trace.hpp
 * @brief Defining matrices, their inverses and Phi along a circuit.
 *
 * A gate touches rows (k, l) of M and, through M_i^{-1} = M_{i-1}^{-1} G^{-1},
 * columns (k, l) of the inverse. Only the quasi-probabilities
 * M(k,q) M^{-1}(q,k) and M(l,q) M^{-1}(q,l) change, so Phi and Phi_n are
 * advanced in O(dim) per gate. Full recomputation happens at checkpoints,
 * together with the inverse residual check and (optionally) the condition
 * number.
 */
#pragma once

#include "qent/circuit.hpp"
#include "qent/conditioning.hpp"
#include "qent/entropy.hpp"
#include "qent/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace qent {

namespace detail {

/// Neumaier-compensated running sum.
template <typename Scalar>
class CompensatedSum {
public:
    void add(Scalar x) {
        const Scalar t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    Scalar value() const { return sum_ + comp_; }
    void reset(Scalar v) {
        sum_ = v;
        comp_ = 0;
    }

private:
    Scalar sum_ = 0;
    Scalar comp_ = 0;
};

} // namespace detail

/// Change caused by one gate.
template <typename Scalar>
struct GateDelta {
    Scalar phi = 0;
    Scalar phi_n = 0;
    /// sum_q sqrt((M(k,q)^2 + M(l,q)^2)(M^{-1}(q,k)^2 + M^{-1}(q,l)^2)) after the gate;
    /// for constant gates only row k / column k enter.
    Scalar pair_norm_sum = 0;
};

/**
 * Holds M_i (row-major) and M_i^{-1} (column-major) and advances both by one
 * gate at a time. Phi and Phi_n are kept as compensated running sums.
 */
template <typename Scalar = double>
class DefiningMatrixTracker {
public:
    DefiningMatrixTracker(Index dim, Index io_dim)
        : io_dim_(io_dim),
          m_(RowMatrix<Scalar>::Identity(dim, dim)),
          minv_(DenseMatrix<Scalar>::Identity(dim, dim)) {
        if (dim < 1 || io_dim < 1 || io_dim > dim) throw std::invalid_argument("tracker needs 1 <= io_dim <= dim");
    }

    Index dim() const { return m_.rows(); }
    Index io_dim() const { return io_dim_; }
    const RowMatrix<Scalar>& matrix() const { return m_; }
    const DenseMatrix<Scalar>& inverse() const { return minv_; }
    Scalar phi() const { return phi_.value(); }
    Scalar phi_n() const { return phi_n_.value(); }

    GateDelta<Scalar> apply(const Gate<Scalar>& gate) {
        detail::check_gate(gate, dim());
        GateDelta<Scalar> d;
        if (gate.is_constant()) {
            const auto before = row_terms(gate.k, -1);
            apply_gate_rows(m_, gate);
            apply_gate_inverse_columns(minv_, gate);
            const auto after = row_terms(gate.k, -1);
            d.phi = (after.full - before.full);
            d.phi_n = (after.partial - before.partial);
            d.pair_norm_sum = after.norm_sum;
        } else {
            const auto before = row_terms(gate.k, gate.l);
            apply_gate_rows(m_, gate);
            apply_gate_inverse_columns(minv_, gate);
            const auto after = row_terms(gate.k, gate.l);
            d.phi = (after.full - before.full);
            d.phi_n = (after.partial - before.partial);
            d.pair_norm_sum = after.norm_sum;
        }
        phi_.add(d.phi);
        phi_n_.add(d.phi_n);
        return d;
    }

    Scalar full_phi() const { return detail::entropy_sum(m_, minv_, dim()); }
    Scalar full_phi_n() const { return detail::entropy_sum(m_, minv_, io_dim_); }
    Scalar residual() const { return inverse_residual(m_, minv_); }

    /// Replaces the running sums with full recomputations.
    void resync_phi() {
        phi_.reset(full_phi());
        phi_n_.reset(full_phi_n());
    }

    /// Recomputes the inverse from M by LU; throws NumericalError if that also fails the check.
    void reinvert(double tolerance) { minv_ = checked_inverse(m_, tolerance); }

private:
    struct Terms {
        Scalar full = 0;
        Scalar partial = 0;
        Scalar norm_sum = 0;
    };

    // Sum of the fhat terms of rows k (and l, when l >= 0).
    Terms row_terms(Index k, Index l) const {
        Terms t;
        const Index n = dim();
        for (Index q = 0; q < n; ++q) {
            Scalar s = fhat<Scalar>(m_(k, q), minv_(q, k));
            Scalar row2 = m_(k, q) * m_(k, q);
            Scalar col2 = minv_(q, k) * minv_(q, k);
            if (l >= 0) {
                s += fhat<Scalar>(m_(l, q), minv_(q, l));
                row2 += m_(l, q) * m_(l, q);
                col2 += minv_(q, l) * minv_(q, l);
            }
            t.full += s;
            if (q < io_dim_) t.partial += s;
            t.norm_sum += std::sqrt(row2 * col2);
        }
        return t;
    }

    Index io_dim_;
    RowMatrix<Scalar> m_;
    DenseMatrix<Scalar> minv_;
    detail::CompensatedSum<Scalar> phi_;
    detail::CompensatedSum<Scalar> phi_n_;
};

struct TraceOptions {
    bool phi = true;
    bool phi_n = true;
    /// Compute kappa every this many gates; 1 is exact per-layer mode, 0 means checkpoints only.
    Index cond_every = 0;
    /// Kappa at checkpoints (when cond_every does not already cover them).
    bool cond_at_checkpoints = true;
    /// Gates between full checks; 0 selects 4 * dim.
    Index checkpoint_every = 0;
    double drift_tolerance = kInverseTolerance;
    /// Keep M_i and M_i^{-1} for every layer. Memory is O(m dim^2).
    bool keep_matrices = false;
    PowerIterationOptions power{};
};

/// Largest dimension for which per-layer condition numbers are allowed.
inline constexpr Index kExactCondMaxDim = 256;

template <typename Scalar = double>
struct TraceLayer {
    Index step = 0;
    std::optional<GateKind> gate;  ///< empty for layer 0
    Scalar phi = 0;
    Scalar phi_n = 0;
    Scalar delta_phi = 0;
    Scalar delta_phi_n = 0;
    Scalar pair_norm_sum = 0;
    std::optional<Scalar> kappa;
};

template <typename Scalar = double>
struct TraceCheckpoint {
    Index step = 0;
    Scalar inverse_residual = 0;  ///< before any re-inversion
    Scalar phi_drift = 0;         ///< |incremental - full| / max(1, |full|)
    Scalar phi_n_drift = 0;
    bool reinverted = false;
};

template <typename Scalar = double>
struct CircuitTrace {
    Index dim = 0;
    Index io_dim = 0;
    std::vector<TraceLayer<Scalar>> layers;  ///< layers[i] describes M_i, i = 0..m
    std::vector<TraceCheckpoint<Scalar>> checkpoints;
    std::vector<RowMatrix<Scalar>> matrices;      ///< only with keep_matrices
    std::vector<DenseMatrix<Scalar>> inverses;    ///< only with keep_matrices
    DenseMatrix<Scalar> final_matrix;
    DenseMatrix<Scalar> final_inverse;
    bool cond_exact = false;
    Scalar max_inverse_residual = 0;
    Scalar max_phi_drift = 0;
    Index reinversions = 0;

    Index steps() const { return static_cast<Index>(layers.size()) - 1; }
    Scalar phi_final() const { return layers.back().phi; }
    Scalar phi_n_final() const { return layers.back().phi_n; }
};

template <typename Scalar>
struct UniformCondition {
    Scalar value = 1;
    bool exact = false;  ///< false: maximum over sampled layers, a lower bound on R
};

/**
 * Walks the circuit once, recording Phi, Phi_n and (where requested) kappa for
 * every layer. At each checkpoint the inverse residual is checked against
 * `drift_tolerance`; on failure the inverse is recomputed from M and the event
 * recorded. DriftError is thrown only if the recomputed inverse fails too.
 */
template <typename Scalar>
CircuitTrace<Scalar> build_trace(const Circuit<Scalar>& circuit, const TraceOptions& opts = {}) {
    const auto violations = validate_circuit(circuit);
    if (!violations.empty()) throw std::invalid_argument("invalid circuit: " + violations.front());
    if (opts.cond_every == 1 && circuit.dim > kExactCondMaxDim)
        throw std::invalid_argument("exact per-layer condition numbers are limited to dim <= 256");

    const Index m = static_cast<Index>(circuit.gates.size());
    const Index every = opts.checkpoint_every > 0 ? opts.checkpoint_every : 4 * circuit.dim;
    const Scalar nan = std::numeric_limits<Scalar>::quiet_NaN();

    DefiningMatrixTracker<Scalar> tracker(circuit.dim, circuit.io_dim);
    CircuitTrace<Scalar> trace;
    trace.dim = circuit.dim;
    trace.io_dim = circuit.io_dim;
    trace.cond_exact = opts.cond_every == 1;
    trace.layers.reserve(static_cast<std::size_t>(m) + 1);

    auto kappa_now = [&] {
        return spectral_norm(tracker.matrix(), opts.power).value *
               spectral_norm(tracker.inverse(), opts.power).value;
    };
    auto snapshot = [&] {
        if (!opts.keep_matrices) return;
        trace.matrices.push_back(tracker.matrix());
        trace.inverses.push_back(tracker.inverse());
    };

    TraceLayer<Scalar> first;
    first.phi = opts.phi ? Scalar(0) : nan;
    first.phi_n = opts.phi_n ? Scalar(0) : nan;
    first.kappa = Scalar(1);
    trace.layers.push_back(first);
    snapshot();

    for (Index i = 1; i <= m; ++i) {
        const auto& gate = circuit.gates[static_cast<std::size_t>(i - 1)];
        const auto d = tracker.apply(gate);

        TraceLayer<Scalar> layer;
        layer.step = i;
        layer.gate = gate.kind;
        layer.delta_phi = opts.phi ? d.phi : nan;
        layer.delta_phi_n = opts.phi_n ? d.phi_n : nan;
        layer.pair_norm_sum = d.pair_norm_sum;

        const bool at_checkpoint = (i % every == 0) || i == m;
        if (at_checkpoint) {
            TraceCheckpoint<Scalar> cp;
            cp.step = i;
            cp.inverse_residual = tracker.residual();
            if (!(cp.inverse_residual <= Scalar(opts.drift_tolerance))) {
                try {
                    tracker.reinvert(opts.drift_tolerance);
                } catch (const NumericalError& e) {
                    throw DriftError("inverse drift at step " + std::to_string(i) + ": " + e.what(), i);
                }
                cp.reinverted = true;
                ++trace.reinversions;
            }
            const Scalar full = tracker.full_phi();
            const Scalar full_n = tracker.full_phi_n();
            cp.phi_drift = std::abs(tracker.phi() - full) / std::max(Scalar(1), std::abs(full));
            cp.phi_n_drift = std::abs(tracker.phi_n() - full_n) / std::max(Scalar(1), std::abs(full_n));
            tracker.resync_phi();
            trace.max_inverse_residual = std::max(trace.max_inverse_residual, cp.inverse_residual);
            trace.max_phi_drift = std::max({trace.max_phi_drift, cp.phi_drift, cp.phi_n_drift});
            trace.checkpoints.push_back(cp);
            if (opts.cond_at_checkpoints) layer.kappa = kappa_now();
        }
        if (!layer.kappa && opts.cond_every > 0 && i % opts.cond_every == 0) layer.kappa = kappa_now();

        layer.phi = opts.phi ? tracker.phi() : nan;
        layer.phi_n = opts.phi_n ? tracker.phi_n() : nan;
        trace.layers.push_back(layer);
        snapshot();
    }
    trace.final_matrix = tracker.matrix();
    trace.final_inverse = tracker.inverse();
    return trace;
}

/// max_i kappa(M_i) over layers that carry a condition number.
template <typename Scalar>
UniformCondition<Scalar> uniform_condition_number(const CircuitTrace<Scalar>& trace) {
    UniformCondition<Scalar> out;
    out.value = 1;
    for (const auto& layer : trace.layers)
        if (layer.kappa) out.value = std::max(out.value, *layer.kappa);
    out.exact = trace.cond_exact;
    return out;
}

} // namespace qent
