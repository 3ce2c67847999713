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
 * @file circuit.hpp
 * @brief Layered linear circuits built from Givens rotations and constant gates.
 *
 * A circuit acts on a vector of `dim` coordinates. Each gate either rotates a
 * coordinate pair (k, l), k < l, by the 2x2 matrix
 *
 *     [  cos t  sin t ]
 *     [ -sin t  cos t ]
 *
 * or multiplies a single coordinate k by a nonzero constant c. The i'th
 * defining matrix M_i maps the input layer to layer i, with M_0 = Id.
 *
 * Indices are 0-based in this API. File formats and user-facing messages are
 * 1-based.
 */
#pragma once

#include "qent/types.hpp"

#include <cmath>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qent {

enum class GateKind { rotation, constant };

template <typename Scalar = double>
struct Gate {
    GateKind kind = GateKind::rotation;
    Index k = 0;
    Index l = 0;       ///< unused for constant gates
    Scalar theta = 0;  ///< rotation angle in radians
    Scalar c = 0;      ///< constant multiplier; 0 for rotations

    static Gate rotation(Index k, Index l, Scalar theta) {
        return Gate{GateKind::rotation, k, l, theta, Scalar(0)};
    }
    static Gate constant(Index k, Scalar c) { return Gate{GateKind::constant, k, 0, Scalar(0), c}; }

    bool is_rotation() const { return kind == GateKind::rotation; }
    bool is_constant() const { return kind == GateKind::constant; }

    bool operator==(const Gate&) const = default;
};

template <typename Scalar = double>
struct Circuit {
    Index dim = 0;     ///< total coordinates, n + N
    Index io_dim = 0;  ///< input/output coordinates n
    std::vector<Gate<Scalar>> gates;

    Circuit() = default;
    explicit Circuit(Index dimension) : dim(dimension), io_dim(dimension) {}
    Circuit(Index dimension, Index io_dimension) : dim(dimension), io_dim(io_dimension) {}

    Index extra_dim() const { return dim - io_dim; }
    std::size_t size() const { return gates.size(); }
    bool empty() const { return gates.empty(); }

    std::size_t rotation_count() const {
        std::size_t count = 0;
        for (const auto& g : gates) count += g.is_rotation() ? 1 : 0;
        return count;
    }
    std::size_t constant_count() const { return gates.size() - rotation_count(); }

    Circuit& rotate(Index k, Index l, Scalar theta) {
        gates.push_back(Gate<Scalar>::rotation(k, l, theta));
        return *this;
    }
    Circuit& scale(Index k, Scalar c) {
        gates.push_back(Gate<Scalar>::constant(k, c));
        return *this;
    }
    /// Appends every gate of `other`; dimensions must agree.
    Circuit& append(const Circuit& other) {
        if (other.dim != dim) throw std::invalid_argument("cannot append circuits of different dimension");
        gates.insert(gates.end(), other.gates.begin(), other.gates.end());
        return *this;
    }

    bool operator==(const Circuit&) const = default;
};

using Circuitd = Circuit<double>;
using Gated = Gate<double>;

namespace detail {

template <typename Scalar>
void check_gate(const Gate<Scalar>& gate, Index dim) {
    if (gate.is_rotation()) {
        if (gate.k < 0 || gate.l >= dim || gate.k >= gate.l)
            throw std::out_of_range("rotation gate indices out of range");
    } else {
        if (gate.k < 0 || gate.k >= dim) throw std::out_of_range("constant gate index out of range");
        if (gate.c == Scalar(0)) throw std::invalid_argument("constant gate with c = 0");
    }
}

} // namespace detail

/// Every violated gate invariant, phrased with 1-based gate positions and indices.
template <typename Scalar>
std::vector<std::string> validate_circuit(const Circuit<Scalar>& circuit) {
    std::vector<std::string> out;
    if (circuit.dim < 1) out.emplace_back("circuit dimension must be positive");
    if (circuit.io_dim < 1 || circuit.io_dim > circuit.dim)
        out.emplace_back("io_dim must lie in [1, dim]");
    for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
        const auto& g = circuit.gates[i];
        std::ostringstream msg;
        if (g.is_rotation()) {
            msg << "rotation gate " << i + 1 << ": ";
            if (g.k >= g.l) {
                msg << "k = " << g.k + 1 << " must be less than l = " << g.l + 1;
                out.push_back(msg.str());
            } else if (g.k < 0 || g.l >= circuit.dim) {
                msg << "indices (" << g.k + 1 << ", " << g.l + 1 << ") outside [1, " << circuit.dim << "]";
                out.push_back(msg.str());
            } else if (!std::isfinite(static_cast<double>(g.theta))) {
                msg << "theta is not finite";
                out.push_back(msg.str());
            }
        } else {
            msg << "constant gate " << i + 1 << ": ";
            if (g.k < 0 || g.k >= circuit.dim) {
                msg << "index " << g.k + 1 << " outside [1, " << circuit.dim << "]";
                out.push_back(msg.str());
            } else if (g.c == Scalar(0)) {
                msg << "c = 0";
                out.push_back(msg.str());
            } else if (!std::isfinite(static_cast<double>(g.c))) {
                msg << "c is not finite";
                out.push_back(msg.str());
            }
        }
    }
    return out;
}

/**
 * Rewrites rows (k, l) of `m` as the gate prescribes: a rotation replaces the
 * pair by A * [row k; row l], a constant multiplies row k by c.
 *
 * Applied to a column vector this is one circuit step; applied to a matrix it
 * advances the defining matrix M_{i-1} -> M_i.
 */
template <typename Derived, typename Scalar>
void apply_gate_rows(Eigen::MatrixBase<Derived>& m, const Gate<Scalar>& gate) {
    detail::check_gate(gate, m.rows());
    if (gate.is_constant()) {
        m.row(gate.k) *= gate.c;
        return;
    }
    const Scalar cs = std::cos(gate.theta);
    const Scalar sn = std::sin(gate.theta);
    for (Index q = 0; q < m.cols(); ++q) {
        const Scalar a = m(gate.k, q);
        const Scalar b = m(gate.l, q);
        m(gate.k, q) = cs * a + sn * b;
        m(gate.l, q) = -sn * a + cs * b;
    }
}

/**
 * The matching update of an inverse: if M_i = G M_{i-1} then
 * M_i^{-1} = M_{i-1}^{-1} G^{-1}. For a rotation G^{-1} = G^T, which mixes
 * columns (k, l) with the same coefficients A uses on rows; a constant divides
 * column k by c.
 */
template <typename Derived, typename Scalar>
void apply_gate_inverse_columns(Eigen::MatrixBase<Derived>& minv, const Gate<Scalar>& gate) {
    detail::check_gate(gate, minv.cols());
    if (gate.is_constant()) {
        minv.col(gate.k) /= gate.c;
        return;
    }
    const Scalar cs = std::cos(gate.theta);
    const Scalar sn = std::sin(gate.theta);
    for (Index q = 0; q < minv.rows(); ++q) {
        const Scalar a = minv(q, gate.k);
        const Scalar b = minv(q, gate.l);
        minv(q, gate.k) = cs * a + sn * b;
        minv(q, gate.l) = -sn * a + cs * b;
    }
}

template <typename Scalar>
Vector<Scalar> apply_gate(const Vector<Scalar>& state, const Gate<Scalar>& gate) {
    Vector<Scalar> out = state;
    apply_gate_rows(out, gate);
    return out;
}

/// Runs the circuit on `input` (length dim; extra coordinates are expected to be zero).
template <typename Scalar>
Vector<Scalar> simulate(const Circuit<Scalar>& circuit, const Vector<Scalar>& input) {
    if (input.size() != circuit.dim)
        throw std::invalid_argument("input length " + std::to_string(input.size()) +
                                    " does not match circuit dimension " + std::to_string(circuit.dim));
    Vector<Scalar> state = input;
    for (const auto& g : circuit.gates) apply_gate_rows(state, g);
    return state;
}

/// M_steps, the product of the first `steps` gates (all gates when steps < 0).
template <typename Scalar>
DenseMatrix<Scalar> defining_matrix(const Circuit<Scalar>& circuit, std::ptrdiff_t steps = -1) {
    const std::size_t upto = steps < 0 ? circuit.gates.size()
                                       : std::min<std::size_t>(static_cast<std::size_t>(steps), circuit.gates.size());
    RowMatrix<Scalar> m = RowMatrix<Scalar>::Identity(circuit.dim, circuit.dim);
    for (std::size_t i = 0; i < upto; ++i) apply_gate_rows(m, circuit.gates[i]);
    return m;
}

/**
 * Same gate sequence with every constant c replaced by 1/c. Its i'th defining
 * matrix is (M_i^{-1})^T of the original circuit.
 */
template <typename Scalar>
Circuit<Scalar> dual_circuit(const Circuit<Scalar>& circuit) {
    Circuit<Scalar> dual = circuit;
    for (auto& g : dual.gates) {
        if (g.is_constant()) g.c = Scalar(1) / g.c;
    }
    return dual;
}

} // namespace qent
