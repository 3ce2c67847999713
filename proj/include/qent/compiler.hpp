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
 * @file compiler.hpp
 * @brief Compile matrices into rotation/constant circuits.
 *
 * Orthogonal A: Givens zeroing of the strict lower triangle, column by column
 * and bottom-up within a column, on adjacent row pairs (i-1, i). The result
 * G_p ... G_1 A = D is diagonal with entries +-1, so A = G_1^T ... G_p^T D.
 * The circuit therefore starts with constant(-1) gates for the negative
 * entries of D and then applies G_p^T, ..., G_1^T.
 *
 * Nonsingular A = U S V^T: the V^T stage, then one constant per singular value
 * (with the sign gates of the U stage folded in), then the U stage.
 */
#pragma once

#include "qent/circuit.hpp"
#include "qent/trace.hpp"
#include "qent/types.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace qent {

template <typename Scalar = double>
struct CompileResult {
    Circuit<Scalar> circuit;
    Scalar reconstruction_error = 0;  ///< ||defining matrix - target||_max
    std::size_t rotation_count = 0;
    std::size_t constant_count = 0;
    UniformCondition<Scalar> uniform_condition;
};

struct CompileOptions {
    double orthogonality_tolerance = 1e-8;
    /// smallest singular value must exceed this times the largest
    double singular_ratio = 1e-10;
    /// Singular values within this distance of 1 become exact sign constants.
    double unit_snap = 1e-12;
    /// Measure the uniform condition number over the trace.
    bool measure_condition = true;
    /// Up to this dimension every layer gets a condition number; above it only checkpoints.
    Index exact_condition_max_dim = kExactCondMaxDim;
};

namespace detail {

// Factor an orthogonal matrix into sign gates plus rotations in circuit order.
template <typename Derived>
auto givens_stage(const Eigen::MatrixBase<Derived>& a) {
    using Scalar = typename Derived::Scalar;
    const Index n = a.rows();
    DenseMatrix<Scalar> r = a;
    std::vector<Gate<Scalar>> zeroing;
    for (Index j = 0; j < n - 1; ++j) {
        for (Index i = n - 1; i > j; --i) {
            const Scalar top = r(i - 1, j);
            const Scalar bottom = r(i, j);
            if (bottom == Scalar(0)) continue;
            // [c s; -s c] [top; bottom] = [rho; 0] with c = top/rho, s = bottom/rho
            const Scalar theta = std::atan2(bottom, top);
            auto g = Gate<Scalar>::rotation(i - 1, i, theta);
            apply_gate_rows(r, g);
            r(i, j) = Scalar(0);
            zeroing.push_back(g);
        }
    }
    std::vector<Gate<Scalar>> rotations;
    rotations.reserve(zeroing.size());
    for (auto it = zeroing.rbegin(); it != zeroing.rend(); ++it)
        rotations.push_back(Gate<Scalar>::rotation(it->k, it->l, -it->theta));
    std::vector<Index> negative;
    for (Index i = 0; i < n; ++i)
        if (r(i, i) < Scalar(0)) negative.push_back(i);
    return std::pair{std::move(rotations), std::move(negative)};
}

template <typename Scalar>
void finish_result(CompileResult<Scalar>& out, const DenseMatrix<Scalar>& target, const CompileOptions& opts) {
    out.rotation_count = out.circuit.rotation_count();
    out.constant_count = out.circuit.constant_count();
    out.reconstruction_error = (defining_matrix(out.circuit) - target).cwiseAbs().maxCoeff();
    if (!opts.measure_condition) return;
    TraceOptions topts;
    topts.phi = false;
    topts.phi_n = false;
    topts.cond_every = out.circuit.dim <= opts.exact_condition_max_dim ? 1 : 0;
    out.uniform_condition = uniform_condition_number(build_trace(out.circuit, topts));
}

} // namespace detail

/// Circuit of at most n(n-1)/2 rotations and at most n constant(-1) gates reproducing orthogonal A.
template <typename Derived>
CompileResult<typename Derived::Scalar> givens_qr_circuit(const Eigen::MatrixBase<Derived>& a,
                                                          const CompileOptions& opts = {}) {
    using Scalar = typename Derived::Scalar;
    if (a.rows() != a.cols() || a.rows() < 1) throw std::invalid_argument("matrix must be square and non-empty");
    if (!a.allFinite()) throw std::invalid_argument("matrix has non-finite entries");
    const Index n = a.rows();
    const DenseMatrix<Scalar> target = a;
    const Scalar ortho = (target * target.transpose() - DenseMatrix<Scalar>::Identity(n, n)).cwiseAbs().maxCoeff();
    if (!(ortho <= Scalar(opts.orthogonality_tolerance)))
        throw std::invalid_argument("input is not orthogonal within tolerance (max |AA^T - I| = " +
                                    std::to_string(static_cast<double>(ortho)) + ")");

    auto [rotations, negative] = detail::givens_stage(target);
    CompileResult<Scalar> out;
    out.circuit = Circuit<Scalar>(n);
    for (Index k : negative) out.circuit.scale(k, Scalar(-1));
    out.circuit.gates.insert(out.circuit.gates.end(), rotations.begin(), rotations.end());
    detail::finish_result(out, target, opts);
    return out;
}

/**
 * V^T rotations, then singular-value constants, then U rotations. Singular
 * triplets are permuted and sign-normalized so that U and V stay as close to
 * the identity as possible; a diagonal input compiles to constants only.
 */
template <typename Derived>
CompileResult<typename Derived::Scalar> svd_circuit(const Eigen::MatrixBase<Derived>& a,
                                                    const CompileOptions& opts = {}) {
    using Scalar = typename Derived::Scalar;
    using Mat = DenseMatrix<Scalar>;
    if (a.rows() != a.cols() || a.rows() < 1) throw std::invalid_argument("matrix must be square and non-empty");
    if (!a.allFinite()) throw std::invalid_argument("matrix has non-finite entries");
    const Index n = a.rows();
    const Mat target = a;

    Eigen::JacobiSVD<Mat> svd(target, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Vector<Scalar>& sigma = svd.singularValues();
    if (!(sigma(n - 1) > Scalar(opts.singular_ratio) * sigma(0)))
        throw std::invalid_argument("matrix is numerically singular");

    // Greedy assignment of each singular triplet to the coordinate where its
    // right singular vector has the most weight.
    Mat u(n, n), v(n, n);
    Vector<Scalar> s(n);
    std::vector<bool> taken(static_cast<std::size_t>(n), false);
    for (Index t = 0; t < n; ++t) {
        Index best = -1;
        Scalar weight = -1;
        for (Index row = 0; row < n; ++row) {
            if (taken[static_cast<std::size_t>(row)]) continue;
            const Scalar w = std::abs(svd.matrixV()(row, t));
            if (w > weight) {
                weight = w;
                best = row;
            }
        }
        taken[static_cast<std::size_t>(best)] = true;
        const Scalar sign = svd.matrixV()(best, t) < Scalar(0) ? Scalar(-1) : Scalar(1);
        v.col(best) = sign * svd.matrixV().col(t);
        u.col(best) = sign * svd.matrixU().col(t);
        s(best) = sigma(t);
    }

    const Mat vt = v.transpose();
    auto [v_rot, v_neg] = detail::givens_stage(vt);
    auto [u_rot, u_neg] = detail::givens_stage(u);

    // U = Q_u D_u, so U S = Q_u (D_u S): the U-stage signs fold into the constants.
    Vector<Scalar> diag = s;
    for (Index k : u_neg) diag(k) = -diag(k);

    CompileResult<Scalar> out;
    out.circuit = Circuit<Scalar>(n);
    for (Index k : v_neg) out.circuit.scale(k, Scalar(-1));
    out.circuit.gates.insert(out.circuit.gates.end(), v_rot.begin(), v_rot.end());
    for (Index k = 0; k < n; ++k) {
        Scalar c = diag(k);
        if (std::abs(std::abs(c) - Scalar(1)) <= Scalar(opts.unit_snap)) c = c < 0 ? Scalar(-1) : Scalar(1);
        if (c != Scalar(1)) out.circuit.scale(k, c);
    }
    out.circuit.gates.insert(out.circuit.gates.end(), u_rot.begin(), u_rot.end());
    detail::finish_result(out, target, opts);
    return out;
}

} // namespace qent
