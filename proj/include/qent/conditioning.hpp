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

#pragma once

#include "qent/types.hpp"

#include <Eigen/LU>

#include <cmath>
#include <stdexcept>

namespace qent {

/// Residual bound for an inverse to be accepted: ||M M^{-1} - Id||_max.
inline constexpr double kInverseTolerance = 1e-8;

template <typename DerivedM, typename DerivedInv>
typename DerivedM::Scalar inverse_residual(const Eigen::MatrixBase<DerivedM>& m,
                                           const Eigen::MatrixBase<DerivedInv>& minv) {
    using Scalar = typename DerivedM::Scalar;
    DenseMatrix<Scalar> r;
    r.noalias() = m * minv;
    r.diagonal().array() -= Scalar(1);
    return r.cwiseAbs().maxCoeff();
}

template <typename DerivedM, typename DerivedInv>
void require_inverse(const Eigen::MatrixBase<DerivedM>& m, const Eigen::MatrixBase<DerivedInv>& minv,
                     double tolerance = kInverseTolerance) {
    const double res = static_cast<double>(inverse_residual(m, minv));
    if (!(res <= tolerance))
        throw NumericalError("inverse residual " + std::to_string(res) + " exceeds tolerance " +
                             std::to_string(tolerance));
}

/// Dense LU inverse with partial pivoting; throws NumericalError when the residual check fails.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> checked_inverse(const Eigen::MatrixBase<Derived>& m,
                                                      double tolerance = kInverseTolerance) {
    using Scalar = typename Derived::Scalar;
    if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
    if (!m.allFinite()) throw std::invalid_argument("matrix has non-finite entries");
    const Eigen::PartialPivLU<DenseMatrix<Scalar>> lu(m);
    if (lu.determinant() == Scalar(0)) throw NumericalError("matrix is numerically singular");
    DenseMatrix<Scalar> inv = lu.inverse();
    if (!inv.allFinite()) throw NumericalError("matrix is numerically singular");
    const double res = static_cast<double>(inverse_residual(m, inv));
    if (!(res <= tolerance))
        throw NumericalError("matrix is numerically singular (inverse residual " + std::to_string(res) + ")");
    return inv;
}

struct PowerIterationOptions {
    double relative_tolerance = 1e-10;
    int max_iterations = 10000;
};

template <typename Scalar>
struct SpectralNormEstimate {
    Scalar value = 0;
    int iterations = 0;
    bool converged = false;
};

/**
 * Largest singular value by power iteration on M^T M.
 *
 * The start vector is fixed (normalized all-ones plus a small deterministic
 * ripple), so repeated calls agree bit for bit. Iteration stops when two
 * successive estimates agree to `relative_tolerance`; at the cap the best
 * estimate is returned with `converged = false`.
 */
template <typename Derived>
SpectralNormEstimate<typename Derived::Scalar> spectral_norm(const Eigen::MatrixBase<Derived>& m,
                                                             const PowerIterationOptions& opts = {}) {
    using Scalar = typename Derived::Scalar;
    SpectralNormEstimate<Scalar> out;
    if (m.size() == 0) {
        out.converged = true;
        return out;
    }
    if (!m.allFinite()) throw std::invalid_argument("matrix has non-finite entries");

    const Index n = m.cols();
    Vector<Scalar> v(n);
    for (Index i = 0; i < n; ++i) v(i) = Scalar(1) + Scalar(1e-3) * std::sin(Scalar(i + 1));
    v.normalize();

    Vector<Scalar> w = m * v;
    Scalar sigma = w.norm();
    for (int it = 1; it <= opts.max_iterations; ++it) {
        out.iterations = it;
        if (sigma == Scalar(0)) {
            out.converged = true;
            break;
        }
        v.noalias() = m.transpose() * w;
        const Scalar vn = v.norm();
        if (vn == Scalar(0)) {
            out.converged = true;
            break;
        }
        v /= vn;
        w.noalias() = m * v;
        const Scalar next = w.norm();
        const bool done = std::abs(next - sigma) <= Scalar(opts.relative_tolerance) * next;
        sigma = std::max(sigma, next);
        if (done) {
            out.converged = true;
            break;
        }
    }
    out.value = sigma;
    return out;
}

/// kappa = ||M|| * ||M^{-1}|| using the supplied inverse.
template <typename DerivedM, typename DerivedInv>
typename DerivedM::Scalar condition_number(const Eigen::MatrixBase<DerivedM>& m,
                                           const Eigen::MatrixBase<DerivedInv>& minv,
                                           const PowerIterationOptions& opts = {}) {
    if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
    return spectral_norm(m, opts).value * spectral_norm(minv, opts).value;
}

template <typename Derived>
typename Derived::Scalar condition_number(const Eigen::MatrixBase<Derived>& m) {
    return condition_number(m, checked_inverse(m));
}

} // namespace qent
