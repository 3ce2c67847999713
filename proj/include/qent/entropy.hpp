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
 * @file entropy.hpp
 * @brief Quasi-entropy of a nonsingular matrix and its building blocks.
 *
 * For nonsingular M the quasi-probabilities of row i are
 * p_ij = M(i,j) * M^{-1}(j,i); each row sums to one, but entries may be
 * negative or exceed one. The quasi-entropy is
 *
 *     Phi(M) = sum_ij fhat(M(i,j), M^{-1}(j,i)),  fhat(x, y) = -xy log2|xy|,
 *
 * which reduces to the row-wise Shannon entropy sum_ij -M(i,j)^2 log2 M(i,j)^2
 * when M is orthogonal. All logarithms are base 2.
 */
#pragma once

#include "qent/conditioning.hpp"
#include "qent/types.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace qent {

/// Products with magnitude below this are treated as exactly zero.
inline constexpr double kProductUnderflow = 1e-300;

/// -t log2|t|, with the continuous extension 0 at t = 0.
template <typename Scalar>
inline Scalar neg_t_log2_abs_t(Scalar t) {
    const Scalar a = std::abs(t);
    if (a < Scalar(kProductUnderflow)) return Scalar(0);
    return -t * std::log2(a);
}

template <typename Scalar>
inline Scalar fhat(Scalar x, Scalar y) {
    return neg_t_log2_abs_t(x * y);
}

/// Unitary-case entropy sum_ij -M(i,j)^2 log2 M(i,j)^2; meaningful for orthogonal M.
template <typename Derived>
typename Derived::Scalar unitary_entropy(const Eigen::MatrixBase<Derived>& m) {
    using Scalar = typename Derived::Scalar;
    Scalar sum = 0;
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i) sum += neg_t_log2_abs_t(m(i, j) * m(i, j));
    return sum;
}

namespace detail {

template <typename DerivedM, typename DerivedInv>
void check_square_pair(const Eigen::MatrixBase<DerivedM>& m, const Eigen::MatrixBase<DerivedInv>& minv) {
    if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
    if (minv.rows() != m.rows() || minv.cols() != m.cols())
        throw std::invalid_argument("inverse has mismatched shape");
}

template <typename DerivedM, typename DerivedInv>
typename DerivedM::Scalar entropy_sum(const Eigen::MatrixBase<DerivedM>& m,
                                      const Eigen::MatrixBase<DerivedInv>& minv, Index cols) {
    using Scalar = typename DerivedM::Scalar;
    Scalar sum = 0;
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < m.rows(); ++i) sum += fhat<Scalar>(m(i, j), minv(j, i));
    return sum;
}

} // namespace detail

/// Entrywise M(i,j) * M^{-1}(j,i).
template <typename DerivedM, typename DerivedInv>
DenseMatrix<typename DerivedM::Scalar> quasi_probabilities(const Eigen::MatrixBase<DerivedM>& m,
                                                           const Eigen::MatrixBase<DerivedInv>& minv) {
    detail::check_square_pair(m, minv);
    return m.cwiseProduct(minv.transpose());
}

/**
 * Phi(M) given M and its inverse. With `check_inverse` the residual
 * ||M M^{-1} - Id||_max is verified against kInverseTolerance first (O(n^3)).
 */
template <typename DerivedM, typename DerivedInv>
typename DerivedM::Scalar quasi_entropy(const Eigen::MatrixBase<DerivedM>& m,
                                        const Eigen::MatrixBase<DerivedInv>& minv, bool check_inverse = true) {
    detail::check_square_pair(m, minv);
    if (check_inverse) require_inverse(m, minv);
    return detail::entropy_sum(m, minv, m.cols());
}

/// Phi(M), inverting M by LU first.
template <typename Derived>
typename Derived::Scalar quasi_entropy(const Eigen::MatrixBase<Derived>& m) {
    const auto minv = checked_inverse(m);
    return detail::entropy_sum(m, minv, m.cols());
}

/**
 * Partial entropy Phi_n: the sum restricted to the first n columns of M (and
 * the first n rows of M^{-1}), over all rows. Phi_n = Phi when n = side.
 */
template <typename DerivedM, typename DerivedInv>
typename DerivedM::Scalar partial_quasi_entropy(const Eigen::MatrixBase<DerivedM>& m,
                                                const Eigen::MatrixBase<DerivedInv>& minv, Index n,
                                                bool check_inverse = true) {
    detail::check_square_pair(m, minv);
    if (n < 1 || n > m.cols()) throw std::invalid_argument("partial entropy column count outside [1, side]");
    if (check_inverse) require_inverse(m, minv);
    return detail::entropy_sum(m, minv, n);
}

template <typename Scalar>
struct QuasiProbRow {
    Index row = 0;
    Vector<Scalar> values;

    Scalar sum() const { return values.sum(); }
};

template <typename DerivedM, typename DerivedInv>
std::vector<QuasiProbRow<typename DerivedM::Scalar>> quasi_prob_rows(const Eigen::MatrixBase<DerivedM>& m,
                                                                     const Eigen::MatrixBase<DerivedInv>& minv) {
    using Scalar = typename DerivedM::Scalar;
    detail::check_square_pair(m, minv);
    require_inverse(m, minv);
    const DenseMatrix<Scalar> p = quasi_probabilities(m, minv);
    std::vector<QuasiProbRow<Scalar>> rows;
    rows.reserve(static_cast<std::size_t>(p.rows()));
    for (Index i = 0; i < p.rows(); ++i) rows.push_back({i, p.row(i).transpose()});
    return rows;
}

} // namespace qent
