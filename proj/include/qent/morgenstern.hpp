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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qent {

inline constexpr Index kMorgensternMaxSide = 10;

/**
 * Largest |det| over all square submatrices (every row subset paired with every
 * column subset of the same size). Exhaustive, so min(rows, cols) is capped at
 * kMorgensternMaxSide.
 */
template <typename Derived>
typename Derived::Scalar morgenstern_potential(const Eigen::MatrixBase<Derived>& m) {
    using Scalar = typename Derived::Scalar;
    const Index rows = m.rows();
    const Index cols = m.cols();
    if (std::min(rows, cols) > kMorgensternMaxSide)
        throw std::invalid_argument("morgenstern_potential: min(rows, cols) exceeds exhaustive cap of 10");
    if (rows == 0 || cols == 0) return Scalar(0);

    // Enumerate subsets as bitmasks, bucketed by size.
    auto subsets_by_size = [](Index count) {
        std::vector<std::vector<std::vector<Index>>> by(static_cast<std::size_t>(count) + 1);
        for (unsigned long mask = 1; mask < (1ul << count); ++mask) {
            std::vector<Index> idx;
            for (Index b = 0; b < count; ++b)
                if (mask & (1ul << b)) idx.push_back(b);
            by[idx.size()].push_back(std::move(idx));
        }
        return by;
    };
    if (std::max(rows, cols) > 24)
        throw std::invalid_argument("morgenstern_potential: larger side exceeds enumeration limit of 24");
    const auto row_sets = subsets_by_size(rows);
    const auto col_sets = subsets_by_size(cols);

    Scalar best = 0;
    DenseMatrix<Scalar> sub;
    for (Index size = 1; size <= std::min(rows, cols); ++size) {
        sub.resize(size, size);
        for (const auto& rs : row_sets[static_cast<std::size_t>(size)]) {
            for (const auto& cs : col_sets[static_cast<std::size_t>(size)]) {
                for (Index a = 0; a < size; ++a)
                    for (Index b = 0; b < size; ++b)
                        sub(a, b) = m(rs[static_cast<std::size_t>(a)], cs[static_cast<std::size_t>(b)]);
                const Scalar d = size == 1 ? sub(0, 0) : sub.partialPivLu().determinant();
                best = std::max(best, std::abs(d));
            }
        }
    }
    return best;
}

} // namespace qent
