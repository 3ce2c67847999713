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
 * @file transforms.hpp
 * @brief Normalized Walsh-Hadamard and real-embedded DFT, as matrices and as circuits.
 *
 * The complex m-point DFT is embedded in R^{2m} in block layout: coordinates
 * [0, m) hold real parts and [m, 2m) the imaginary parts of the same complex
 * entries.
 *
 * Circuits reproduce the target matrix exactly, with no output relabelling:
 *  - a normalized butterfly (u, v) -> ((u+v)/sqrt2, (u-v)/sqrt2) is
 *    rotation(pi/4) followed by constant(-1) on the second coordinate;
 *  - a coordinate swap is rotation(pi/2) followed by constant(-1) on the second
 *    coordinate (the model has no reflections, so every det -1 step carries an
 *    explicit sign gate);
 *  - multiplying complex entry j by e^{-i a} is rotation(a) on (j, m + j).
 */
#pragma once

#include "qent/circuit.hpp"
#include "qent/types.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qent {

enum class TransformKind { walsh_hadamard, dft_real };

struct TransformSpec {
    TransformKind kind = TransformKind::walsh_hadamard;
    Index n = 0;  ///< real output dimension
};

inline bool is_power_of_two(Index n) { return n >= 1 && std::has_single_bit(static_cast<unsigned long long>(n)); }

inline int log2_exact(Index n) { return std::countr_zero(static_cast<unsigned long long>(n)); }

/// Rotation budget constant for fft_circuit: rotations <= kFftRotationConstant * m * log2(m), m >= 2.
inline constexpr double kFftRotationConstant = 2.0;

/// F(i, j) = n^{-1/2} (-1)^{<bits(i), bits(j)>} with 0-based i, j.
template <typename Scalar = double>
DenseMatrix<Scalar> walsh_hadamard_matrix(Index n) {
    if (!is_power_of_two(n)) throw std::invalid_argument("n must be a power of 2");
    const Scalar scale = Scalar(1) / std::sqrt(Scalar(n));
    DenseMatrix<Scalar> f(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
            f(i, j) = (std::popcount(static_cast<unsigned long long>(i & j)) & 1) ? -scale : scale;
    return f;
}

/**
 * Real 2m x 2m matrix of the normalized m-point DFT, F(k, l) = m^{-1/2} e^{-2 pi i k l / m},
 * acting on (real block, imaginary block).
 */
template <typename Scalar = double>
DenseMatrix<Scalar> dft_real_embedding(Index m) {
    if (m < 1) throw std::invalid_argument("dft order m must be at least 1");
    DenseMatrix<Scalar> f(2 * m, 2 * m);
    const Scalar scale = Scalar(1) / std::sqrt(Scalar(m));
    for (Index k = 0; k < m; ++k) {
        for (Index l = 0; l < m; ++l) {
            // reduce k*l mod m first so large orders keep full angle accuracy
            const Scalar angle = Scalar(2) * std::numbers::pi_v<Scalar> * Scalar((k * l) % m) / Scalar(m);
            const Scalar re = scale * std::cos(angle);
            const Scalar im = -scale * std::sin(angle);
            f(k, l) = re;
            f(k, m + l) = -im;
            f(m + k, l) = im;
            f(m + k, m + l) = re;
        }
    }
    return f;
}

template <typename Scalar>
DenseMatrix<Scalar> transform_matrix(const TransformSpec& spec) {
    if (spec.kind == TransformKind::walsh_hadamard) return walsh_hadamard_matrix<Scalar>(spec.n);
    if (spec.n < 2 || spec.n % 2 != 0) throw std::invalid_argument("dft_real needs an even dimension");
    return dft_real_embedding<Scalar>(spec.n / 2);
}

namespace detail {

template <typename Scalar>
void butterfly(Circuit<Scalar>& c, Index a, Index b) {
    c.rotate(a, b, std::numbers::pi_v<Scalar> / 4).scale(b, Scalar(-1));
}

template <typename Scalar>
void swap_coordinates(Circuit<Scalar>& c, Index a, Index b) {
    if (a > b) std::swap(a, b);
    c.rotate(a, b, std::numbers::pi_v<Scalar> / 2).scale(b, Scalar(-1));
}

template <typename Scalar>
void append_scale(Circuit<Scalar>& c, Scalar scale) {
    if (scale == Scalar(1)) return;
    if (scale == Scalar(0) || !std::isfinite(static_cast<double>(scale)))
        throw std::invalid_argument("output scale must be a nonzero finite number");
    for (Index k = 0; k < c.io_dim; ++k) c.scale(k, scale);
}

} // namespace detail

/**
 * In-place Walsh-Hadamard circuit: log2(n) stages of n/2 butterflies on
 * coordinate pairs (j, j + h). Exactly (n/2) log2 n rotations; every prefix is
 * orthogonal. A `scale` other than 1 appends n constant gates.
 */
template <typename Scalar = double>
Circuit<Scalar> wht_circuit(Index n, Scalar scale = Scalar(1)) {
    if (!is_power_of_two(n)) throw std::invalid_argument("n must be a power of 2");
    Circuit<Scalar> c(n);
    c.gates.reserve(static_cast<std::size_t>(n * log2_exact(n)));
    for (Index h = 1; h < n; h *= 2)
        for (Index block = 0; block < n; block += 2 * h)
            for (Index j = block; j < block + h; ++j) detail::butterfly(c, j, j + h);
    detail::append_scale(c, scale);
    return c;
}

/**
 * Radix-2 decimation-in-time FFT on dimension 2m: bit-reversal swaps, then
 * for each stage a twiddle rotation on (j, m + j) and butterflies on the real
 * and imaginary pairs. Each stage contributes a factor 2^{-1/2}, so the output
 * is the normalized DFT.
 *
 * Rotation count: (m/2) log2 m twiddles at most, m log2 m butterfly rotations,
 * and at most m swap rotations, which is <= 2 m log2 m for m >= 2.
 */
template <typename Scalar = double>
Circuit<Scalar> fft_circuit(Index m, Scalar scale = Scalar(1)) {
    if (!is_power_of_two(m)) throw std::invalid_argument("m must be a power of 2");
    Circuit<Scalar> c(2 * m);
    const int bits = log2_exact(m);

    for (Index i = 0; i < m; ++i) {
        Index r = 0;
        for (int b = 0; b < bits; ++b)
            if (i & (Index(1) << b)) r |= Index(1) << (bits - 1 - b);
        if (i < r) {
            detail::swap_coordinates(c, i, r);
            detail::swap_coordinates(c, m + i, m + r);
        }
    }

    for (Index len = 2; len <= m; len *= 2) {
        const Index half = len / 2;
        for (Index block = 0; block < m; block += len) {
            for (Index j = 0; j < half; ++j) {
                const Index top = block + j;
                const Index bottom = top + half;
                if (j != 0) {
                    const Scalar angle = Scalar(2) * std::numbers::pi_v<Scalar> * Scalar(j) / Scalar(len);
                    c.rotate(bottom, m + bottom, angle);
                }
                detail::butterfly(c, top, bottom);
                detail::butterfly(c, m + top, m + bottom);
            }
        }
    }
    detail::append_scale(c, scale);
    return c;
}

template <typename Scalar>
Circuit<Scalar> transform_circuit(const TransformSpec& spec) {
    if (spec.kind == TransformKind::walsh_hadamard) return wht_circuit<Scalar>(spec.n);
    if (spec.n < 2 || spec.n % 2 != 0) throw std::invalid_argument("dft_real needs an even dimension");
    return fft_circuit<Scalar>(spec.n / 2);
}

} // namespace qent
