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

// Independent reference implementations and frozen reference values for tests.
// Nothing here calls the incremental machinery under test: gate matrices are
// formed explicitly, inverses come from full-pivot LU, norms from SVD.

#pragma once

#include "qent/circuit.hpp"
#include "qent/types.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace qent::oracle {

// Frozen reference values, computed offline in double precision with numpy.
inline constexpr double kGPiOver4 = 1.2715533031636;  // g(pi/4)
inline constexpr double kGMax = 1.27155;              // max of g on (0, pi/2], attained at pi/4
inline constexpr double kPhiDft[5][2] = {             // {m, Phi(dft_real_embedding(m))}
    {2, 4.0},
    {4, 16.0},
    {8, 52.0},
    {16, 140.80700829354},
    {32, 350.61047},
};
inline constexpr double kIdMinusWht16Norm = 2.0;  // ||I - WHT_16||_2
// x = (a, b), y = (b, a) with a^2 + b^2 = 1, ab = 1/e: sum fhat = 2 / (e ln 2), above the range bound log2 2 = 1.
inline constexpr double kRangeTwoDimA = 0.91576295521740692;
inline constexpr double kRangeTwoDimB = 0.401719068319493;
inline constexpr double kRangeTwoDimSum = 1.061475690846086;
inline constexpr double kC0Radius[4][2] = {       // {n, largest valid flat-row radius}
    {16, 0.351},
    {64, 0.312},
    {256, 0.294},
    {4096, 0.278},
};

inline double ref_fhat(double x, double y) {
    const double p = x * y;
    if (std::abs(p) < 1e-300) return 0.0;
    return -p * std::log(std::abs(p)) / std::log(2.0);
}

/// Full dim x dim matrix of one gate.
inline MatrixXd gate_matrix(Index dim, const Gated& g) {
    MatrixXd a = MatrixXd::Identity(dim, dim);
    if (g.is_rotation()) {
        const double c = std::cos(g.theta);
        const double s = std::sin(g.theta);
        a(g.k, g.k) = c;
        a(g.k, g.l) = s;
        a(g.l, g.k) = -s;
        a(g.l, g.l) = c;
    } else {
        a(g.k, g.k) = g.c;
    }
    return a;
}

/// Product G_i ... G_1 of explicit gate matrices.
inline MatrixXd defining(const Circuitd& c, std::ptrdiff_t steps = -1) {
    const std::size_t stop = steps < 0 ? c.gates.size() : static_cast<std::size_t>(steps);
    MatrixXd m = MatrixXd::Identity(c.dim, c.dim);
    for (std::size_t i = 0; i < stop; ++i) m = gate_matrix(c.dim, c.gates[i]) * m;
    return m;
}

inline MatrixXd inverse(const MatrixXd& m) { return m.fullPivLu().inverse(); }

inline double norm2(const MatrixXd& m) {
    Eigen::JacobiSVD<MatrixXd> svd(m);
    return svd.singularValues()(0);
}

inline double cond(const MatrixXd& m) {
    Eigen::JacobiSVD<MatrixXd> svd(m);
    const auto& s = svd.singularValues();
    return s(0) / s(s.size() - 1);
}

inline double phi(const MatrixXd& m, Index cols = -1) {
    const MatrixXd inv = inverse(m);
    const Index c = cols < 0 ? m.cols() : cols;
    double total = 0;
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < c; ++j) total += ref_fhat(m(i, j), inv(j, i));
    return total;
}

/// Walsh-Hadamard by repeated Kronecker products of the 2x2 kernel.
inline MatrixXd kron_wht(Index n) {
    MatrixXd h(1, 1);
    h(0, 0) = 1;
    while (h.rows() < n) {
        const Index s = h.rows();
        MatrixXd next(2 * s, 2 * s);
        next << h, h, h, -h;
        h = next;
    }
    return h / std::sqrt(static_cast<double>(n));
}

/// Complex normalized DFT embedded as [[Re, -Im], [Im, Re]].
inline MatrixXd complex_dft_embedding(Index m) {
    Eigen::MatrixXcd f(m, m);
    const double pi = std::numbers::pi;
    for (Index k = 0; k < m; ++k)
        for (Index l = 0; l < m; ++l)
            f(k, l) = std::polar(1.0 / std::sqrt(static_cast<double>(m)), -2 * pi * static_cast<double>(k * l) / m);
    MatrixXd out(2 * m, 2 * m);
    out << f.real(), -f.imag(), f.imag(), f.real();
    return out;
}

/// Dense theta sweep of Psi; returns (max, min).
inline std::pair<double, double> brute_alpha_beta(double w, double x, double y, double z, int points = 400000) {
    double hi = -1e300;
    double lo = 1e300;
    for (int i = 0; i < points; ++i) {
        const double t = 2 * std::numbers::pi * i / points;
        const double c = std::cos(t);
        const double s = std::sin(t);
        const double v = ref_fhat(w * c + y * s, x * c + z * s) + ref_fhat(-w * s + y * c, -x * s + z * c);
        hi = std::max(hi, v);
        lo = std::min(lo, v);
    }
    return {hi, lo};
}

inline MatrixXd random_orthogonal(Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    MatrixXd g(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) g(i, j) = normal(rng);
    Eigen::HouseholderQR<MatrixXd> qr(g);
    return qr.householderQ();
}

/// U diag(s) V^T with log-uniform s in [1, kappa]; the extremes are pinned so cond = kappa.
inline MatrixXd random_conditioned(Index n, double kappa, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    VectorXd s(n);
    for (Index i = 0; i < n; ++i) s(i) = std::pow(kappa, unit(rng));
    s(0) = 1;
    if (n > 1) s(n - 1) = kappa;
    return random_orthogonal(n, rng) * s.asDiagonal() * random_orthogonal(n, rng).transpose();
}

/// Seeded circuit of rotations and constants with |log c| <= log(c_max).
inline Circuitd random_circuit(Index dim, std::size_t gates, double c_max, std::mt19937_64& rng,
                               double constant_fraction = 0.3) {
    std::uniform_int_distribution<Index> idx(0, dim - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Circuitd c(dim);
    for (std::size_t i = 0; i < gates; ++i) {
        if (unit(rng) < constant_fraction) {
            double v = std::pow(c_max, 2 * unit(rng) - 1);
            if (unit(rng) < 0.5) v = -v;
            c.scale(idx(rng), v);
        } else {
            Index k = idx(rng);
            Index l = idx(rng);
            while (l == k) l = idx(rng);
            if (k > l) std::swap(k, l);
            c.rotate(k, l, 2 * std::numbers::pi * unit(rng));
        }
    }
    return c;
}

} // namespace qent::oracle
