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

#include "oracles.hpp"

#include "qent/conditioning.hpp"
#include "qent/entropy.hpp"
#include "qent/morgenstern.hpp"
#include "qent/trace.hpp"
#include "qent/transforms.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace qent {
namespace {

constexpr double kPi = std::numbers::pi;

MatrixXd rotation2(double theta) {
    MatrixXd r(2, 2);
    r << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
    return r;
}

TEST(Fhat, Examples) {
    EXPECT_EQ(fhat(0.0, 7.0), 0.0);
    EXPECT_EQ(fhat(1.0, 1.0), 0.0);
    EXPECT_DOUBLE_EQ(fhat(0.5, 0.5), 0.5);
    EXPECT_EQ(fhat(1e-160, 1e-160), 0.0);
}

TEST(Fhat, SymmetricAndSignOdd) {
    EXPECT_DOUBLE_EQ(fhat(0.3, -2.0), fhat(-2.0, 0.3));
    EXPECT_DOUBLE_EQ(fhat(-0.3, 2.0), -fhat(0.3, 2.0));
}

TEST(QuasiEntropy, Identity) {
    for (Index n : {1, 3, 10}) EXPECT_EQ(quasi_entropy(MatrixXd(MatrixXd::Identity(n, n))), 0.0);
}

TEST(QuasiEntropy, Wht4) { EXPECT_NEAR(quasi_entropy(walsh_hadamard_matrix<double>(4)), 8.0, 1e-12); }

TEST(QuasiEntropy, Diagonal) {
    MatrixXd d(2, 2);
    d << 3, 0, 0, 1.0 / 3;
    EXPECT_NEAR(quasi_entropy(d), 0.0, 1e-15);
}

TEST(QuasiEntropy, RejectsWrongInverse) {
    const MatrixXd m = MatrixXd::Identity(3, 3) * 2;
    EXPECT_THROW(quasi_entropy(m, MatrixXd(MatrixXd::Identity(3, 3))), NumericalError);
}

TEST(QuasiEntropy, SingularInputThrows) {
    MatrixXd m(2, 2);
    m << 1, 2, 2, 4;
    EXPECT_THROW(quasi_entropy(m), NumericalError);
}

TEST(QuasiEntropy, MatchesOracleOnRandomMatrices) {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 20; ++t) {
        const MatrixXd m = oracle::random_conditioned(12, 50.0, rng);
        EXPECT_NEAR(quasi_entropy(m), oracle::phi(m), 1e-9 * std::max(1.0, std::abs(oracle::phi(m))));
    }
}

TEST(PartialQuasiEntropy, FullRangeIsFull) {
    std::mt19937_64 rng(43);
    const MatrixXd m = oracle::random_conditioned(9, 10.0, rng);
    const MatrixXd inv = oracle::inverse(m);
    EXPECT_NEAR(partial_quasi_entropy(m, inv, 9), quasi_entropy(m, inv), 1e-12);
}

TEST(PartialQuasiEntropy, BlockWht2) {
    MatrixXd m = MatrixXd::Identity(3, 3);
    m.topLeftCorner(2, 2) = walsh_hadamard_matrix<double>(2);
    EXPECT_NEAR(partial_quasi_entropy(m, oracle::inverse(m), 2), 2.0, 1e-14);
}

TEST(PartialQuasiEntropy, Identity) {
    const MatrixXd id = MatrixXd::Identity(6, 6);
    EXPECT_EQ(partial_quasi_entropy(id, id, 3), 0.0);
}

TEST(PartialQuasiEntropy, MatchesOracleColumnRestriction) {
    std::mt19937_64 rng(47);
    const MatrixXd m = oracle::random_conditioned(10, 20.0, rng);
    EXPECT_NEAR(partial_quasi_entropy(m, oracle::inverse(m), 4), oracle::phi(m, 4), 1e-10);
}

TEST(QuasiProbRows, Identity) {
    const MatrixXd id = MatrixXd::Identity(4, 4);
    const auto rows = quasi_prob_rows(id, id);
    for (Index i = 0; i < 4; ++i) {
        EXPECT_EQ(rows[static_cast<std::size_t>(i)].row, i);
        for (Index j = 0; j < 4; ++j) EXPECT_EQ(rows[static_cast<std::size_t>(i)].values(j), i == j ? 1.0 : 0.0);
    }
}

TEST(QuasiProbRows, EighthRotation) {
    const MatrixXd r = rotation2(kPi / 4);
    for (const auto& row : quasi_prob_rows(r, MatrixXd(r.transpose()))) {
        EXPECT_NEAR(row.values(0), 0.5, 1e-15);
        EXPECT_NEAR(row.values(1), 0.5, 1e-15);
    }
}

TEST(QuasiProbRows, RowSumsAreOne) {
    std::mt19937_64 rng(53);
    for (Index n : {8, 32, 128, 256}) {
        const MatrixXd m = oracle::random_conditioned(n, 100.0, rng);
        for (const auto& row : quasi_prob_rows(m, oracle::inverse(m))) EXPECT_NEAR(row.sum(), 1.0, 1e-10);
    }
}

TEST(QuasiProbRows, EntriesMayLeaveUnitInterval) {
    MatrixXd m(2, 2);
    m << 2, 1, 1, 1;
    const auto rows = quasi_prob_rows(m, oracle::inverse(m));
    EXPECT_NEAR(rows[0].values(0), 2.0, 1e-14);
    EXPECT_NEAR(rows[0].values(1), -1.0, 1e-14);
}

TEST(SpectralNorm, Examples) {
    EXPECT_NEAR(spectral_norm(MatrixXd(MatrixXd::Identity(5, 5))).value, 1.0, 1e-12);
    MatrixXd d = MatrixXd::Zero(2, 2);
    d(0, 0) = 2;
    d(1, 1) = 1;
    EXPECT_NEAR(spectral_norm(d).value, 2.0, 1e-10);
    EXPECT_NEAR(spectral_norm(rotation2(0.4)).value, 1.0, 1e-12);
}

TEST(SpectralNorm, MatchesSvdOracle) {
    std::mt19937_64 rng(59);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (Index n : {2, 7, 33, 128}) {
        MatrixXd m(n, n);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j) m(i, j) = normal(rng);
        const auto est = spectral_norm(m);
        EXPECT_TRUE(est.converged);
        EXPECT_LE(std::abs(est.value - oracle::norm2(m)), 1e-6 * oracle::norm2(m)) << "n " << n;
    }
}

TEST(SpectralNorm, RectangularAndZero) {
    MatrixXd m(2, 3);
    m << 3, 0, 0, 0, 4, 0;
    EXPECT_NEAR(spectral_norm(m).value, 4.0, 1e-9);
    EXPECT_EQ(spectral_norm(MatrixXd(MatrixXd::Zero(3, 3))).value, 0.0);
}

TEST(SpectralNorm, DeterministicStart) {
    std::mt19937_64 rng(61);
    const MatrixXd m = oracle::random_conditioned(20, 30.0, rng);
    EXPECT_EQ(spectral_norm(m).value, spectral_norm(m).value);
}

TEST(ConditionNumber, Examples) {
    std::mt19937_64 rng(67);
    EXPECT_NEAR(condition_number(oracle::random_orthogonal(10, rng)), 1.0, 1e-9);
    MatrixXd d = MatrixXd::Zero(2, 2);
    d(0, 0) = 4;
    d(1, 1) = 1;
    EXPECT_NEAR(condition_number(d), 4.0, 1e-9);
    d(0, 0) = 10;
    d(1, 1) = 0.1;
    EXPECT_NEAR(condition_number(d), 100.0, 1e-7);
}

TEST(ConditionNumber, AtLeastOneAndMatchesOracle) {
    std::mt19937_64 rng(71);
    for (int t = 0; t < 10; ++t) {
        const MatrixXd m = oracle::random_conditioned(16, 80.0, rng);
        const double k = condition_number(m);
        EXPECT_GE(k, 1 - 1e-9);
        EXPECT_LE(std::abs(k - oracle::cond(m)), 1e-6 * oracle::cond(m));
    }
}

TEST(UniformCondition, WhtExact) {
    TraceOptions opts;
    opts.cond_every = 1;
    const auto u = uniform_condition_number(build_trace(wht_circuit<double>(8), opts));
    EXPECT_TRUE(u.exact);
    EXPECT_NEAR(u.value, 1.0, 1e-9);
}

TEST(UniformCondition, SingleConstant) {
    Circuitd c(2);
    c.scale(0, 3.0);
    TraceOptions opts;
    opts.cond_every = 1;
    EXPECT_NEAR(uniform_condition_number(build_trace(c, opts)).value, 3.0, 1e-9);
}

TEST(UniformCondition, EmptyCircuit) { EXPECT_EQ(uniform_condition_number(build_trace(Circuitd(4))).value, 1.0); }

TEST(UniformCondition, SampledIsFlaggedLowerBound) {
    const auto u = uniform_condition_number(build_trace(wht_circuit<double>(16)));
    EXPECT_FALSE(u.exact);
}

TEST(UniformCondition, ExactMatchesOracleMaximum) {
    std::mt19937_64 rng(73);
    const auto c = oracle::random_circuit(6, 40, 2.0, rng);
    TraceOptions opts;
    opts.cond_every = 1;
    double expected = 1;
    for (std::ptrdiff_t i = 0; i <= 40; ++i) expected = std::max(expected, oracle::cond(oracle::defining(c, i)));
    EXPECT_NEAR(uniform_condition_number(build_trace(c, opts)).value, expected, 1e-6 * expected);
}

TEST(Morgenstern, Examples) {
    for (Index n : {1, 4, 10}) EXPECT_NEAR(morgenstern_potential(MatrixXd(MatrixXd::Identity(n, n))), 1.0, 1e-12);
    MatrixXd h(2, 2);
    h << 1, 1, 1, -1;
    EXPECT_NEAR(morgenstern_potential(h), 2.0, 1e-12);
    MatrixXd c(1, 1);
    c << -3.5;
    EXPECT_EQ(morgenstern_potential(c), 3.5);
}

TEST(Morgenstern, SizeCap) { EXPECT_THROW(morgenstern_potential(MatrixXd(MatrixXd::Identity(11, 11))), std::invalid_argument); }

TEST(Morgenstern, RotationAtMostDoubles) {
    std::mt19937_64 rng(79);
    for (Index n : {2, 4, 6}) {
        const auto c = oracle::random_circuit(n, 30, 2.0, rng, 0.2);
        MatrixXd m = MatrixXd::Identity(n, n);
        for (const auto& g : c.gates) {
            const double before = morgenstern_potential(m);
            m = oracle::gate_matrix(n, g) * m;
            if (g.is_rotation()) {
                EXPECT_LE(morgenstern_potential(m), 2 * before + 1e-9);
            }
        }
    }
}

TEST(Properties, ScaleInvariance) {
    std::mt19937_64 rng(83);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (Index n : {4, 16, 64}) {
        const MatrixXd m = oracle::random_conditioned(n, 30.0, rng);
        VectorXd d(n);
        for (Index i = 0; i < n; ++i) d(i) = std::pow(10.0, 2 * unit(rng)) * (unit(rng) < 0 ? -1 : 1);
        const MatrixXd dm = d.asDiagonal() * m;
        EXPECT_NEAR(quasi_entropy(dm), quasi_entropy(m), 1e-8);
        EXPECT_NEAR(quasi_entropy(MatrixXd(-7.5 * m)), quasi_entropy(m), 1e-8);
    }
}

TEST(Properties, Duality) {
    std::mt19937_64 rng(89);
    for (Index n : {5, 20, 50}) {
        const MatrixXd m = oracle::random_conditioned(n, 40.0, rng);
        const MatrixXd inv = oracle::inverse(m);
        EXPECT_NEAR(quasi_entropy(MatrixXd(inv.transpose())), quasi_entropy(m), 1e-8);
    }
}

TEST(Properties, OrthogonalRestriction) {
    std::mt19937_64 rng(97);
    for (Index n : {2, 8, 32}) {
        const MatrixXd q = oracle::random_orthogonal(n, rng);
        const double phi = quasi_entropy(q);
        EXPECT_NEAR(phi, unitary_entropy(q), 1e-10);
        EXPECT_GE(phi, -1e-9);
        EXPECT_LE(phi, n * std::log2(static_cast<double>(n)) + 1e-9);
    }
}

TEST(CheckedInverse, RejectsSingular) {
    MatrixXd m(3, 3);
    m << 1, 2, 3, 4, 5, 6, 7, 8, 9;
    EXPECT_THROW(checked_inverse(m), NumericalError);
}

} // namespace
} // namespace qent
