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
 * @file lemma1.hpp
 * @brief Oscillation of Psi = fhat(w,x) + fhat(y,z) under a joint rotation.
 *
 * A rotation gate on rows (k, l) moves, for every column q, the pair
 * (M(k,q), M(l,q)) and the pair (M^{-1}(q,k), M^{-1}(q,l)) by the same 2x2
 * rotation. The per-column contribution to Phi is Psi of the four numbers, so
 * the spread sup - inf of Psi over the rotation orbit, measured relative to
 * the product of the two pair norms, bounds how far one gate can move Phi.
 *
 * In canonical coordinates (w,y) = r(cos phi/2, sin phi/2) and
 * (x,z) = s(cos phi/2, -sin phi/2), phi in (0, pi/2], the spread is rs g(phi).
 */
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qent {

double psi(double w, double x, double y, double z);

/// Psi at (w cos t + y sin t, x cos t + z sin t, -w sin t + y cos t, -x sin t + z cos t).
double psi_rotated(double w, double x, double y, double z, double theta);

struct AlphaBeta {
    double alpha = 0;  ///< sup over theta
    double beta = 0;   ///< inf over theta
    double theta_max = 0;
    double theta_min = 0;
};

inline constexpr std::size_t kDefaultThetaGrid = 4096;

/**
 * Grid search over theta in [0, 2 pi) with golden-section refinement at the
 * best cells. The grid is augmented with points 1e-6 either side of every
 * angle where one of the rotated coordinates vanishes (Psi is not smooth
 * there), and with the analytic candidates: the canonical angles 0 and pi/4
 * and their images modulo pi/4.
 */
AlphaBeta alpha_beta(double w, double x, double y, double z, std::size_t grid_resolution = kDefaultThetaGrid);

/// (alpha - beta) / sqrt((w^2 + y^2)(x^2 + z^2)); 0 when either pair vanishes.
double lemma1_ratio(double w, double x, double y, double z, std::size_t grid_resolution = kDefaultThetaGrid);

struct CanonicalForm {
    double r = 0;
    double s = 0;
    double phi = 0;        ///< angle between the pairs after reduction, in (0, pi/2]
    double bisector = 0;   ///< rotation angle theta that takes the reduced input to canonical position
    bool negated = false;  ///< (w, y) was negated to bring phi below pi/2; Psi changes sign
    bool swapped = false;  ///< (w, y) and (x, z) exchanged roles; Psi unchanged

    /// Canonical quadruple (w, x, y, z) in bisector position.
    std::array<double, 4> canonical() const;
    /// The original quadruple, undoing rotation, swap and negation.
    std::array<double, 4> reconstruct() const;
};

/// Throws std::domain_error when a pair is zero or the pairs are proportional.
CanonicalForm canonical_form(double w, double x, double y, double z);

/**
 * g(phi) = | c2 log2 c2 - s2 log2 s2 - cos(phi) log2(cos(phi)/2) |,
 * c2 = cos^2(phi/2), s2 = sin^2(phi/2), with t log t -> 0 at the ends.
 * Domain (0, pi/2]; throws std::domain_error outside.
 */
double g_phi(double phi);

/// Maximum of g over `points` equally spaced angles in (0, pi/2] (plus pi/4 itself).
double g_phi_grid_max(std::size_t points, double* argmax = nullptr);

/// Generic numerical estimate with its provenance.
struct LemmaEstimate {
    double value = 0;
    std::size_t sample_count = 0;
    std::size_t grid_resolution = 0;
    std::uint64_t seed = 0;
    double tolerance = 0;
    std::vector<double> witness;
    std::string witness_label;
};

struct Lemma1Estimate : LemmaEstimate {
    double random_max = 0;        ///< over seeded random quadruples
    double phi_grid_max = 0;      ///< over the dense g(phi) grid
    double proportional_max = 0;  ///< over proportional quadruples
    std::size_t phi_grid_points = 0;
};

inline constexpr std::size_t kLemma1MinSamples = 100000;
inline constexpr std::size_t kLemma1PhiGridPoints = 1u << 20;

/**
 * sup of the ratio over (a) `samples` seeded random quadruples with pair
 * scales spread over [1e-3, 1e3], (b) a dense phi grid of g, and (c)
 * proportional quadruples. `samples` must be at least 1e5.
 */
Lemma1Estimate estimate_lemma1_constant(std::size_t samples, std::size_t grid_resolution, std::uint64_t seed);

} // namespace qent
