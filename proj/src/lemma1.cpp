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

#include "qent/lemma1.hpp"

#include "qent/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace qent {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr double kGolden = 0.6180339887498949;
constexpr double kSingularOffset = 1e-6;

struct SinCosTable {
    std::size_t resolution = 0;
    std::vector<double> cs;
    std::vector<double> sn;
};

const SinCosTable& grid_table(std::size_t resolution) {
    thread_local SinCosTable table;
    if (table.resolution != resolution) {
        table.resolution = resolution;
        table.cs.resize(resolution);
        table.sn.resize(resolution);
        for (std::size_t i = 0; i < resolution; ++i) {
            const double t = kTwoPi * static_cast<double>(i) / static_cast<double>(resolution);
            table.cs[i] = std::cos(t);
            table.sn[i] = std::sin(t);
        }
    }
    return table;
}

inline double psi_cs(double w, double x, double y, double z, double c, double s) {
    return fhat(w * c + y * s, x * c + z * s) + fhat(-w * s + y * c, -x * s + z * c);
}

// Golden-section search for an extremum of Psi on [lo, hi]; sign = +1 for max, -1 for min.
double golden(double w, double x, double y, double z, double lo, double hi, double sign, double* best_theta) {
    auto f = [&](double t) { return sign * psi_rotated(w, x, y, z, t); };
    double a = lo;
    double b = hi;
    double c = b - kGolden * (b - a);
    double d = a + kGolden * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < 80 && (b - a) > 1e-15; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kGolden * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kGolden * (b - a);
            fd = f(d);
        }
    }
    const double t = fc > fd ? c : d;
    *best_theta = t;
    return sign * std::max(fc, fd);
}

} // namespace

double psi(double w, double x, double y, double z) { return fhat(w, x) + fhat(y, z); }

double psi_rotated(double w, double x, double y, double z, double theta) {
    return psi_cs(w, x, y, z, std::cos(theta), std::sin(theta));
}

AlphaBeta alpha_beta(double w, double x, double y, double z, std::size_t grid_resolution) {
    if (grid_resolution < 1024) throw std::invalid_argument("alpha_beta needs a theta grid of at least 1024 points");
    AlphaBeta out;
    out.alpha = -std::numeric_limits<double>::infinity();
    out.beta = std::numeric_limits<double>::infinity();
    std::size_t imax = 0;
    std::size_t imin = 0;

    const auto& table = grid_table(grid_resolution);
    for (std::size_t i = 0; i < grid_resolution; ++i) {
        const double v = psi_cs(w, x, y, z, table.cs[i], table.sn[i]);
        if (v > out.alpha) {
            out.alpha = v;
            imax = i;
        }
        if (v < out.beta) {
            out.beta = v;
            imin = i;
        }
    }
    const double step = kTwoPi / static_cast<double>(grid_resolution);
    out.theta_max = step * static_cast<double>(imax);
    out.theta_min = step * static_cast<double>(imin);

    auto consider = [&](double t) {
        const double v = psi_rotated(w, x, y, z, t);
        if (v > out.alpha) {
            out.alpha = v;
            out.theta_max = t;
        }
        if (v < out.beta) {
            out.beta = v;
            out.theta_min = t;
        }
    };

    // The rotated coordinates of a pair at angle g vanish at theta = g + j pi/2.
    const double ga = std::atan2(y, w);
    const double gb = std::atan2(z, x);
    const bool a_nonzero = w != 0.0 || y != 0.0;
    const bool b_nonzero = x != 0.0 || z != 0.0;
    for (double g : {ga, gb}) {
        for (int j = 0; j < 4; ++j) {
            const double t = g + j * kPi / 2;
            consider(t - kSingularOffset);
            consider(t + kSingularOffset);
        }
    }
    // Analytic candidates: multiples of pi/4 from the bisector and from each pair.
    std::vector<double> anchors{ga, gb};
    if (a_nonzero && b_nonzero) {
        const double ra = std::hypot(w, y);
        const double rb = std::hypot(x, z);
        const double bx = w / ra + x / rb;
        const double by = y / ra + z / rb;
        if (bx != 0.0 || by != 0.0) anchors.push_back(std::atan2(by, bx));
    }
    for (double g : anchors)
        for (int j = 0; j < 8; ++j) consider(g + j * kPi / 4);

    double t = 0;
    const double hi = golden(w, x, y, z, out.theta_max - step, out.theta_max + step, +1.0, &t);
    if (hi > out.alpha) {
        out.alpha = hi;
        out.theta_max = t;
    }
    const double lo = golden(w, x, y, z, out.theta_min - step, out.theta_min + step, -1.0, &t);
    if (lo < out.beta) {
        out.beta = lo;
        out.theta_min = t;
    }
    return out;
}

double lemma1_ratio(double w, double x, double y, double z, std::size_t grid_resolution) {
    const double denom = std::sqrt((w * w + y * y) * (x * x + z * z));
    if (denom == 0.0) return 0.0;
    const auto ab = alpha_beta(w, x, y, z, grid_resolution);
    return (ab.alpha - ab.beta) / denom;
}

std::array<double, 4> CanonicalForm::canonical() const {
    return {r * std::cos(phi / 2), s * std::cos(phi / 2), r * std::sin(phi / 2), -s * std::sin(phi / 2)};
}

std::array<double, 4> CanonicalForm::reconstruct() const {
    const double first = bisector + phi / 2;
    const double second = bisector - phi / 2;
    double w = r * std::cos(first);
    double y = r * std::sin(first);
    double x = s * std::cos(second);
    double z = s * std::sin(second);
    if (swapped) {
        std::swap(w, x);
        std::swap(y, z);
    }
    if (negated) {
        w = -w;
        y = -y;
    }
    return {w, x, y, z};
}

CanonicalForm canonical_form(double w, double x, double y, double z) {
    const double ra = std::hypot(w, y);
    const double rb = std::hypot(x, z);
    if (ra == 0.0 || rb == 0.0) throw std::domain_error("canonical_form: a coordinate pair is zero");
    const double cross = w * z - y * x;
    if (std::abs(cross) <= 1e-12 * ra * rb)
        throw std::domain_error("canonical_form: pairs are proportional; use the proportional-case branch");

    CanonicalForm out;
    double aw = w, ay = y, bx = x, bz = z;
    if (aw * bx + ay * bz < 0) {
        aw = -aw;
        ay = -ay;
        out.negated = true;
    }
    // Canonical position puts the first pair counterclockwise of the second.
    if (bx * ay - bz * aw < 0) {
        std::swap(aw, bx);
        std::swap(ay, bz);
        out.swapped = true;
    }
    out.r = std::hypot(aw, ay);
    out.s = std::hypot(bx, bz);
    out.phi = std::atan2(std::abs(bx * ay - bz * aw), aw * bx + ay * bz);
    out.bisector = std::atan2(ay / out.r + bz / out.s, aw / out.r + bx / out.s);
    return out;
}

double g_phi(double phi) {
    if (!(phi > 0.0 && phi <= kPi / 2 + 1e-15)) throw std::domain_error("g_phi: phi must lie in (0, pi/2]");
    const double c2 = std::cos(phi / 2) * std::cos(phi / 2);
    const double s2 = std::sin(phi / 2) * std::sin(phi / 2);
    const double cp = std::cos(phi);
    // neg_t_log2_abs_t(t) = -t log2 t for t > 0
    const double cos_term = cp > 0 ? cp * std::log2(cp / 2) : 0.0;
    return std::abs(-neg_t_log2_abs_t(c2) + neg_t_log2_abs_t(s2) - cos_term);
}

double g_phi_grid_max(std::size_t points, double* argmax) {
    double best = g_phi(kPi / 4);
    double arg = kPi / 4;
    for (std::size_t k = 1; k <= points; ++k) {
        const double phi = (kPi / 2) * static_cast<double>(k) / static_cast<double>(points);
        const double v = g_phi(phi);
        if (v > best) {
            best = v;
            arg = phi;
        }
    }
    if (argmax) *argmax = arg;
    return best;
}

Lemma1Estimate estimate_lemma1_constant(std::size_t samples, std::size_t grid_resolution, std::uint64_t seed) {
    if (samples < kLemma1MinSamples) throw std::invalid_argument("estimate_lemma1_constant needs at least 1e5 samples");
    Lemma1Estimate out;
    out.sample_count = samples;
    out.grid_resolution = grid_resolution;
    out.seed = seed;
    out.tolerance = 1e-6;
    out.value = -1;

    auto record = [&](double ratio, std::array<double, 4> q, const char* label) {
        if (ratio > out.value) {
            out.value = ratio;
            out.witness.assign(q.begin(), q.end());
            out.witness_label = label;
        }
    };

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> log_scale(-3.0, 3.0);

    // (a) random quadruples; each pair gets an independent scale in [1e-3, 1e3].
    for (std::size_t i = 0; i < samples; ++i) {
        const double sa = std::pow(10.0, log_scale(rng));
        const double sb = std::pow(10.0, log_scale(rng));
        const double w = sa * normal(rng);
        const double y = sa * normal(rng);
        const double x = sb * normal(rng);
        const double z = sb * normal(rng);
        const double ratio = lemma1_ratio(w, x, y, z, grid_resolution);
        out.random_max = std::max(out.random_max, ratio);
        record(ratio, {w, x, y, z}, "random quadruple");
    }

    // (b) canonical family: the spread is exactly r s g(phi).
    out.phi_grid_points = kLemma1PhiGridPoints;
    double phi_star = 0;
    out.phi_grid_max = g_phi_grid_max(kLemma1PhiGridPoints, &phi_star);
    {
        CanonicalForm cf;
        cf.r = 1;
        cf.s = 1;
        cf.phi = phi_star;
        record(out.phi_grid_max, cf.canonical(), "canonical phi grid");
    }

    // (c) proportional pairs (x, z) = lambda (w, y), including the (t, t, 0, 0) family.
    const std::size_t proportional = std::max<std::size_t>(samples / 10, 1);
    for (std::size_t i = 0; i < proportional; ++i) {
        double w, y, lambda;
        if (i % 4 == 0) {
            w = std::pow(10.0, log_scale(rng));
            y = 0;
            lambda = 1;
        } else {
            w = normal(rng);
            y = normal(rng);
            lambda = std::pow(10.0, log_scale(rng)) * (normal(rng) < 0 ? -1.0 : 1.0);
        }
        const double ratio = lemma1_ratio(w, lambda * w, y, lambda * y, grid_resolution);
        out.proportional_max = std::max(out.proportional_max, ratio);
        record(ratio, {w, lambda * w, y, lambda * y}, "proportional quadruple");
    }
    return out;
}

} // namespace qent
