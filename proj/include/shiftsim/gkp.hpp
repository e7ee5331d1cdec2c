// Copyright 2026 The shiftsim Authors
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

// Ideal GKP code in rigid-lattice frame. Codewords are the (unnormalizable)
// lattices of even and odd multiples of lambda; a state is the logical
// content plus the accumulated real displacement on each axis.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

#include "error.hpp"
#include "logical.hpp"
#include "random.hpp"

namespace shiftsim {

inline constexpr double kSqrtPi = 1.772453850905516027298167483341145182797549456122387128213807789852911284591;

class GkpCode {
public:
    /// Throws NonPositiveSpacing for non-positive spacings. With
    /// `strict_constraint`, lambda_v * lambda_h must equal pi within 1e-9.
    GkpCode(double lambda_v, double lambda_h, bool strict_constraint)
        : lambda_v_(lambda_v), lambda_h_(lambda_h), strict_(strict_constraint) {
        if (!(lambda_v > 0.0) || !(lambda_h > 0.0) || !std::isfinite(lambda_v) || !std::isfinite(lambda_h)) {
            throw Error(ErrorCode::NonPositiveSpacing, "GKP spacings must be positive and finite");
        }
        if (strict_ && std::abs(lambda_v * lambda_h - std::numbers::pi) > 1e-9) {
            throw Error(ErrorCode::InvalidGeometry, "strict GKP code requires lambda_v * lambda_h = pi");
        }
    }

    double lambda_v() const { return lambda_v_; }
    double lambda_h() const { return lambda_h_; }
    bool strict_constraint() const { return strict_; }

private:
    double lambda_v_;
    double lambda_h_;
    bool strict_;
};

/// Code on the uncertainty surface: lambda_h = pi / lambda_v.
inline GkpCode make_gkp(double lambda_v) {
    if (!(lambda_v > 0.0) || !std::isfinite(lambda_v)) {
        throw Error(ErrorCode::NonPositiveSpacing, "lambda_v must be positive");
    }
    // pi / sqrt(pi) is one ulp off sqrt(pi); keep the square code exactly square.
    return GkpCode(lambda_v, lambda_v == kSqrtPi ? kSqrtPi : std::numbers::pi / lambda_v, true);
}

/// Square code, lambda_v = lambda_h = sqrt(pi).
inline GkpCode make_square_gkp() { return make_gkp(kSqrtPi); }

struct GkpState {
    LogicalAmplitudes logical;
    double delta_v = 0.0;
    double delta_h = 0.0;
};

inline GkpState encode_gkp(const LogicalAmplitudes &amps) { return GkpState{amps, 0.0, 0.0}; }

inline GkpState apply_displacement_cv(const GkpState &state, double dv, double dh) {
    return GkpState{state.logical, state.delta_v + dv, state.delta_h + dh};
}

struct CenteredMod {
    int64_t multiple = 0;
    double residual = 0.0;
};

/// x = multiple * lambda + residual with residual in [-lambda/2, lambda/2).
inline CenteredMod centered_divmod(double x, double lambda) {
    if (!(lambda > 0.0)) {
        throw Error(ErrorCode::NonPositiveSpacing, "lambda must be positive");
    }
    const double half = 0.5 * lambda;
    double n = std::floor(x / lambda + 0.5);
    double r = std::fma(-n, lambda, x);
    // x / lambda rounds, so the first guess can sit one bin off near edges.
    if (r >= half) {
        n += 1.0;
        r = std::fma(-n, lambda, x);
    } else if (r < -half) {
        n -= 1.0;
        r = std::fma(-n, lambda, x);
    }
    return CenteredMod{static_cast<int64_t>(n), r};
}

inline double centered_mod(double x, double lambda) { return centered_divmod(x, lambda).residual; }

/// Strict threshold |delta| < lambda / 2.
inline bool correctable(double delta, double lambda) {
    if (!(lambda > 0.0)) {
        throw Error(ErrorCode::NonPositiveSpacing, "lambda must be positive");
    }
    return std::abs(delta) < 0.5 * lambda;
}

struct GkpDecodeOutcome {
    double residual_v = 0.0;
    double residual_h = 0.0;
    int64_t lattice_multiple_v = 0;
    int64_t lattice_multiple_h = 0;
    LogicalAction logical_action = LogicalAction::I;
};

/// Bins each axis to the nearest lattice point and removes the displacement.
/// An odd number of vertical lattice steps leaves X_L, an odd number of
/// horizontal steps leaves Z_L.
inline std::pair<GkpState, GkpDecodeOutcome> decode_gkp(const GkpState &state, const GkpCode &code) {
    auto v = centered_divmod(state.delta_v, code.lambda_v());
    auto h = centered_divmod(state.delta_h, code.lambda_h());
    GkpDecodeOutcome out;
    out.residual_v = v.residual;
    out.residual_h = h.residual;
    out.lattice_multiple_v = v.multiple;
    out.lattice_multiple_h = h.multiple;
    out.logical_action = make_action(v.multiple % 2 != 0, h.multiple % 2 != 0);
    return {GkpState{apply_action(state.logical, out.logical_action), 0.0, 0.0}, out};
}

namespace detail {

/// P(|N(0, sigma^2)| >= x) for x >= 0.
inline double two_sided_tail(double x, double sigma) { return std::erfc(x / (sigma * std::numbers::sqrt2)); }

}  // namespace detail

/// Smallest M with Gaussian mass beyond (M + 1/2) lambda below 1e-12.
inline int64_t analytic_truncation(double sigma, double lambda) {
    int64_t m = 0;
    while (detail::two_sided_tail((m + 0.5) * lambda, sigma) >= 1e-12) {
        ++m;
    }
    return m;
}

/// Probability that Gaussian displacement noise of width sigma lands in an
/// odd bin [m lambda - lambda/2, m lambda + lambda/2), i.e. that binning
/// leaves a logical error on that axis.
inline double logical_error_prob_analytic(double sigma, double lambda) {
    if (!(sigma > 0.0) || !(lambda > 0.0) || !std::isfinite(sigma) || !std::isfinite(lambda)) {
        throw Error(ErrorCode::NonPositiveParameter, "sigma and lambda must be positive");
    }
    const int64_t max_m = analytic_truncation(sigma, lambda);
    double p = 0.0;
    // Both signs of m contribute equally; the tail difference already counts both.
    for (int64_t m = 1; m <= max_m; m += 2) {
        p += detail::two_sided_tail((m - 0.5) * lambda, sigma) - detail::two_sided_tail((m + 0.5) * lambda, sigma);
    }
    return std::clamp(p, 0.0, 1.0);
}

/// Probability that decoding leaves any logical action when both axes see
/// independent Gaussian noise. A zero sigma contributes no error.
inline double logical_error_prob_analytic_plane(double sigma_v, double sigma_h, const GkpCode &code) {
    if (sigma_v < 0.0 || sigma_h < 0.0) {
        throw Error(ErrorCode::NonPositiveParameter, "sigmas must be nonnegative");
    }
    double pv = sigma_v > 0.0 ? logical_error_prob_analytic(sigma_v, code.lambda_v()) : 0.0;
    double ph = sigma_h > 0.0 ? logical_error_prob_analytic(sigma_h, code.lambda_h()) : 0.0;
    return 1.0 - (1.0 - pv) * (1.0 - ph);
}

/// Independent Gaussian displacements. Always consumes four uniforms.
inline std::pair<double, double> sample_displacement_error(double sigma_v, double sigma_h, RandomStream &rng) {
    if (!(sigma_v >= 0.0) || !(sigma_h >= 0.0)) {
        throw Error(ErrorCode::NonPositiveParameter, "sigmas must be nonnegative");
    }
    double zv = rng.normal();
    double zh = rng.normal();
    return {sigma_v == 0.0 ? 0.0 : sigma_v * zv, sigma_h == 0.0 ? 0.0 : sigma_h * zh};
}

}  // namespace shiftsim
