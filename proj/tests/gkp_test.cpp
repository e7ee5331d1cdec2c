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

#include "shiftsim/gkp.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"

using namespace shiftsim;

TEST(GkpCode, spacings) {
    GkpCode sq = make_square_gkp();
    EXPECT_NEAR(sq.lambda_v(), std::sqrt(std::numbers::pi), 1e-15);
    EXPECT_NEAR(sq.lambda_h(), std::sqrt(std::numbers::pi), 1e-15);
    GkpCode rect = make_gkp(1.0);
    EXPECT_NEAR(rect.lambda_v() * rect.lambda_h(), std::numbers::pi, 1e-12);
}

TEST(GkpCode, validation) {
    try {
        make_gkp(0.0);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::NonPositiveSpacing);
    }
    EXPECT_THROW(GkpCode(-1.0, 1.0, false), Error);
    EXPECT_THROW(GkpCode(1.0, 1.0, true), Error);
    EXPECT_NO_THROW(GkpCode(1.0, 1.0, false));
}

TEST(CenteredMod, half_open_interval) {
    const double lam = kSqrtPi;
    EXPECT_DOUBLE_EQ(centered_mod(0.3, lam), 0.3);
    EXPECT_EQ(centered_divmod(0.5 * lam, lam).multiple, 1);
    EXPECT_NEAR(centered_mod(0.5 * lam, lam), -0.5 * lam, 1e-15);
    EXPECT_EQ(centered_divmod(-0.5 * lam, lam).multiple, 0);
    EXPECT_EQ(centered_divmod(2.0 * lam + 0.1, lam).multiple, 2);
    EXPECT_EQ(centered_divmod(-1.2 * lam, lam).multiple, -1);
}

TEST(CenteredMod, residual_always_in_range) {
    RandomStream rng(11);
    for (int i = 0; i < 100000; ++i) {
        double lam = 0.1 + 3.0 * rng.uniform();
        double x = 40.0 * (rng.uniform() - 0.5);
        auto cm = centered_divmod(x, lam);
        ASSERT_GE(cm.residual, -0.5 * lam);
        ASSERT_LT(cm.residual, 0.5 * lam);
        ASSERT_NEAR(cm.multiple * lam + cm.residual, x, 1e-12);
    }
}

TEST(Correctable, strict_threshold) {
    const double lam = kSqrtPi;
    EXPECT_TRUE(correctable(0.0, lam));
    EXPECT_TRUE(correctable(0.88, lam));
    EXPECT_FALSE(correctable(0.5 * lam, lam));
    EXPECT_FALSE(correctable(-0.5 * lam, lam));
    EXPECT_FALSE(correctable(1.0, lam));
}

TEST(DecodeGkp, small_displacement_recovers) {
    GkpCode code = make_square_gkp();
    LogicalAmplitudes amps(0.6, 0.8);
    auto [out, info] = decode_gkp(apply_displacement_cv(encode_gkp(amps), 0.3, -0.2), code);
    EXPECT_EQ(info.logical_action, LogicalAction::I);
    EXPECT_DOUBLE_EQ(info.residual_v, 0.3);
    EXPECT_DOUBLE_EQ(info.residual_h, -0.2);
    EXPECT_TRUE(out.logical.equivalent(amps));
    EXPECT_EQ(out.delta_v, 0.0);
}

TEST(DecodeGkp, one_spacing_is_logical) {
    GkpCode code = make_square_gkp();
    LogicalAmplitudes amps(0.6, 0.8);
    auto [out, info] = decode_gkp(apply_displacement_cv(encode_gkp(amps), kSqrtPi, 0.0), code);
    EXPECT_EQ(info.logical_action, LogicalAction::XL);
    EXPECT_TRUE(out.logical.equivalent(amps.swapped()));
    auto [out2, info2] = decode_gkp(apply_displacement_cv(encode_gkp(amps), 0.0, 1.1 * kSqrtPi), code);
    EXPECT_EQ(info2.logical_action, LogicalAction::ZL);
    EXPECT_TRUE(out2.logical.equivalent(amps.phase_flipped()));
    auto [out3, info3] = decode_gkp(apply_displacement_cv(encode_gkp(amps), 2.0 * kSqrtPi, -1.9 * kSqrtPi), code);
    EXPECT_EQ(info3.logical_action, LogicalAction::I);
}

TEST(DecodeGkp, boundary_convention) {
    GkpCode code = make_square_gkp();
    auto at = [&](double d) { return decode_gkp(apply_displacement_cv(encode_gkp({}), d, 0.0), code).second.logical_action; };
    EXPECT_EQ(at(0.5 * kSqrtPi), LogicalAction::XL);
    EXPECT_EQ(at(-0.5 * kSqrtPi), LogicalAction::I);
    EXPECT_EQ(at(std::nextafter(0.5 * kSqrtPi, 0.0)), LogicalAction::I);
}

TEST(AnalyticError, matches_quadrature) {
    for (double s : {0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6}) {
        double sigma = s * kSqrtPi;
        EXPECT_NEAR(logical_error_prob_analytic(sigma, kSqrtPi), oracle::odd_bin_mass_quadrature(sigma, kSqrtPi), 1e-10)
            << "sigma/sqrt(pi)=" << s;
    }
}

TEST(AnalyticError, limits_and_monotonicity) {
    // Small sigma: dominated by the first odd bin.
    double sigma = 0.15;
    double lead = std::erfc(0.5 * kSqrtPi / (sigma * std::sqrt(2.0)));
    EXPECT_NEAR(logical_error_prob_analytic(sigma, kSqrtPi) / lead, 1.0, 1e-6);
    // Wide noise approaches a fair coin.
    EXPECT_NEAR(logical_error_prob_analytic(50.0, kSqrtPi), 0.5, 1e-6);
    double prev = 0.0;
    for (int i = 1; i <= 40; ++i) {
        double p = logical_error_prob_analytic(0.05 * i, kSqrtPi);
        EXPECT_GE(p, prev);
        EXPECT_LE(p, 0.5 + 1e-12);
        prev = p;
    }
}

TEST(AnalyticError, truncation) {
    EXPECT_EQ(analytic_truncation(0.1, kSqrtPi), 0);
    int64_t m = analytic_truncation(1.0, kSqrtPi);
    EXPECT_LT(std::erfc((m + 0.5) * kSqrtPi / std::sqrt(2.0)), 1e-12);
    EXPECT_GE(std::erfc((m - 0.5) * kSqrtPi / std::sqrt(2.0)), 1e-12);
}

TEST(AnalyticError, plane_combination) {
    GkpCode code = make_square_gkp();
    double pv = logical_error_prob_analytic(0.5, kSqrtPi);
    double ph = logical_error_prob_analytic(0.7, kSqrtPi);
    EXPECT_NEAR(logical_error_prob_analytic_plane(0.5, 0.7, code), pv + ph - pv * ph, 1e-15);
    EXPECT_NEAR(logical_error_prob_analytic_plane(0.5, 0.0, code), pv, 1e-15);
    EXPECT_EQ(logical_error_prob_analytic_plane(0.0, 0.0, code), 0.0);
}

TEST(AnalyticError, rejects_bad_parameters) {
    try {
        logical_error_prob_analytic(0.0, kSqrtPi);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::NonPositiveParameter);
    }
    EXPECT_THROW(logical_error_prob_analytic(0.3, -1.0), Error);
    RandomStream rng(0);
    EXPECT_THROW(sample_displacement_error(-0.1, 0.1, rng), Error);
}

TEST(SampleDisplacement, zero_sigma_gives_zero_and_same_consumption) {
    RandomStream a(4), b(4);
    auto [dv, dh] = sample_displacement_error(0.0, 0.0, a);
    EXPECT_EQ(dv, 0.0);
    EXPECT_EQ(dh, 0.0);
    sample_displacement_error(1.0, 1.0, b);
    EXPECT_EQ(a.position(), b.position());
}

TEST(GkpCode, square_code_is_exactly_square) {
    GkpCode sq = make_gkp(kSqrtPi);
    EXPECT_EQ(sq.lambda_v(), sq.lambda_h());
}
