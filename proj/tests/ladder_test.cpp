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

#include "shiftsim/ladder.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"

using namespace shiftsim;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

LogicalAmplitudes random_amplitudes(RandomStream &rng) {
    Complex a(rng.normal(), rng.normal());
    Complex b(rng.normal(), rng.normal());
    return LogicalAmplitudes::normalized(a, b);
}

void expect_state(const LadderState &s, const std::map<int, Complex> &expected) {
    ASSERT_EQ(s.amplitudes().size(), expected.size());
    for (const auto &[level, amp] : expected) {
        EXPECT_NEAR(std::abs(s.amplitude(level) - amp), 0.0, 1e-12) << "level " << level;
    }
}

}  // namespace

TEST(LadderCode, two_level_supports) {
    LadderCode c = make_code(2, 1, Boundary::Cyclic);
    EXPECT_EQ(c.support(0), std::vector<int>({0}));
    EXPECT_EQ(c.support(1), std::vector<int>({1}));
}

TEST(LadderCode, ten_levels_spacing_three) {
    LadderCode c = make_code(10, 3, Boundary::Hard);
    EXPECT_EQ(c.support(0), std::vector<int>({0, 6}));
    EXPECT_EQ(c.support(1), std::vector<int>({3, 9}));
}

TEST(LadderCode, geometry_errors) {
    try {
        make_code(10, 3, Boundary::Cyclic);
        FAIL() << "expected InvalidGeometry";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidGeometry);
    }
    EXPECT_THROW(make_code(3, 3, Boundary::Hard), Error);
    EXPECT_THROW(make_code(5, 0, Boundary::Hard), Error);
    // k + 1 levels is the smallest code with both codewords present.
    EXPECT_NO_THROW(make_code(4, 3, Boundary::Hard));
    EXPECT_NO_THROW(make_code(3, 2, Boundary::Hard));
}

TEST(Encode, ten_level_codewords) {
    LadderCode c = make_code(10, 3, Boundary::Hard);
    expect_state(encode(c, LogicalAmplitudes::zero()), {{0, kInvSqrt2}, {6, kInvSqrt2}});
    expect_state(encode(c, LogicalAmplitudes::one()), {{3, kInvSqrt2}, {9, kInvSqrt2}});
}

TEST(Encode, two_level_identity) {
    LadderCode c = make_code(2, 1, Boundary::Hard);
    LogicalAmplitudes amps(Complex(0.6, 0.0), Complex(0.0, 0.8));
    expect_state(encode(c, amps), {{0, Complex(0.6, 0.0)}, {1, Complex(0.0, 0.8)}});
}

TEST(Encode, rejects_unnormalized) {
    EXPECT_THROW(LogicalAmplitudes(1.0, 1.0), Error);
    EXPECT_THROW(LogicalAmplitudes(0.5, 0.5), Error);
}

TEST(ApplyShift, off_lattice_after_one_step) {
    LadderCode c = make_code(10, 3, Boundary::Hard);
    LadderState s = apply_shift(encode(c, LogicalAmplitudes::zero()), 1);
    expect_state(s, {{1, kInvSqrt2}, {7, kInvSqrt2}});
    EXPECT_FALSE(classify(s).is_codeword());
}

TEST(ApplyShift, zero_is_identity) {
    LadderCode c = make_code(10, 3, Boundary::Hard);
    LadderState s = encode(c, LogicalAmplitudes(0.6, 0.8));
    EXPECT_EQ(apply_shift(s, 0), s);
}

TEST(ApplyShift, cyclic_logical_flip) {
    LadderCode c = make_code(12, 3, Boundary::Cyclic);
    LadderState s = apply_shift(encode(c, LogicalAmplitudes::one()), 3);
    expect_state(s, {{0, kInvSqrt2}, {6, kInvSqrt2}});
    EXPECT_TRUE(classify(s).matches(LogicalAmplitudes::zero()));
}

TEST(ApplyShift, hard_boundary_overflow) {
    LadderCode c = make_code(10, 3, Boundary::Hard);
    LadderState s = encode(c, LogicalAmplitudes(0.6, 0.8));
    try {
        apply_shift(s, 1);  // level 9 -> 10
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::OutOfRangeShift);
    }
    EXPECT_THROW(apply_shift(s, -1), Error);
}

TEST(MeasureSyndrome, shifted_codeword_is_undisturbed) {
    LadderCode c = make_code(12, 3, Boundary::Cyclic);
    LadderState s = apply_shift(encode(c, LogicalAmplitudes(0.6, 0.8)), 2);
    RandomStream rng(7);
    auto [syn, post] = measure_syndrome(s, rng);
    EXPECT_EQ(syn.value, 2);
    EXPECT_EQ(post, s);
}

TEST(MeasureSyndrome, codespace_gives_zero) {
    LadderCode c = make_code(10, 3, Boundary::Hard);
    for (auto amps : {LogicalAmplitudes::zero(), LogicalAmplitudes::one(), LogicalAmplitudes(0.6, 0.8)}) {
        RandomStream rng(1);
        auto [syn, post] = measure_syndrome(encode(c, amps), rng);
        EXPECT_EQ(syn.value, 0);
        EXPECT_EQ(post, encode(c, amps));
    }
}

TEST(MeasureSyndrome, mixed_residues_follow_born_rule) {
    LadderCode c = make_code(10, 3, Boundary::Hard);
    LadderState s(c, {{0, kInvSqrt2}, {1, kInvSqrt2}});
    int ones = 0;
    const int n = 4000;
    for (int i = 0; i < n; ++i) {
        RandomStream rng = RandomStream::for_trial(99, i);
        auto [syn, post] = measure_syndrome(s, rng);
        ASSERT_TRUE(syn.value == 0 || syn.value == 1);
        ASSERT_EQ(post.amplitudes().size(), 1u);
        EXPECT_NEAR(std::abs(post.amplitude(syn.value)), 1.0, 1e-12);
        ones += syn.value;
    }
    double se = std::sqrt(0.25 / n);
    EXPECT_NEAR(static_cast<double>(ones) / n, 0.5, 4 * se);
}

TEST(MeasureLogical, basis_state_is_deterministic) {
    LadderCode c = make_code(10, 3, Boundary::Hard);
    for (uint64_t seed = 0; seed < 50; ++seed) {
        RandomStream rng(seed);
        auto [bit, post] = measure_logical(encode(c, LogicalAmplitudes::zero()), rng);
        EXPECT_EQ(bit, 0);
        EXPECT_EQ(post, encode(c, LogicalAmplitudes::zero()));
    }
}

TEST(MeasureLogical, equal_superposition_frequency) {
    LadderCode c = make_code(10, 3, Boundary::Hard);
    LadderState s = encode(c, LogicalAmplitudes(kInvSqrt2, kInvSqrt2));
    const int n = 10000;
    int zeros = 0;
    for (int i = 0; i < n; ++i) {
        RandomStream rng = RandomStream::for_trial(5, i);
        zeros += measure_logical(s, rng).first == 0;
    }
    EXPECT_NEAR(static_cast<double>(zeros) / n, 0.5, 4 * std::sqrt(0.25 / n));
}

TEST(MeasureLogical, outcome_sticks) {
    LadderCode c = make_code(10, 3, Boundary::Hard);
    LadderState s = encode(c, LogicalAmplitudes(0.6, 0.8));
    for (uint64_t seed = 0; seed < 200; ++seed) {
        RandomStream rng(seed);
        auto [first, post] = measure_logical(s, rng);
        for (int rep = 0; rep < 3; ++rep) {
            auto [again, post2] = measure_logical(post, rng);
            ASSERT_EQ(again, first);
            ASSERT_EQ(post2, post);
        }
    }
}

TEST(MeasureLogical, rejects_non_codeword) {
    LadderCode c = make_code(10, 3, Boundary::Hard);
    RandomStream rng(0);
    try {
        measure_logical(apply_shift(encode(c, LogicalAmplitudes::zero()), 1), rng);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::NotInCodeSpace);
    }
}

TEST(BinningDecode, worked_examples) {
    EXPECT_EQ(binning_decode(5, 3, RoundingRule::PaperLiteral), -2);
    EXPECT_EQ(binning_decode(5, 3, RoundingRule::Nearest), 1);
    EXPECT_EQ(binning_decode(6, 3, RoundingRule::PaperLiteral), 0);
    EXPECT_EQ(binning_decode(6, 3, RoundingRule::Nearest), 0);
    EXPECT_EQ(binning_decode(7, 4, RoundingRule::PaperLiteral), 1);
    // Even-k tie goes down.
    EXPECT_EQ(binning_decode(2, 4, RoundingRule::Nearest), -2);
}

TEST(BinningDecode, matches_oracles_exhaustively) {
    for (int k = 1; k <= 12; ++k) {
        for (int l = 0; l < 10 * k; ++l) {
            ASSERT_EQ(binning_decode(l, k, RoundingRule::PaperLiteral), oracle::binning_interpreter(l, k)) << l << " " << k;
            ASSERT_EQ(binning_decode(l, k, RoundingRule::Nearest), oracle::nearest_bruteforce(l, k)) << l << " " << k;
        }
    }
}

TEST(BinningDecode, rules_differ_only_at_half_up_residue_of_odd_k) {
    for (int k = 1; k <= 12; ++k) {
        for (int l = 0; l < 10 * k; ++l) {
            bool differ = binning_decode(l, k, RoundingRule::PaperLiteral) != binning_decode(l, k, RoundingRule::Nearest);
            bool predicted = k % 2 == 1 && l % k == (k + 1) / 2;
            ASSERT_EQ(differ, predicted) << "l=" << l << " k=" << k;
        }
    }
}

TEST(BinningDecode, correction_is_minus_residue_mod_k) {
    for (int k = 1; k <= 9; ++k) {
        for (int l = -3 * k; l < 3 * k; ++l) {
            for (auto rule : {RoundingRule::PaperLiteral, RoundingRule::Nearest}) {
                int c = binning_decode(l, k, rule);
                ASSERT_EQ(floor_mod(l + c, k), 0);
            }
        }
    }
}

TEST(Decode, small_shift_recovers) {
    LadderCode c = make_code(12, 3, Boundary::Cyclic);
    LogicalAmplitudes amps(0.6, Complex(0.0, 0.8));
    RandomStream rng(3);
    DecodeResult r = decode(apply_shift(encode(c, amps), 1), RoundingRule::Nearest, rng);
    EXPECT_EQ(r.measured_syndrome.value, 1);
    EXPECT_EQ(r.applied_correction, -1);
    EXPECT_TRUE(r.classification.matches(amps));
    EXPECT_LE(r.corrected_state.distance(encode(c, amps)), 1e-12);
}

TEST(Decode, two_steps_flip_the_logical) {
    LadderCode c = make_code(12, 3, Boundary::Cyclic);
    LogicalAmplitudes amps(0.6, 0.8);
    RandomStream rng(3);
    DecodeResult r = decode(apply_shift(encode(c, amps), 2), RoundingRule::Nearest, rng);
    EXPECT_EQ(r.applied_correction, 1);
    EXPECT_TRUE(r.classification.matches(amps.swapped()));
    EXPECT_FALSE(r.classification.matches(amps));
}

TEST(Decode, codeword_input_is_untouched) {
    LadderCode c = make_code(10, 3, Boundary::Hard);
    LogicalAmplitudes amps(0.6, 0.8);
    RandomStream rng(3);
    DecodeResult r = decode(encode(c, amps), RoundingRule::Nearest, rng);
    EXPECT_EQ(r.applied_correction, 0);
    EXPECT_TRUE(r.classification.matches(amps));
}

TEST(Decode, hard_boundary_correction_overflow_propagates) {
    LadderCode c = make_code(12, 3, Boundary::Hard);
    LadderState s = apply_shift(encode(c, LogicalAmplitudes(0.6, 0.8)), 2);  // top level 11
    RandomStream rng(0);
    EXPECT_THROW(decode(s, RoundingRule::Nearest, rng), Error);  // +1 moves 11 to 12
}

TEST(Classify, examples) {
    LadderCode c = make_code(10, 3, Boundary::Hard);
    LadderState zero(c, {{0, kInvSqrt2}, {6, kInvSqrt2}});
    ASSERT_TRUE(classify(zero).is_codeword());
    EXPECT_TRUE(classify(zero).matches(LogicalAmplitudes::zero()));

    EXPECT_FALSE(classify(LadderState(c, {{1, kInvSqrt2}, {7, kInvSqrt2}})).is_codeword());

    double a = 0.6 * kInvSqrt2, b = 0.8 * kInvSqrt2;
    Classification mixed = classify(LadderState(c, {{0, a}, {6, a}, {3, b}, {9, b}}));
    ASSERT_TRUE(mixed.is_codeword());
    EXPECT_NEAR(mixed.amplitudes().alpha().real(), 0.6, 1e-12);
    EXPECT_NEAR(mixed.amplitudes().beta().real(), 0.8, 1e-12);
}

TEST(Classify, non_uniform_branch_is_not_a_codeword) {
    LadderCode c = make_code(10, 3, Boundary::Hard);
    EXPECT_FALSE(classify(LadderState(c, {{0, 0.6}, {6, 0.8}})).is_codeword());
    EXPECT_FALSE(classify(LadderState(c, {{0, 1.0}})).is_codeword());
}

TEST(Classify, global_phase_convention) {
    LadderCode c = make_code(4, 1, Boundary::Cyclic);
    Complex phase = std::polar(1.0, 0.7);
    LadderState s = encode(c, LogicalAmplitudes(phase * 0.6, phase * Complex(0.0, 0.8)));
    LogicalAmplitudes amps = classify(s).amplitudes();
    EXPECT_NEAR(amps.alpha().real(), 0.6, 1e-12);
    EXPECT_NEAR(amps.alpha().imag(), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(amps.beta() - Complex(0.0, 0.8)), 0.0, 1e-12);
}

TEST(CorrectableRadius, values) {
    EXPECT_EQ(correctable_radius(make_code(6, 3, Boundary::Hard)), 1);
    EXPECT_EQ(correctable_radius(make_code(2, 1, Boundary::Hard)), 0);
    EXPECT_EQ(correctable_radius(make_code(8, 4, Boundary::Hard)), 1);
    EXPECT_EQ(correctable_radius(make_code(4, 2, Boundary::Hard)), 0);
}

TEST(CorrectableRadius, k4_exhaustive_shift_check) {
    LadderCode c = make_code(16, 4, Boundary::Cyclic);
    LogicalAmplitudes amps(0.6, 0.8);
    RandomStream rng(0);
    auto recovers = [&](int a) {
        return decode(apply_shift(encode(c, amps), a), RoundingRule::Nearest, rng).classification.matches(amps);
    };
    EXPECT_TRUE(recovers(-1) && recovers(0) && recovers(1));
    // Shift 2 is the tie: +2 rounds back down, -2 rounds down one more step.
    EXPECT_TRUE(recovers(2));
    EXPECT_FALSE(recovers(-2));
}

TEST(CandidateErrors, examples) {
    EXPECT_EQ(candidate_errors(Syndrome{2}, make_code(10, 3, Boundary::Hard)), std::vector<int>({2, 5, 8}));
    EXPECT_TRUE(candidate_errors(Syndrome{0}, make_code(10, 3, Boundary::Hard)).empty());
    EXPECT_EQ(candidate_errors(Syndrome{1}, make_code(12, 3, Boundary::Hard)), std::vector<int>({1, 4, 7, 10}));
    EXPECT_THROW(candidate_errors(Syndrome{3}, make_code(12, 3, Boundary::Hard)), Error);
}

TEST(LadderProperties, syndrome_does_not_separate_codewords) {
    // m(|0_L>) = m(|1_L>), and several error levels share each nonzero value.
    for (int k = 2; k <= 6; ++k) {
        LadderCode c = make_code(4 * k, k, Boundary::Cyclic);
        RandomStream rng(1);
        EXPECT_EQ(measure_syndrome(encode(c, LogicalAmplitudes::zero()), rng).first.value, 0);
        EXPECT_EQ(measure_syndrome(encode(c, LogicalAmplitudes::one()), rng).first.value, 0);
        for (int s = 1; s < k; ++s) EXPECT_GT(candidate_errors(Syndrome{s}, c).size(), 1u);
    }
}

TEST(LadderProperties, norm_preserved_and_round_trip) {
    RandomStream gen(2024);
    for (int k = 1; k <= 8; ++k) {
        for (int p = 1; 2 * k * p <= 48; ++p) {
            LadderCode c = make_code(2 * k * p, k, Boundary::Cyclic);
            for (int rep = 0; rep < 5; ++rep) {
                LogicalAmplitudes amps = random_amplitudes(gen);
                LadderState enc = encode(c, amps);
                EXPECT_NEAR(enc.norm_squared(), 1.0, 1e-12);
                for (int a = -correctable_radius(c); a <= correctable_radius(c); ++a) {
                    LadderState noisy = apply_shift(enc, a);
                    EXPECT_NEAR(noisy.norm_squared(), 1.0, 1e-12);
                    DecodeResult r = decode(noisy, RoundingRule::Nearest, gen);
                    EXPECT_NEAR(r.corrected_state.norm_squared(), 1.0, 1e-12);
                    ASSERT_TRUE(r.classification.matches(amps)) << "N=" << c.num_levels() << " k=" << k << " a=" << a;
                }
            }
        }
    }
}

TEST(LadderProperties, logical_flip_parity_matches_oracle) {
    RandomStream gen(77);
    for (int k = 1; k <= 8; ++k) {
        for (int p = 1; 2 * k * p <= 48; ++p) {
            LadderCode c = make_code(2 * k * p, k, Boundary::Cyclic);
            LogicalAmplitudes amps = random_amplitudes(gen);
            for (int a = -c.num_levels(); a <= c.num_levels(); ++a) {
                DecodeResult r = decode(apply_shift(encode(c, amps), a), RoundingRule::Nearest, gen);
                bool odd = oracle::residual_multiple(a, k) % 2 != 0;
                ASSERT_TRUE(r.classification.matches(odd ? amps.swapped() : amps))
                    << "N=" << c.num_levels() << " k=" << k << " a=" << a;
            }
        }
    }
}
