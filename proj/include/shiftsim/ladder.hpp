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

// Finite N-level shift codes. Logical zero is the uniform superposition of
// the even multiples of the spacing k, logical one of the odd multiples.
// X errors shift the occupied levels; the syndrome is the level modulo k.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"
#include "logical.hpp"
#include "random.hpp"

namespace shiftsim {

enum class Boundary { Cyclic, Hard };

inline constexpr std::string_view boundary_name(Boundary b) { return b == Boundary::Cyclic ? "cyclic" : "hard"; }

/// Mathematical modulus, result in [0, m).
inline constexpr int64_t floor_mod(int64_t x, int64_t m) {
    int64_t r = x % m;
    return r < 0 ? r + m : r;
}

class LadderCode {
public:
    /// Throws InvalidGeometry when either codeword would have no peak, or a
    /// cyclic ladder would break the lattice (N not a multiple of 2k).
    LadderCode(int num_levels, int spacing, Boundary boundary)
        : num_levels_(num_levels), spacing_(spacing), boundary_(boundary) {
        if (spacing < 1) {
            throw Error(ErrorCode::InvalidGeometry, "spacing must be at least 1");
        }
        if (num_levels < spacing + 1) {
            throw Error(ErrorCode::InvalidGeometry,
                        "need at least spacing+1 levels so both codewords have a peak (N=" +
                            std::to_string(num_levels) + ", k=" + std::to_string(spacing) + ")");
        }
        if (boundary == Boundary::Cyclic && num_levels % (2 * spacing) != 0) {
            throw Error(ErrorCode::InvalidGeometry,
                        "cyclic boundary requires N to be a multiple of 2k (N=" + std::to_string(num_levels) +
                            ", k=" + std::to_string(spacing) + ")");
        }
    }

    int num_levels() const { return num_levels_; }
    int spacing() const { return spacing_; }
    Boundary boundary() const { return boundary_; }

    /// 0 for support(0_L), 1 for support(1_L), -1 for padding levels.
    int codeword_of(int level) const {
        if (level < 0 || level >= num_levels_ || level % spacing_ != 0) {
            return -1;
        }
        return (level / spacing_) % 2;
    }

    bool in_codespace(int level) const { return codeword_of(level) >= 0; }

    std::vector<int> support(int bit) const {
        std::vector<int> out;
        for (int l = bit * spacing_; l < num_levels_; l += 2 * spacing_) {
            out.push_back(l);
        }
        return out;
    }

    int correctable_radius() const { return (spacing_ - 1) / 2; }

    friend bool operator==(const LadderCode &, const LadderCode &) = default;

private:
    int num_levels_;
    int spacing_;
    Boundary boundary_;
};

inline LadderCode make_code(int num_levels, int spacing, Boundary boundary) {
    return LadderCode(num_levels, spacing, boundary);
}

/// Largest r such that every shift |a| <= r is undone by Nearest decoding.
inline int correctable_radius(const LadderCode &code) { return code.correctable_radius(); }

struct Syndrome {
    int value = 0;
    friend bool operator==(const Syndrome &, const Syndrome &) = default;
};

enum class RoundingRule { PaperLiteral, Nearest };

inline constexpr std::string_view rule_name(RoundingRule r) {
    return r == RoundingRule::PaperLiteral ? "paper" : "nearest";
}

/// Sparse normalized amplitude vector over the levels of a ladder.
class LadderState {
public:
    using Amplitudes = std::map<int, Complex>;

    /// Drops negligible entries, then requires every level in range and unit norm.
    LadderState(LadderCode code, Amplitudes amplitudes) : code_(std::move(code)) {
        double total = 0.0;
        for (const auto &[level, amp] : amplitudes) {
            if (std::abs(amp) < kDropThreshold) {
                continue;
            }
            if (level < 0 || level >= code_.num_levels()) {
                throw Error(ErrorCode::InvalidAmplitudes, "level " + std::to_string(level) + " outside the ladder");
            }
            amplitudes_.emplace(level, amp);
            total += std::norm(amp);
        }
        if (std::abs(total - 1.0) > kAmplitudeTolerance) {
            throw Error(ErrorCode::InvalidAmplitudes, "state is not normalized");
        }
    }

    const LadderCode &code() const { return code_; }
    const Amplitudes &amplitudes() const { return amplitudes_; }

    Complex amplitude(int level) const {
        auto it = amplitudes_.find(level);
        return it == amplitudes_.end() ? Complex{} : it->second;
    }

    std::vector<int> support() const {
        std::vector<int> out;
        out.reserve(amplitudes_.size());
        for (const auto &kv : amplitudes_) {
            out.push_back(kv.first);
        }
        return out;
    }

    double norm_squared() const {
        double total = 0.0;
        for (const auto &kv : amplitudes_) {
            total += std::norm(kv.second);
        }
        return total;
    }

    /// Largest entrywise amplitude difference; levels absent from one side count as zero.
    double distance(const LadderState &other) const {
        double d = 0.0;
        for (const auto &[level, amp] : amplitudes_) {
            d = std::max(d, std::abs(amp - other.amplitude(level)));
        }
        for (const auto &[level, amp] : other.amplitudes_) {
            d = std::max(d, std::abs(amp - amplitude(level)));
        }
        return d;
    }

    friend bool operator==(const LadderState &a, const LadderState &b) {
        return a.code_ == b.code_ && a.amplitudes_ == b.amplitudes_;
    }

private:
    LadderCode code_;
    Amplitudes amplitudes_;
};

/// Either a valid codeword alpha|0_L> + beta|1_L> (phase fixed) or an undefined logical state.
class Classification {
public:
    static Classification codeword(const LogicalAmplitudes &amps) { return Classification(amps.phase_fixed()); }
    static Classification non_codeword() { return Classification(); }

    bool is_codeword() const { return is_codeword_; }

    const LogicalAmplitudes &amplitudes() const {
        if (!is_codeword_) {
            throw Error(ErrorCode::NotInCodeSpace, "classification is NonCodeword");
        }
        return amps_;
    }

    bool matches(const LogicalAmplitudes &expected, double tol = kAmplitudeTolerance) const {
        return is_codeword_ && amps_.equivalent(expected, tol);
    }

private:
    Classification() = default;
    explicit Classification(const LogicalAmplitudes &amps) : is_codeword_(true), amps_(amps) {}

    bool is_codeword_ = false;
    LogicalAmplitudes amps_;
};

struct DecodeResult {
    LadderState corrected_state;
    Syndrome measured_syndrome;
    int applied_correction = 0;
    Classification classification;
};

inline LadderState encode(const LadderCode &code, const LogicalAmplitudes &amps) {
    LadderState::Amplitudes out;
    for (int bit = 0; bit < 2; ++bit) {
        Complex coeff = bit == 0 ? amps.alpha() : amps.beta();
        auto levels = code.support(bit);
        double scale = 1.0 / std::sqrt(static_cast<double>(levels.size()));
        for (int l : levels) {
            out[l] = coeff * scale;
        }
    }
    return LadderState(code, std::move(out));
}

/// X^amount. Cyclic ladders wrap modulo N; hard ladders throw OutOfRangeShift
/// if any occupied level would leave [0, N).
inline LadderState apply_shift(const LadderState &state, int amount) {
    const auto &code = state.code();
    const int n = code.num_levels();
    LadderState::Amplitudes out;
    for (const auto &[level, amp] : state.amplitudes()) {
        int64_t target = static_cast<int64_t>(level) + amount;
        if (code.boundary() == Boundary::Cyclic) {
            target = floor_mod(target, n);
        } else if (target < 0 || target >= n) {
            throw Error(ErrorCode::OutOfRangeShift, "shift by " + std::to_string(amount) + " moves level " +
                                                        std::to_string(level) + " off a " + std::to_string(n) +
                                                        "-level ladder");
        }
        out[static_cast<int>(target)] = amp;
    }
    return LadderState(code, std::move(out));
}

/// Born-rule measurement of (level mod k). The post-measurement state is the
/// renormalized projection onto the observed residue class; a state whose
/// support shares a single residue is returned unchanged. Always consumes one
/// draw from `rng`.
inline std::pair<Syndrome, LadderState> measure_syndrome(const LadderState &state, RandomStream &rng) {
    const int k = state.code().spacing();
    std::map<int, double> weight;
    for (const auto &[level, amp] : state.amplitudes()) {
        weight[level % k] += std::norm(amp);
    }
    double u = rng.uniform() * state.norm_squared();
    if (weight.size() == 1) {
        return {Syndrome{weight.begin()->first}, state};
    }
    int chosen = weight.rbegin()->first;
    double acc = 0.0;
    for (const auto &[residue, w] : weight) {
        acc += w;
        if (u <= acc) {
            chosen = residue;
            break;
        }
    }
    double scale = 1.0 / std::sqrt(weight[chosen]);
    LadderState::Amplitudes out;
    for (const auto &[level, amp] : state.amplitudes()) {
        if (level % k == chosen) {
            out[level] = amp * scale;
        }
    }
    return {Syndrome{chosen}, LadderState(state.code(), std::move(out))};
}

inline Classification classify(const LadderState &state) {
    const auto &code = state.code();
    for (const auto &kv : state.amplitudes()) {
        if (!code.in_codespace(kv.first)) {
            return Classification::non_codeword();
        }
    }
    Complex coeff[2];
    for (int bit = 0; bit < 2; ++bit) {
        auto levels = code.support(bit);
        Complex first = state.amplitude(levels.front());
        for (int l : levels) {
            if (std::abs(state.amplitude(l) - first) > kAmplitudeTolerance) {
                return Classification::non_codeword();
            }
        }
        coeff[bit] = first * std::sqrt(static_cast<double>(levels.size()));
    }
    return Classification::codeword(LogicalAmplitudes::normalized(coeff[0], coeff[1]));
}

/// Asks "is the state |0_L> or |1_L>?". Returns the bit and the collapsed codeword.
/// Throws NotInCodeSpace for states outside the code space.
inline std::pair<int, LadderState> measure_logical(const LadderState &state, RandomStream &rng) {
    Classification c = classify(state);
    if (!c.is_codeword()) {
        throw Error(ErrorCode::NotInCodeSpace, "logical measurement requires a codeword state");
    }
    const auto &code = state.code();
    double weight[2] = {0.0, 0.0};
    for (const auto &[level, amp] : state.amplitudes()) weight[code.codeword_of(level)] += std::norm(amp);
    // One draw per call, even when the outcome is certain.
    double u = rng.uniform();
    if (weight[1] == 0.0) return {0, state};
    if (weight[0] == 0.0) return {1, state};
    int bit = u <= weight[0] / (weight[0] + weight[1]) ? 0 : 1;
    double scale = 1.0 / std::sqrt(weight[bit]);
    LadderState::Amplitudes out;
    for (const auto &[level, amp] : state.amplitudes()) {
        if (code.codeword_of(level) == bit) out[level] = amp * scale;
    }
    return {bit, LadderState(code, std::move(out))};
}

/// Binning decoder: the shift that moves `level` onto a multiple of k.
///
/// PaperLiteral runs the textbook algorithm: a = l mod k; if a != 0 move down
/// by a, then move up by k when a > ceil(k/2). For odd k this sends the
/// residue ceil(k/2) down although the upper multiple is nearer.
/// Nearest moves to the closest multiple, breaking the even-k tie downward.
/// Negative inputs are reduced with a floor modulus.
inline int binning_decode(int64_t level, int spacing, RoundingRule rule) {
    if (spacing < 1) {
        throw Error(ErrorCode::InvalidGeometry, "spacing must be at least 1");
    }
    const int a = static_cast<int>(floor_mod(level, spacing));
    if (a == 0) {
        return 0;
    }
    if (rule == RoundingRule::PaperLiteral) {
        const int half_up = (spacing + 1) / 2;
        return a > half_up ? spacing - a : -a;
    }
    return 2 * a > spacing ? spacing - a : -a;
}

/// Measures the syndrome and shifts by the binning correction. Only the
/// syndrome reaches the correction step.
inline DecodeResult decode(const LadderState &state, RoundingRule rule, RandomStream &rng) {
    auto [syndrome, post] = measure_syndrome(state, rng);
    int correction = binning_decode(syndrome.value, state.code().spacing(), rule);
    LadderState corrected = apply_shift(post, correction);
    Classification c = classify(corrected);
    return DecodeResult{std::move(corrected), syndrome, correction, c};
}

/// Error levels consistent with a syndrome: residue matches and the level is
/// not part of a codeword. Ascending.
inline std::vector<int> candidate_errors(Syndrome syndrome, const LadderCode &code) {
    if (syndrome.value < 0 || syndrome.value >= code.spacing()) {
        throw Error(ErrorCode::InvalidGeometry, "syndrome outside [0, k)");
    }
    std::vector<int> out;
    for (int l = syndrome.value; l < code.num_levels(); l += code.spacing()) {
        if (!code.in_codespace(l)) {
            out.push_back(l);
        }
    }
    return out;
}

}  // namespace shiftsim
