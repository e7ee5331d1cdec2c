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

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace shiftsim {

/// SplitMix64 finalizer. Bijective on 64-bit words.
inline constexpr uint64_t mix64(uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Counter-based random stream.
///
/// The n-th output is a pure function of (key, n), so a stream can be
/// re-created anywhere from its key and position. Streams for independent
/// trials are derived from (master_seed, trial_index) with `for_trial`, which
/// makes Monte Carlo results independent of how trials are scheduled.
///
/// Satisfies UniformRandomBitGenerator; `uniform()` and `normal()` are
/// implemented here rather than through <random> distributions so that the
/// produced sequences are identical across standard library implementations.
class RandomStream {
public:
    using result_type = uint64_t;

    explicit constexpr RandomStream(uint64_t key = 0, uint64_t counter = 0) noexcept
        : key_(mix64(key ^ 0x6A09E667F3BCC909ULL)), counter_(counter) {}

    static constexpr RandomStream for_trial(uint64_t master_seed, uint64_t trial_index) noexcept {
        return RandomStream(mix64(master_seed) ^ mix64(trial_index + 0x9E3779B97F4A7C15ULL));
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() noexcept {
        uint64_t x = key_ + 0x9E3779B97F4A7C15ULL * (++counter_);
        return mix64(x);
    }

    /// Uniform double in (0, 1].
    double uniform() noexcept { return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53; }

    /// Standard normal draw (Box-Muller, one output per two uniforms).
    double normal() noexcept {
        double u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Uniform integer in [lo, hi].
    int64_t uniform_int(int64_t lo, int64_t hi) noexcept {
        uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
        if (span == 0) {
            return static_cast<int64_t>((*this)());
        }
        // Rejection keeps the draw exactly uniform.
        uint64_t limit = max() - max() % span;
        uint64_t r;
        do {
            r = (*this)();
        } while (r >= limit);
        return lo + static_cast<int64_t>(r % span);
    }

    bool bernoulli(double p) noexcept { return uniform() <= p; }

    constexpr uint64_t position() const noexcept { return counter_; }

    friend constexpr bool operator==(const RandomStream &, const RandomStream &) = default;

private:
    uint64_t key_;
    uint64_t counter_;
};

}  // namespace shiftsim
