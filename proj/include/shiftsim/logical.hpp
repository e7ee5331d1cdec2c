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
#include <complex>
#include <string_view>

#include "error.hpp"

namespace shiftsim {

using Complex = std::complex<double>;

/// Absolute tolerance used for every amplitude comparison.
inline constexpr double kAmplitudeTolerance = 1e-12;

/// Entries below this magnitude are dropped when a state is canonicalized.
inline constexpr double kDropThreshold = 1e-15;

/// Encoded qubit alpha|0_L> + beta|1_L>.
class LogicalAmplitudes {
public:
    LogicalAmplitudes() : alpha_(1.0), beta_(0.0) {}

    /// Throws InvalidAmplitudes unless |alpha|^2 + |beta|^2 = 1 within 1e-12.
    LogicalAmplitudes(Complex alpha, Complex beta) : alpha_(alpha), beta_(beta) {
        double n = std::norm(alpha) + std::norm(beta);
        if (!std::isfinite(n) || std::abs(n - 1.0) > kAmplitudeTolerance) {
            throw Error(ErrorCode::InvalidAmplitudes, "logical amplitudes must satisfy |alpha|^2 + |beta|^2 = 1");
        }
    }

    /// Rescales (alpha, beta) to unit norm. Throws on a zero vector.
    static LogicalAmplitudes normalized(Complex alpha, Complex beta) {
        double n = std::sqrt(std::norm(alpha) + std::norm(beta));
        if (!(n > 0.0) || !std::isfinite(n)) {
            throw Error(ErrorCode::InvalidAmplitudes, "cannot normalize a zero amplitude pair");
        }
        return {alpha / n, beta / n};
    }

    static LogicalAmplitudes zero() { return {1.0, 0.0}; }
    static LogicalAmplitudes one() { return {0.0, 1.0}; }

    Complex alpha() const { return alpha_; }
    Complex beta() const { return beta_; }

    /// Global phase fixed so that the first nonzero amplitude is real and nonnegative.
    LogicalAmplitudes phase_fixed() const {
        Complex lead = std::abs(alpha_) > kDropThreshold ? alpha_ : beta_;
        double mag = std::abs(lead);
        if (mag == 0.0) {
            return *this;
        }
        Complex rot = std::conj(lead) / mag;
        LogicalAmplitudes out;
        out.alpha_ = alpha_ * rot;
        out.beta_ = beta_ * rot;
        return out;
    }

    /// Equality up to global phase, entrywise within `tol`.
    bool equivalent(const LogicalAmplitudes &other, double tol = kAmplitudeTolerance) const {
        auto a = phase_fixed();
        auto b = other.phase_fixed();
        return std::abs(a.alpha_ - b.alpha_) <= tol && std::abs(a.beta_ - b.beta_) <= tol;
    }

    LogicalAmplitudes swapped() const {
        LogicalAmplitudes out;
        out.alpha_ = beta_;
        out.beta_ = alpha_;
        return out;
    }

    LogicalAmplitudes phase_flipped() const {
        LogicalAmplitudes out;
        out.alpha_ = alpha_;
        out.beta_ = -beta_;
        return out;
    }

private:
    Complex alpha_;
    Complex beta_;
};

/// Residual logical operation left on the encoded qubit after decoding.
enum class LogicalAction { I, XL, ZL, XLZL };

inline constexpr LogicalAction make_action(bool x, bool z) {
    if (x && z) return LogicalAction::XLZL;
    if (x) return LogicalAction::XL;
    if (z) return LogicalAction::ZL;
    return LogicalAction::I;
}

inline constexpr bool has_x(LogicalAction a) { return a == LogicalAction::XL || a == LogicalAction::XLZL; }
inline constexpr bool has_z(LogicalAction a) { return a == LogicalAction::ZL || a == LogicalAction::XLZL; }

inline constexpr std::string_view action_name(LogicalAction a) {
    switch (a) {
        case LogicalAction::I: return "I";
        case LogicalAction::XL: return "X_L";
        case LogicalAction::ZL: return "Z_L";
        case LogicalAction::XLZL: return "X_L.Z_L";
    }
    return "?";
}

/// Applies Z_L (beta -> -beta) then X_L (swap). Global phase from the ordering is dropped.
inline LogicalAmplitudes apply_action(const LogicalAmplitudes &amps, LogicalAction a) {
    LogicalAmplitudes out = amps;
    if (has_z(a)) out = out.phase_flipped();
    if (has_x(a)) out = out.swapped();
    return out;
}

}  // namespace shiftsim
