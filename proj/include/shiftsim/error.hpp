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

#include <stdexcept>
#include <string>
#include <string_view>

namespace shiftsim {

enum class ErrorCode {
    InvalidGeometry,
    InvalidAmplitudes,
    OutOfRangeShift,
    NotInCodeSpace,
    DimensionTooLarge,
    NonPositiveSpacing,
    NonPositiveParameter,
    InvalidNoise,
    InvalidPlan,
    UnknownSession,
    InvalidAction,
    MalformedRequest,
};

inline constexpr std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidGeometry: return "InvalidGeometry";
        case ErrorCode::InvalidAmplitudes: return "InvalidAmplitudes";
        case ErrorCode::OutOfRangeShift: return "OutOfRangeShift";
        case ErrorCode::NotInCodeSpace: return "NotInCodeSpace";
        case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
        case ErrorCode::NonPositiveSpacing: return "NonPositiveSpacing";
        case ErrorCode::NonPositiveParameter: return "NonPositiveParameter";
        case ErrorCode::InvalidNoise: return "InvalidNoise";
        case ErrorCode::InvalidPlan: return "InvalidPlan";
        case ErrorCode::UnknownSession: return "UnknownSession";
        case ErrorCode::InvalidAction: return "InvalidAction";
        case ErrorCode::MalformedRequest: return "MalformedRequest";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// front ends (CLI exit codes, protocol envelopes) can map it without parsing
/// the message.
class Error : public std::invalid_argument {
public:
    Error(ErrorCode code, const std::string &message)
        : std::invalid_argument(std::string(error_code_name(code)) + ": " + message), code_(code), detail_(message) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string &detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

}  // namespace shiftsim
