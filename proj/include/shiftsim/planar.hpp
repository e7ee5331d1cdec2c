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

// Two-axis shift codes: X errors displace the encoded qubit vertically, Z
// errors horizontally. States are kept in displacement frame (logical content
// plus the accumulated integer shift on each axis); each axis is decoded on
// its own with the binning decoder.

#include <cstdint>

#include "ladder.hpp"
#include "logical.hpp"

namespace shiftsim {

struct PlanarCode {
    LadderCode vertical;
    LadderCode horizontal;

    int spacing_v() const { return vertical.spacing(); }
    int spacing_h() const { return horizontal.spacing(); }
};

inline PlanarCode make_planar(int levels_v, int spacing_v, int levels_h, int spacing_h,
                              Boundary boundary = Boundary::Hard) {
    return PlanarCode{LadderCode(levels_v, spacing_v, boundary), LadderCode(levels_h, spacing_h, boundary)};
}

struct PlanarState {
    LogicalAmplitudes logical;
    int64_t v_shift = 0;
    int64_t h_shift = 0;
};

struct PlanarDecodeResult {
    PlanarState corrected;
    LogicalAction logical_action = LogicalAction::I;
    int64_t correction_v = 0;
    int64_t correction_h = 0;
    /// Net displacement after correction, in units of the axis spacing.
    int64_t multiple_v = 0;
    int64_t multiple_h = 0;
};

inline PlanarState encode_planar(const PlanarCode &, const LogicalAmplitudes &amps) { return PlanarState{amps, 0, 0}; }

inline PlanarState apply_displacement(const PlanarState &state, int64_t dv, int64_t dh) {
    return PlanarState{state.logical, state.v_shift + dv, state.h_shift + dh};
}

/// Per-axis binning. X_L survives iff the vertical residual is an odd number
/// of spacings; Z_L likewise on the horizontal axis.
inline PlanarDecodeResult decode_planar(const PlanarState &state, const PlanarCode &code, RoundingRule rule) {
    PlanarDecodeResult r;
    const int kv = code.spacing_v();
    const int kh = code.spacing_h();
    r.correction_v = binning_decode(state.v_shift, kv, rule);
    r.correction_h = binning_decode(state.h_shift, kh, rule);
    r.multiple_v = (state.v_shift + r.correction_v) / kv;
    r.multiple_h = (state.h_shift + r.correction_h) / kh;
    r.logical_action = make_action(r.multiple_v % 2 != 0, r.multiple_h % 2 != 0);
    r.corrected = PlanarState{apply_action(state.logical, r.logical_action), 0, 0};
    return r;
}

}  // namespace shiftsim
