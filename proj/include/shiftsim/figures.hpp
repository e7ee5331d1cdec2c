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

// Named diagram presets reproducing the lesson figures' layouts.

#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "gkp.hpp"
#include "ladder.hpp"
#include "planar.hpp"
#include "render.hpp"

namespace shiftsim {

inline const std::vector<std::string> &figure_names() {
    static const std::vector<std::string> names = {"two-level", "four-level", "shared-syndrome", "ten-level",
                                                   "planar-padding", "gkp-axis", "gkp-plane"};
    return names;
}

inline DiagramModel figure_model(std::string_view name) {
    if (name == "two-level") {
        LadderCode code(2, 1, Boundary::Hard);
        LadderDiagramOptions opt;
        opt.title = "two-level encoding, |0_L>";
        return model_ladder(encode(code, LogicalAmplitudes::zero()), opt);
    }
    if (name == "four-level") {
        LadderCode code(4, 3, Boundary::Hard);
        LadderDiagramOptions opt;
        opt.title = "four-level encoding, level mod 3";
        opt.label_mod = 3;
        return model_ladder(encode(code, LogicalAmplitudes::zero()), opt);
    }
    if (name == "shared-syndrome") {
        LadderCode code(10, 3, Boundary::Hard);
        LadderDiagramOptions opt;
        opt.title = "errors sharing syndrome 2";
        opt.label_mod = 3;
        opt.highlight = candidate_errors(Syndrome{2}, code);
        return model_ladder(code, nullptr, opt);
    }
    if (name == "ten-level") {
        LadderCode code(10, 3, Boundary::Hard);
        LadderDiagramOptions opt;
        opt.title = "|0_L> = (|0> + |6>)/sqrt(2)";
        opt.label_mod = 3;
        return model_ladder(encode(code, LogicalAmplitudes::zero()), opt);
    }
    if (name == "planar-padding") {
        PlanarCode code = make_planar(10, 3, 13, 4);
        GridDiagramOptions opt;
        opt.title = "padding 2 vertical (mod 3), 3 horizontal (mod 4)";
        opt.residue_labels = true;
        return model_planar(code, encode_planar(code, LogicalAmplitudes::zero()), opt);
    }
    if (name == "gkp-axis") {
        GkpCode code = make_square_gkp();
        GkpState s = apply_displacement_cv(encode_gkp(LogicalAmplitudes(0.6, 0.8)), 0.3, 0.0);
        ContinuousDiagramOptions opt;
        opt.title = "GKP vertical axis, lambda = sqrt(pi), X(0.3)";
        opt.periods = 2;
        opt.annotations = {Annotation{"X(0.3)", {0.0, 0.3}}};
        return model_gkp_axis(code, s, opt);
    }
    if (name == "gkp-plane") {
        GkpCode code = make_square_gkp();
        GkpState s = apply_displacement_cv(encode_gkp(LogicalAmplitudes::zero()), 0.3, -0.2);
        ContinuousDiagramOptions opt;
        opt.title = "GKP plane, lambda_v = lambda_h = sqrt(pi)";
        opt.periods = 1;
        return model_gkp_plane(code, s, opt);
    }
    throw Error(ErrorCode::InvalidGeometry, "unknown figure '" + std::string(name) + "'");
}

}  // namespace shiftsim
