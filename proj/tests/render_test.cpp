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

#include "shiftsim/figures.hpp"
#include "shiftsim/render.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "golden.hpp"

using namespace shiftsim;

namespace {

class FigureGolden : public ::testing::TestWithParam<std::string> {};

}  // namespace

TEST_P(FigureGolden, ascii) {
    golden::expect_matches(GetParam() + ".txt", render_ascii(figure_model(GetParam())));
}

TEST_P(FigureGolden, svg) {
    golden::expect_matches(GetParam() + ".svg", render_svg(figure_model(GetParam())));
}

TEST_P(FigureGolden, json_round_trip) {
    DiagramModel m = figure_model(GetParam());
    DiagramModel back = diagram_from_json(diagram_to_json(m));
    EXPECT_EQ(render_ascii(back), render_ascii(m));
    EXPECT_EQ(render_svg(back), render_svg(m));
}

TEST_P(FigureGolden, rendering_is_repeatable) {
    EXPECT_EQ(render_svg(figure_model(GetParam())), render_svg(figure_model(GetParam())));
}

INSTANTIATE_TEST_SUITE_P(Figures, FigureGolden, ::testing::ValuesIn(figure_names()),
                         [](const auto &info) {
                             std::string name = info.param;
                             std::replace(name.begin(), name.end(), '-', '_');
                             return name;
                         });

TEST(ModelLadder, marks_codespace_and_state) {
    LadderCode code = make_code(10, 3, Boundary::Hard);
    LadderState s = encode(code, LogicalAmplitudes(0.6, 0.8));
    DiagramModel m = model_ladder(s);
    ASSERT_EQ(m.cells.size(), 10u);
    int codespace = 0, shaded = 0;
    for (const auto &c : m.cells) {
        codespace += c.codespace;
        shaded += c.shaded;
    }
    EXPECT_EQ(codespace, 4);
    EXPECT_EQ(shaded, 4);
    EXPECT_NO_THROW(m.validate());
}

TEST(ModelLadder, no_state_shades_nothing) {
    DiagramModel m = model_ladder(make_code(4, 3, Boundary::Hard), nullptr);
    for (const auto &c : m.cells) EXPECT_FALSE(c.shaded);
}

TEST(RenderSvg, uses_palette_and_escapes) {
    LadderDiagramOptions opt;
    opt.title = "a < b & c";
    std::string svg = render_svg(model_ladder(encode(make_code(4, 1, Boundary::Hard), LogicalAmplitudes::zero()), opt));
    EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
    EXPECT_NE(svg.find("a &lt; b &amp; c"), std::string::npos);
    EXPECT_NE(svg.find("#417505"), std::string::npos);
    EXPECT_NE(svg.find("#9b9b9b"), std::string::npos);
}

TEST(DiagramModel, validation_rejects_duplicate_cells) {
    DiagramModel m = figure_model("two-level");
    m.cells.push_back(m.cells.front());
    EXPECT_THROW(m.validate(), Error);
}
