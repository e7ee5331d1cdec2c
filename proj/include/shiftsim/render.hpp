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

// Level-diagram rendering. Builders turn code states into a neutral
// DiagramModel; renderers turn a model into ASCII art or SVG. Rendering
// reads nothing but the model, so identical models give identical bytes.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "gkp.hpp"
#include "ladder.hpp"
#include "planar.hpp"

namespace shiftsim {

enum class DiagramKind { Ladder, Grid, ContinuousAxis, ContinuousPlane };

inline constexpr std::string_view diagram_kind_name(DiagramKind k) {
    switch (k) {
        case DiagramKind::Ladder: return "Ladder";
        case DiagramKind::Grid: return "Grid";
        case DiagramKind::ContinuousAxis: return "ContinuousAxis";
        case DiagramKind::ContinuousPlane: return "ContinuousPlane";
    }
    return "?";
}

/// Ladder: x = 0, y = level. Grid: x = horizontal index, y = vertical index.
/// Continuous kinds use real coordinates on the same axes.
struct Position {
    double x = 0.0;
    double y = 0.0;

    friend auto operator<=>(const Position &, const Position &) = default;
};

struct Cell {
    Position position;
    bool shaded = false;
    bool codespace = false;
    std::string label;
};

struct Annotation {
    std::string text;
    Position anchor;
};

struct DiagramModel {
    DiagramKind kind = DiagramKind::Ladder;
    std::string title;
    std::vector<Cell> cells;
    std::vector<Annotation> annotations;
    std::vector<std::string> legend;

    /// Throws InvalidGeometry on duplicate positions.
    void validate() const {
        std::set<Position> seen;
        for (const auto &c : cells) {
            if (!seen.insert(c.position).second) {
                throw Error(ErrorCode::InvalidGeometry, "duplicate cell position in diagram");
            }
        }
    }
};

/// Colors mirror the figure palette: grey active cells, green code-space
/// borders, purple displacement markers.
struct Theme {
    std::string active_fill = "#9b9b9b";
    std::string empty_fill = "#ffffff";
    std::string codespace_stroke = "#417505";
    std::string cell_stroke = "#000000";
    std::string arrow = "#bd10e0";
    std::string text = "#000000";
    std::string font = "monospace";
    int cell_size = 30;
};

// ---------------------------------------------------------------------------
// Builders

struct LadderDiagramOptions {
    std::string title;
    /// Label every cell with (level mod label_mod).
    std::optional<int> label_mod;
    /// When set, exactly these levels are shaded instead of the state's support.
    std::optional<std::vector<int>> highlight;
    std::vector<Annotation> annotations;
};

inline std::vector<std::string> standard_legend(DiagramKind kind) {
    if (kind == DiagramKind::ContinuousAxis || kind == DiagramKind::ContinuousPlane) {
        return {"green tick: codeword lattice point", "grey peak: occupied position"};
    }
    return {"grey: active level", "green border: code space"};
}

inline DiagramModel model_ladder(const LadderCode &code, const LadderState *state, const LadderDiagramOptions &opt = {}) {
    DiagramModel m;
    m.kind = DiagramKind::Ladder;
    m.title = opt.title;
    std::set<int> shaded;
    if (opt.highlight) {
        shaded.insert(opt.highlight->begin(), opt.highlight->end());
    } else if (state != nullptr) {
        for (int l : state->support()) shaded.insert(l);
    }
    for (int l = 0; l < code.num_levels(); ++l) {
        Cell c;
        c.position = {0.0, static_cast<double>(l)};
        c.shaded = shaded.count(l) > 0;
        c.codespace = code.in_codespace(l);
        if (opt.label_mod && *opt.label_mod > 0) c.label = std::to_string(l % *opt.label_mod);
        m.cells.push_back(std::move(c));
    }
    m.annotations = opt.annotations;
    m.legend = standard_legend(m.kind);
    return m;
}

inline DiagramModel model_ladder(const LadderState &state, const LadderDiagramOptions &opt = {}) {
    return model_ladder(state.code(), &state, opt);
}

struct GridDiagramOptions {
    std::string title;
    /// Label cells "v mod k_v,h mod k_h".
    bool residue_labels = false;
    bool show_state = true;
    std::vector<Annotation> annotations;
};

/// Vertical axis carries the X lattice, horizontal the Z lattice. Occupied
/// cells are the code lattice translated by the state's shifts; only branches
/// with nonzero amplitude are drawn on the vertical axis.
inline DiagramModel model_planar(const PlanarCode &code, const PlanarState &state, const GridDiagramOptions &opt = {}) {
    DiagramModel m;
    m.kind = DiagramKind::Grid;
    m.title = opt.title;
    const int nv = code.vertical.num_levels();
    const int nh = code.horizontal.num_levels();
    const int kv = code.spacing_v();
    const int kh = code.spacing_h();
    const bool cyclic = code.vertical.boundary() == Boundary::Cyclic;
    bool branch[2] = {std::abs(state.logical.alpha()) > kDropThreshold, std::abs(state.logical.beta()) > kDropThreshold};
    auto source = [&](int64_t idx, int64_t shift, int n) -> std::optional<int64_t> {
        int64_t s = idx - shift;
        if (cyclic) return floor_mod(s, n);
        if (s < 0 || s >= n) return std::nullopt;
        return s;
    };
    for (int v = 0; v < nv; ++v) {
        for (int h = 0; h < nh; ++h) {
            Cell c;
            c.position = {static_cast<double>(h), static_cast<double>(v)};
            c.codespace = v % kv == 0 && h % kh == 0;
            if (opt.show_state) {
                auto sv = source(v, state.v_shift, nv);
                auto sh = source(h, state.h_shift, nh);
                c.shaded = sv && sh && *sv % kv == 0 && *sh % kh == 0 && branch[(*sv / kv) % 2];
            }
            if (opt.residue_labels) c.label = std::to_string(v % kv) + "," + std::to_string(h % kh);
            m.cells.push_back(std::move(c));
        }
    }
    m.annotations = opt.annotations;
    m.legend = standard_legend(m.kind);
    return m;
}

struct ContinuousDiagramOptions {
    std::string title;
    /// Lattice points drawn for n in [-periods, periods].
    int periods = 3;
    bool show_state = true;
    std::vector<Annotation> annotations;
};

namespace detail {

inline std::string lattice_label(int64_t n) { return n % 2 == 0 ? "0_L" : "1_L"; }

inline void add_or_merge(std::vector<Cell> &cells, Cell c) {
    for (auto &existing : cells) {
        if (existing.position == c.position) {
            existing.shaded = existing.shaded || c.shaded;
            existing.codespace = existing.codespace || c.codespace;
            if (existing.label.empty()) existing.label = c.label;
            return;
        }
    }
    cells.push_back(std::move(c));
}

inline void sort_cells(std::vector<Cell> &cells) {
    std::stable_sort(cells.begin(), cells.end(), [](const Cell &a, const Cell &b) { return a.position < b.position; });
}

}  // namespace detail

/// Vertical GKP axis: lattice ticks at n lambda_v and occupied peaks at
/// n lambda_v + delta_v for the branches present in the state.
inline DiagramModel model_gkp_axis(const GkpCode &code, const GkpState &state, const ContinuousDiagramOptions &opt = {}) {
    DiagramModel m;
    m.kind = DiagramKind::ContinuousAxis;
    m.title = opt.title;
    const double lam = code.lambda_v();
    bool branch[2] = {std::abs(state.logical.alpha()) > kDropThreshold, std::abs(state.logical.beta()) > kDropThreshold};
    for (int n = -opt.periods; n <= opt.periods; ++n) {
        Cell c;
        c.position = {0.0, n * lam};
        c.codespace = true;
        c.label = detail::lattice_label(n);
        detail::add_or_merge(m.cells, std::move(c));
    }
    if (opt.show_state) {
        for (int n = -opt.periods; n <= opt.periods; ++n) {
            if (!branch[n % 2 == 0 ? 0 : 1]) continue;
            Cell c;
            c.position = {0.0, n * lam + state.delta_v};
            c.shaded = true;
            detail::add_or_merge(m.cells, std::move(c));
        }
    }
    detail::sort_cells(m.cells);
    m.annotations = opt.annotations;
    m.legend = standard_legend(m.kind);
    return m;
}

/// Both quadratures: lattice at (m lambda_h, n lambda_v).
inline DiagramModel model_gkp_plane(const GkpCode &code, const GkpState &state, const ContinuousDiagramOptions &opt = {}) {
    DiagramModel m;
    m.kind = DiagramKind::ContinuousPlane;
    m.title = opt.title;
    const double lv = code.lambda_v();
    const double lh = code.lambda_h();
    bool branch[2] = {std::abs(state.logical.alpha()) > kDropThreshold, std::abs(state.logical.beta()) > kDropThreshold};
    for (int n = -opt.periods; n <= opt.periods; ++n) {
        for (int j = -opt.periods; j <= opt.periods; ++j) {
            Cell c;
            c.position = {j * lh, n * lv};
            c.codespace = true;
            c.label = detail::lattice_label(n);
            detail::add_or_merge(m.cells, std::move(c));
        }
    }
    if (opt.show_state) {
        for (int n = -opt.periods; n <= opt.periods; ++n) {
            if (!branch[n % 2 == 0 ? 0 : 1]) continue;
            for (int j = -opt.periods; j <= opt.periods; ++j) {
                Cell c;
                c.position = {j * lh + state.delta_h, n * lv + state.delta_v};
                c.shaded = true;
                detail::add_or_merge(m.cells, std::move(c));
            }
        }
    }
    detail::sort_cells(m.cells);
    m.annotations = opt.annotations;
    m.legend = standard_legend(m.kind);
    return m;
}

// ---------------------------------------------------------------------------
// Renderers

namespace detail {

inline std::string fixed(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, x);
    std::string s(buf);
    if (s == "-0" || s.find_first_not_of("-0.") == std::string::npos) {
        // Normalize negative zero.
        s.erase(0, s[0] == '-' ? 1 : 0);
    }
    return s;
}

/// Fixed-point with trailing zeros trimmed.
inline std::string num(double x) {
    std::string s = fixed(x, 2);
    if (s.find('.') != std::string::npos) {
        while (!s.empty() && s.back() == '0') s.pop_back();
        if (!s.empty() && s.back() == '.') s.pop_back();
    }
    return s;
}

inline std::string signed_fixed(double x) {
    std::string s = fixed(x, 4);
    return (s[0] == '-' ? "" : "+") + s;
}

inline std::string xml_escape(std::string_view s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

inline std::string box(const Cell &c, size_t inner) {
    const char fill = c.shaded ? '#' : ' ';
    std::string body(inner, fill);
    size_t start = (inner - c.label.size()) / 2;
    body.replace(start, c.label.size(), c.label);
    return (c.codespace ? "[" : "|") + body + (c.codespace ? "]" : "|");
}

inline size_t label_width(const DiagramModel &m) {
    size_t w = 1;
    for (const auto &c : m.cells) w = std::max(w, c.label.size());
    return w + 2;
}

inline void ascii_footer(std::ostringstream &out, const DiagramModel &m, const std::set<size_t> &placed) {
    for (size_t i = 0; i < m.annotations.size(); ++i) {
        if (placed.count(i)) continue;
        const auto &a = m.annotations[i];
        out << "note (" << num(a.anchor.x) << ", " << num(a.anchor.y) << "): " << a.text << '\n';
    }
    for (const auto &l : m.legend) out << "legend: " << l << '\n';
}

}  // namespace detail

/// Monospace rendering, level 0 at the bottom. `[ ]` marks code-space cells,
/// `| |` padding cells, `#` fill an active cell.
inline std::string render_ascii(const DiagramModel &model) {
    model.validate();
    std::ostringstream out;
    if (!model.title.empty()) out << model.title << '\n';
    std::set<size_t> placed;
    if (model.kind == DiagramKind::Ladder || model.kind == DiagramKind::Grid) {
        std::map<long, std::map<long, const Cell *>> rows;
        long max_col = 0;
        for (const auto &c : model.cells) {
            long col = std::lround(c.position.x);
            rows[std::lround(c.position.y)][col] = &c;
            max_col = std::max(max_col, col);
        }
        const size_t inner = detail::label_width(model);
        for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
            char idx[16];
            std::snprintf(idx, sizeof(idx), "%3ld ", it->first);
            std::string line = idx;
            for (long col = 0; col <= max_col; ++col) {
                auto f = it->second.find(col);
                line += f == it->second.end() ? std::string(inner + 2, ' ') : detail::box(*f->second, inner);
            }
            for (size_t i = 0; i < model.annotations.size(); ++i) {
                const auto &a = model.annotations[i];
                if (model.kind == DiagramKind::Ladder && std::lround(a.anchor.y) == it->first) {
                    line += "  <- " + a.text;
                    placed.insert(i);
                }
            }
            out << line << '\n';
        }
        if (model.kind == DiagramKind::Grid) {
            std::string axis = "    ";
            for (long col = 0; col <= max_col; ++col) {
                std::string n = std::to_string(col);
                std::string cell(inner + 2, ' ');
                cell.replace((cell.size() - n.size()) / 2, n.size(), n);
                axis += cell;
            }
            out << axis << '\n';
        }
    } else {
        std::vector<const Cell *> order;
        for (const auto &c : model.cells) order.push_back(&c);
        std::stable_sort(order.begin(), order.end(), [](const Cell *a, const Cell *b) {
            if (a->position.y != b->position.y) return a->position.y > b->position.y;
            return a->position.x < b->position.x;
        });
        for (const Cell *c : order) {
            std::string line;
            if (model.kind == DiagramKind::ContinuousAxis) {
                line = detail::signed_fixed(c->position.y) + " ";
            } else {
                line = "(" + detail::signed_fixed(c->position.x) + ", " + detail::signed_fixed(c->position.y) + ") ";
            }
            line += c->codespace ? "==" : "--";
            line += c->shaded ? "##" : "  ";
            if (!c->label.empty()) line += " " + c->label;
            while (!line.empty() && line.back() == ' ') line.pop_back();
            out << line << '\n';
        }
    }
    detail::ascii_footer(out, model, placed);
    return out.str();
}

namespace detail {

struct Frame {
    double min_x, max_x, min_y, max_y;
};

inline Frame bounds(const DiagramModel &m) {
    Frame f{0, 0, 0, 0};
    bool first = true;
    auto take = [&](Position p) {
        if (first) {
            f = {p.x, p.x, p.y, p.y};
            first = false;
        }
        f.min_x = std::min(f.min_x, p.x);
        f.max_x = std::max(f.max_x, p.x);
        f.min_y = std::min(f.min_y, p.y);
        f.max_y = std::max(f.max_y, p.y);
    };
    for (const auto &c : m.cells) take(c.position);
    for (const auto &a : m.annotations) take(a.anchor);
    return f;
}

}  // namespace detail

/// SVG 1.1 document. Element order follows model order; ids are derived from
/// indices, so output is stable. The annotation layer is omitted when empty.
inline std::string render_svg(const DiagramModel &model, const Theme &theme = {}) {
    using detail::num;
    model.validate();
    const double cs = theme.cell_size;
    const double margin = 40.0;
    const bool discrete = model.kind == DiagramKind::Ladder || model.kind == DiagramKind::Grid;
    auto f = detail::bounds(model);
    // Continuous models are scaled so the visible span fits a 360px square.
    const double span_x = std::max(f.max_x - f.min_x, 1e-9);
    const double span_y = std::max(f.max_y - f.min_y, 1e-9);
    const double scale = discrete ? cs : 360.0 / std::max(span_x, span_y);
    const double plot_w = discrete ? (f.max_x - f.min_x + 1) * cs : (model.kind == DiagramKind::ContinuousAxis ? 120.0 : span_x * scale);
    const double plot_h = discrete ? (f.max_y - f.min_y + 1) * cs : span_y * scale;
    const double legend_h = 18.0 * static_cast<double>(model.legend.size());
    // Monospace advance is about 0.6 em; title is 14px, legend 11px.
    double text_w = 0.6 * 14.0 * static_cast<double>(model.title.size());
    for (const auto &line : model.legend) text_w = std::max(text_w, 0.6 * 11.0 * static_cast<double>(line.size()));
    const double width =
        margin * 2 + std::max(std::ceil(text_w), plot_w + (model.annotations.empty() ? 0.0 : 160.0));
    const double height = margin * 2 + plot_h + (model.title.empty() ? 0.0 : 20.0) + legend_h;
    const double top = margin + (model.title.empty() ? 0.0 : 20.0);

    // Screen coordinates of a model position (cell corner for discrete kinds).
    auto sx = [&](double x) { return margin + (x - f.min_x) * scale + (model.kind == DiagramKind::ContinuousAxis ? 60.0 : 0.0); };
    auto sy = [&](double y) {
        return discrete ? top + (f.max_y - y) * cs : top + (f.max_y - y) * scale;
    };

    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width) << "\" height=\""
      << num(height) << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\">\n";
    o << "<rect id=\"background\" x=\"0\" y=\"0\" width=\"" << num(width) << "\" height=\"" << num(height)
      << "\" fill=\"" << theme.empty_fill << "\"/>\n";
    if (!model.title.empty()) {
        o << "<text id=\"title\" x=\"" << num(margin) << "\" y=\"" << num(margin) << "\" font-family=\"" << theme.font
          << "\" font-size=\"14\" fill=\"" << theme.text << "\">" << detail::xml_escape(model.title) << "</text>\n";
    }

    o << "<g id=\"cells\" data-kind=\"" << diagram_kind_name(model.kind) << "\">\n";
    for (size_t i = 0; i < model.cells.size(); ++i) {
        const auto &c = model.cells[i];
        const std::string stroke = c.codespace ? theme.codespace_stroke : theme.cell_stroke;
        const std::string stroke_w = c.codespace ? "3" : "1";
        if (discrete) {
            double x = sx(c.position.x), y = sy(c.position.y);
            o << "<rect id=\"cell-" << i << "\" x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(cs)
              << "\" height=\"" << num(cs) << "\" fill=\"" << (c.shaded ? theme.active_fill : theme.empty_fill)
              << "\" stroke=\"" << stroke << "\" stroke-width=\"" << stroke_w << "\"/>\n";
            if (!c.label.empty()) {
                o << "<text id=\"label-" << i << "\" x=\"" << num(x + cs / 2) << "\" y=\"" << num(y + cs / 2 + 5)
                  << "\" text-anchor=\"middle\" font-family=\"" << theme.font << "\" font-size=\"12\" fill=\""
                  << theme.text << "\">" << detail::xml_escape(c.label) << "</text>\n";
            }
        } else {
            double x = sx(c.position.x), y = sy(c.position.y);
            if (c.codespace) {
                if (model.kind == DiagramKind::ContinuousAxis) {
                    o << "<line id=\"tick-" << i << "\" x1=\"" << num(x - 12) << "\" y1=\"" << num(y) << "\" x2=\""
                      << num(x + 12) << "\" y2=\"" << num(y) << "\" stroke=\"" << stroke << "\" stroke-width=\"3\"/>\n";
                } else {
                    o << "<circle id=\"tick-" << i << "\" cx=\"" << num(x) << "\" cy=\"" << num(y)
                      << "\" r=\"6\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"3\"/>\n";
                }
            }
            if (c.shaded) {
                o << "<circle id=\"peak-" << i << "\" cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"4\" fill=\""
                  << theme.active_fill << "\" stroke=\"" << theme.cell_stroke << "\" stroke-width=\"1\"/>\n";
            }
            if (!c.label.empty()) {
                o << "<text id=\"label-" << i << "\" x=\"" << num(x + 16) << "\" y=\"" << num(y + 4)
                  << "\" font-family=\"" << theme.font << "\" font-size=\"12\" fill=\"" << theme.text << "\">"
                  << detail::xml_escape(c.label) << "</text>\n";
            }
        }
    }
    o << "</g>\n";
    if (model.kind == DiagramKind::Ladder) {
        o << "<g id=\"level-index\">\n";
        for (size_t i = 0; i < model.cells.size(); ++i) {
            const auto &c = model.cells[i];
            o << "<text id=\"index-" << i << "\" x=\"" << num(margin - 8) << "\" y=\"" << num(sy(c.position.y) + cs / 2 + 5)
              << "\" text-anchor=\"end\" font-family=\"" << theme.font << "\" font-size=\"12\" fill=\"" << theme.text
              << "\">" << std::lround(c.position.y) << "</text>\n";
        }
        o << "</g>\n";
    }
    if (!model.annotations.empty()) {
        o << "<g id=\"annotations\">\n";
        for (size_t i = 0; i < model.annotations.size(); ++i) {
            const auto &a = model.annotations[i];
            double y = discrete ? sy(a.anchor.y) + cs / 2 : sy(a.anchor.y);
            double x0 = discrete ? sx(f.max_x) + cs + 6 : sx(f.max_x) + 24;
            o << "<line id=\"arrow-" << i << "\" x1=\"" << num(x0 + 30) << "\" y1=\"" << num(y) << "\" x2=\"" << num(x0)
              << "\" y2=\"" << num(y) << "\" stroke=\"" << theme.arrow << "\" stroke-width=\"2\"/>\n";
            o << "<text id=\"note-" << i << "\" x=\"" << num(x0 + 34) << "\" y=\"" << num(y + 4) << "\" font-family=\""
              << theme.font << "\" font-size=\"12\" fill=\"" << theme.arrow << "\">" << detail::xml_escape(a.text)
              << "</text>\n";
        }
        o << "</g>\n";
    }
    if (!model.legend.empty()) {
        o << "<g id=\"legend\">\n";
        double y = top + plot_h + margin / 2;
        for (size_t i = 0; i < model.legend.size(); ++i) {
            o << "<text id=\"legend-" << i << "\" x=\"" << num(margin) << "\" y=\"" << num(y + 18.0 * i)
              << "\" font-family=\"" << theme.font << "\" font-size=\"11\" fill=\"" << theme.text << "\">"
              << detail::xml_escape(model.legend[i]) << "</text>\n";
        }
        o << "</g>\n";
    }
    o << "</svg>\n";
    return o.str();
}

// ---------------------------------------------------------------------------
// JSON form embedded in protocol envelopes.

inline nlohmann::ordered_json diagram_to_json(const DiagramModel &m) {
    using J = nlohmann::ordered_json;
    J cells = J::array();
    for (const auto &c : m.cells) {
        cells.push_back(J{{"x", c.position.x}, {"y", c.position.y}, {"shaded", c.shaded}, {"codespace", c.codespace},
                          {"label", c.label}});
    }
    J notes = J::array();
    for (const auto &a : m.annotations) {
        notes.push_back(J{{"text", a.text}, {"x", a.anchor.x}, {"y", a.anchor.y}});
    }
    return J{{"kind", diagram_kind_name(m.kind)},
             {"title", m.title},
             {"cells", std::move(cells)},
             {"annotations", std::move(notes)},
             {"legend", m.legend}};
}

inline DiagramModel diagram_from_json(const nlohmann::ordered_json &j) {
    DiagramModel m;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "Ladder") m.kind = DiagramKind::Ladder;
    else if (kind == "Grid") m.kind = DiagramKind::Grid;
    else if (kind == "ContinuousAxis") m.kind = DiagramKind::ContinuousAxis;
    else if (kind == "ContinuousPlane") m.kind = DiagramKind::ContinuousPlane;
    else throw Error(ErrorCode::MalformedRequest, "unknown diagram kind " + kind);
    m.title = j.value("title", "");
    for (const auto &c : j.at("cells")) {
        m.cells.push_back(Cell{{c.at("x").get<double>(), c.at("y").get<double>()}, c.at("shaded").get<bool>(),
                               c.at("codespace").get<bool>(), c.value("label", "")});
    }
    for (const auto &a : j.at("annotations")) {
        m.annotations.push_back(Annotation{a.at("text").get<std::string>(), {a.at("x").get<double>(), a.at("y").get<double>()}});
    }
    m.legend = j.at("legend").get<std::vector<std::string>>();
    return m;
}

}  // namespace shiftsim
