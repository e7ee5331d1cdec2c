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

// Command implementations for the shiftsim executable. Kept in a header so
// the test suite can drive them with in-memory streams.
//
// Exit codes: 0 success, 2 validation error, 3 trace ended in a logical
// error, 4 internal error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "shiftsim/shiftsim.hpp"

namespace shiftsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitLogicalError = 3;
inline constexpr int kExitInternal = 4;

/// Parses "RE,IM" or "RE".
inline Complex parse_complex_flag(const std::string &text) {
    auto bad = [&] { return Error(ErrorCode::InvalidAmplitudes, "expected RE,IM but got '" + text + "'"); };
    auto comma = text.find(',');
    try {
        size_t used = 0;
        if (comma == std::string::npos) {
            double re = std::stod(text, &used);
            if (used != text.size()) throw bad();
            return {re, 0.0};
        }
        std::string a = text.substr(0, comma), b = text.substr(comma + 1);
        double re = std::stod(a, &used);
        if (used != a.size()) throw bad();
        double im = std::stod(b, &used);
        if (used != b.size()) throw bad();
        return {re, im};
    } catch (const std::logic_error &) {
        throw bad();
    }
}

/// Amplitudes from flags. Inputs within 1e-6 of unit norm are rescaled with a
/// warning; anything further off is rejected.
inline LogicalAmplitudes amplitudes_from_flags(const std::string &alpha, const std::string &beta, std::ostream &err) {
    Complex a = parse_complex_flag(alpha);
    Complex b = parse_complex_flag(beta);
    double n = std::norm(a) + std::norm(b);
    if (std::abs(n - 1.0) <= kAmplitudeTolerance) {
        return LogicalAmplitudes::normalized(a, b);
    }
    if (std::abs(n - 1.0) <= 1e-6) {
        err << "warning: amplitudes renormalized (|alpha|^2 + |beta|^2 = " << format_real(n) << ")\n";
        return LogicalAmplitudes::normalized(a, b);
    }
    throw Error(ErrorCode::InvalidAmplitudes,
                "|alpha|^2 + |beta|^2 = " + format_real(n) + " is not 1 (tolerance 1e-6)");
}

inline Boundary boundary_from_flag(const std::string &s) { return SessionConfig::parse_boundary(s); }

inline std::string describe_complex(Complex z) {
    if (z.imag() == 0.0) return format_real(z.real());
    return "(" + format_real(z.real()) + (z.imag() < 0 ? "-" : "+") + format_real(std::abs(z.imag())) + "i)";
}

inline std::string describe_state(const LadderState &s) {
    std::string out;
    for (const auto &[level, amp] : s.amplitudes()) {
        if (!out.empty()) out += " + ";
        out += describe_complex(amp) + "|" + std::to_string(level) + ">";
    }
    return out;
}

inline std::string describe_classification(const Classification &c) {
    if (!c.is_codeword()) return "undefined logical state (outside the code space)";
    const auto &a = c.amplitudes();
    return "codeword " + describe_complex(a.alpha()) + "|0_L> + " + describe_complex(a.beta()) + "|1_L>";
}

struct LadderFlags {
    int levels = 0;
    int spacing = 1;
    std::string boundary = "hard";
    std::string alpha = "1,0";
    std::string beta = "0,0";
};

inline void add_ladder_flags(CLI::App *cmd, LadderFlags &f, bool levels_required) {
    auto *lv = cmd->add_option("--levels", f.levels, "number of levels N");
    if (levels_required) lv->required();
    cmd->add_option("--spacing", f.spacing, "codeword spacing k")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--boundary", f.boundary, "hard or cyclic")->check(CLI::IsMember({"hard", "cyclic"}));
    cmd->add_option("--alpha", f.alpha, "amplitude of |0_L> as RE,IM");
    cmd->add_option("--beta", f.beta, "amplitude of |1_L> as RE,IM");
}

inline int cmd_encode(const LadderFlags &f, const std::string &format, std::ostream &out, std::ostream &err) {
    LadderCode code(f.levels, f.spacing, boundary_from_flag(f.boundary));
    LadderState state = encode(code, amplitudes_from_flags(f.alpha, f.beta, err));
    LadderDiagramOptions opt;
    opt.title = "N=" + std::to_string(f.levels) + " k=" + std::to_string(f.spacing) + " " + f.boundary;
    opt.label_mod = f.spacing;
    DiagramModel model = model_ladder(state, opt);
    if (format == "svg") {
        out << render_svg(model);
    } else if (format == "json") {
        Json j;
        Json amps = Json::array();
        for (const auto &[level, a] : state.amplitudes()) amps.push_back(Json{{"level", level}, {"amplitude", complex_to_json(a)}});
        j["amplitudes"] = std::move(amps);
        j["diagram"] = diagram_to_json(model);
        out << j.dump(2) << '\n';
    } else {
        out << "state: " << describe_state(state) << '\n';
        out << render_ascii(model);
    }
    return kExitOk;
}

struct TraceFlags {
    LadderFlags ladder;
    int shift = 0;
    std::string rule = "nearest";
    uint64_t seed = 0;
};

/// Narrated decode. Returns 3 when any traced rule leaves a logical error.
inline int cmd_trace(const TraceFlags &f, std::ostream &out, std::ostream &err) {
    const int levels = f.ladder.levels > 0 ? f.ladder.levels : 4 * f.ladder.spacing;
    LadderCode code(levels, f.ladder.spacing, boundary_from_flag(f.ladder.boundary));
    LogicalAmplitudes amps = amplitudes_from_flags(f.ladder.alpha, f.ladder.beta, err);
    LadderState encoded = encode(code, amps);
    out << "code: N=" << levels << " k=" << code.spacing() << " boundary=" << boundary_name(code.boundary())
        << " correctable radius=" << correctable_radius(code) << '\n';
    out << "encoded: " << describe_state(encoded) << '\n';
    LadderState noisy = apply_shift(encoded, f.shift);
    out << "inject: X^" << detail::signed_int(f.shift) << " -> " << describe_state(noisy) << '\n';

    std::vector<RoundingRule> rules;
    if (f.rule == "compare") rules = {RoundingRule::PaperLiteral, RoundingRule::Nearest};
    else rules = {SessionConfig::parse_rule(f.rule)};

    bool logical_error = false;
    std::vector<int> outcomes;
    for (RoundingRule rule : rules) {
        RandomStream rng(f.seed);
        DecodeResult r = decode(noisy, rule, rng);
        out << "[" << rule_name(rule) << "]\n";
        out << "  syndrome: " << r.measured_syndrome.value << " (active level mod " << code.spacing() << ")\n";
        if (r.measured_syndrome.value == 0) {
            out << "  candidates: none, no error detected\n";
        } else {
            out << "  candidates: {" << detail::join_ints(candidate_errors(r.measured_syndrome, code)) << "}\n";
        }
        out << "  correction: X^" << detail::signed_int(r.applied_correction) << '\n';
        out << "  corrected: " << describe_state(r.corrected_state) << '\n';
        out << "  classification: " << describe_classification(r.classification) << '\n';
        bool ok = r.classification.matches(amps);
        if (ok) {
            out << "  verdict: " << (f.shift == 0 ? "no error" : "recovered") << '\n';
        } else if (r.classification.is_codeword() && r.classification.matches(amps.swapped())) {
            out << "  verdict: logical error X_L\n";
        } else {
            out << "  verdict: logical error\n";
        }
        logical_error = logical_error || !ok;
        outcomes.push_back(r.applied_correction);
    }
    if (rules.size() == 2) {
        out << (outcomes[0] == outcomes[1] ? "rules agree\n"
                                           : "rules diverge: paper " + detail::signed_int(outcomes[0]) + " vs nearest " +
                                                 detail::signed_int(outcomes[1]) + "\n");
    }
    return logical_error ? kExitLogicalError : kExitOk;
}

struct SweepFlags {
    std::string code = "gkp";
    double lambda_v = kSqrtPi;
    std::optional<double> lambda_h;
    double sigma_start = 0.0;
    double sigma_end = 0.0;
    int sigma_steps = 1;
    std::string axes = "v";
    int levels = 0;
    int spacing = 3;
    int levels_h = 0;
    int spacing_h = 0;
    std::string boundary = "cyclic";
    int shift_start = 0;
    int shift_end = 0;
    std::string rule = "nearest";
    int64_t trials = 10000;
    uint64_t seed = 0;
    std::string format = "csv";
    unsigned threads = 0;
};

inline std::vector<TrialPlan> sweep_plans(const SweepFlags &f) {
    if (f.trials < 1) throw Error(ErrorCode::InvalidPlan, "--trials must be >= 1");
    std::vector<TrialPlan> plans;
    RoundingRule rule = SessionConfig::parse_rule(f.rule);
    if (f.code == "gkp") {
        if (f.sigma_steps < 1) throw Error(ErrorCode::InvalidPlan, "--sigma-steps must be >= 1");
        if (f.sigma_start < 0.0 || f.sigma_end < 0.0) throw Error(ErrorCode::InvalidNoise, "sigmas must be >= 0");
        GkpDescriptor g;
        if (f.lambda_h) {
            g = GkpDescriptor{f.lambda_v, *f.lambda_h, false};
        } else {
            GkpCode c = make_gkp(f.lambda_v);
            g = GkpDescriptor{c.lambda_v(), c.lambda_h(), true};
        }
        for (int i = 0; i < f.sigma_steps; ++i) {
            double s = f.sigma_steps == 1 ? f.sigma_start
                                          : f.sigma_start + (f.sigma_end - f.sigma_start) * i / (f.sigma_steps - 1);
            GaussianDisplacement n{s, f.axes == "both" ? s : 0.0};
            plans.push_back(TrialPlan{g, n, f.trials, f.seed, rule});
        }
        return plans;
    }
    if (f.shift_start < 0 || f.shift_end < f.shift_start) throw Error(ErrorCode::InvalidNoise, "need 0 <= --shift-start <= --shift-end");
    Boundary b = boundary_from_flag(f.boundary);
    for (int m = f.shift_start; m <= f.shift_end; ++m) {
        CodeDescriptor code;
        if (f.code == "ladder") {
            code = LadderDescriptor{f.levels > 0 ? f.levels : 4 * f.spacing, f.spacing, b};
        } else if (f.code == "planar") {
            int kh = f.spacing_h > 0 ? f.spacing_h : f.spacing;
            code = PlanarDescriptor{f.levels > 0 ? f.levels : 4 * f.spacing, f.spacing, f.levels_h > 0 ? f.levels_h : 4 * kh,
                                    kh, b};
        } else {
            throw Error(ErrorCode::InvalidPlan, "unknown code '" + f.code + "'");
        }
        plans.push_back(TrialPlan{code, DiscreteUniform{m}, f.trials, f.seed, rule});
    }
    return plans;
}

inline int cmd_sweep(const SweepFlags &f, std::ostream &out) {
    auto rows = sweep(sweep_plans(f), f.threads);
    if (f.format == "json") write_json(out, rows);
    else write_csv(out, rows);
    return kExitOk;
}

inline int cmd_render(const std::string &figure, const std::string &format, std::ostream &out) {
    DiagramModel m = figure_model(figure);
    if (format == "svg") out << render_svg(m);
    else if (format == "json") out << diagram_to_json(m).dump(2) << '\n';
    else out << render_ascii(m);
    return kExitOk;
}

/// Hook for the `serve` subcommand; installed by the executable so that this
/// header does not depend on the HTTP library.
using ServeFn = std::function<int(const std::string &host, int port, std::ostream &out)>;

inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err, const ServeFn &serve = {}) {
    CLI::App app{"shiftsim: displacement-code simulator and lesson playground"};
    app.require_subcommand(1);

    LadderFlags enc;
    std::string enc_format = "text";
    auto *encode_cmd = app.add_subcommand("encode", "encode a logical state on a ladder and draw it");
    add_ladder_flags(encode_cmd, enc, true);
    encode_cmd->add_option("--format", enc_format, "text, json or svg")->check(CLI::IsMember({"text", "json", "svg"}));

    TraceFlags tr;
    // Unequal magnitudes so a surviving X_L shows up as a swap.
    tr.ladder.alpha = "0.6,0";
    tr.ladder.beta = "0.8,0";
    // Wrap-around lets negative shifts and upward corrections stay on the ladder.
    tr.ladder.boundary = "cyclic";
    auto *trace_cmd = app.add_subcommand("trace", "narrate inject -> syndrome -> correction -> verdict");
    add_ladder_flags(trace_cmd, tr.ladder, false);
    trace_cmd->add_option("--shift", tr.shift, "injected shift A")->required();
    trace_cmd->add_option("--rule", tr.rule, "paper, nearest or compare")
        ->check(CLI::IsMember({"paper", "nearest", "compare"}));
    trace_cmd->add_option("--seed", tr.seed, "measurement seed")->envname("SHIFTSIM_SEED");

    SweepFlags sw;
    auto *sweep_cmd = app.add_subcommand("sweep", "Monte Carlo logical error rates");
    sweep_cmd->add_option("--code", sw.code, "gkp, ladder or planar")->check(CLI::IsMember({"gkp", "ladder", "planar"}));
    sweep_cmd->add_option("--lambda-v", sw.lambda_v, "vertical GKP spacing")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--lambda-h", sw.lambda_h, "horizontal GKP spacing (drops the pi constraint)")
        ->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--sigma-start", sw.sigma_start, "first noise width");
    sweep_cmd->add_option("--sigma-end", sw.sigma_end, "last noise width");
    sweep_cmd->add_option("--sigma-steps", sw.sigma_steps, "grid points");
    sweep_cmd->add_option("--axes", sw.axes, "noise on v (vertical only) or both axes")->check(CLI::IsMember({"v", "both"}));
    sweep_cmd->add_option("--levels", sw.levels, "ladder / vertical levels");
    sweep_cmd->add_option("--spacing", sw.spacing, "ladder / vertical spacing");
    sweep_cmd->add_option("--levels-h", sw.levels_h, "horizontal levels (planar)");
    sweep_cmd->add_option("--spacing-h", sw.spacing_h, "horizontal spacing (planar)");
    sweep_cmd->add_option("--boundary", sw.boundary, "hard or cyclic")->check(CLI::IsMember({"hard", "cyclic"}));
    sweep_cmd->add_option("--shift-start", sw.shift_start, "first uniform max shift (discrete codes)");
    sweep_cmd->add_option("--shift-end", sw.shift_end, "last uniform max shift (discrete codes)");
    sweep_cmd->add_option("--rule", sw.rule, "paper or nearest")->check(CLI::IsMember({"paper", "nearest"}));
    sweep_cmd->add_option("--trials", sw.trials, "trials per row");
    sweep_cmd->add_option("--seed", sw.seed, "master seed")->envname("SHIFTSIM_SEED");
    sweep_cmd->add_option("--format", sw.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sweep_cmd->add_option("--threads", sw.threads, "worker threads (0 = all cores)");

    std::string figure = "ten-level";
    std::string render_format = "ascii";
    auto *render_cmd = app.add_subcommand("render", "draw a lesson figure preset");
    render_cmd->add_option("--figure", figure, "preset name")->check(CLI::IsMember(figure_names()));
    render_cmd->add_option("--format", render_format, "ascii, svg or json")
        ->check(CLI::IsMember({"ascii", "svg", "json"}));

    std::string host = "127.0.0.1";
    int port = 8080;
    auto *serve_cmd = app.add_subcommand("serve", "serve the shiftsim/1 session protocol over HTTP");
    serve_cmd->add_option("--host", host, "bind address");
    serve_cmd->add_option("--port", port, "TCP port")->check(CLI::Range(0, 65535));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }

    try {
        if (*encode_cmd) return cmd_encode(enc, enc_format, out, err);
        if (*trace_cmd) return cmd_trace(tr, out, err);
        if (*sweep_cmd) return cmd_sweep(sw, out);
        if (*render_cmd) return cmd_render(figure, render_format, out);
        if (*serve_cmd) {
            if (!serve) {
                err << "error: serve is not available in this build\n";
                return kExitInternal;
            }
            return serve(host, port, out);
        }
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitInternal;
}

}  // namespace shiftsim::cli
