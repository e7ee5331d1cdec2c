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

// Lesson sessions behind the "shiftsim/1" JSON protocol. Transport-free: the
// HTTP host in tools/ only moves request bodies in and envelopes out.
//
// Learner-facing envelopes never carry the true state. The diagram shades
// only what the learner legitimately knows (the prepared codeword, syndrome
// candidates, a collapsed logical outcome). Sessions created with
// teacher_mode add a `teacher_view` with the full state.

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "format.hpp"
#include "gkp.hpp"
#include "ladder.hpp"
#include "planar.hpp"
#include "random.hpp"
#include "render.hpp"

namespace shiftsim {

inline constexpr std::string_view kProtocolVersion = "shiftsim/1";

using Json = nlohmann::ordered_json;

enum class CodeKind { Ladder, Planar, Gkp };

struct SessionConfig {
    CodeKind kind = CodeKind::Ladder;
    std::optional<LadderCode> ladder;
    std::optional<PlanarCode> planar;
    std::optional<GkpCode> gkp;
    LogicalAmplitudes reference = LogicalAmplitudes(0.6, 0.8);
    uint64_t seed = 0;
    bool teacher_mode = false;
    RoundingRule rule = RoundingRule::Nearest;
    Json raw;

    /// Parses a create request. Geometry errors surface as InvalidGeometry.
    static SessionConfig from_json(const Json &j) {
        if (!j.is_object()) {
            throw Error(ErrorCode::MalformedRequest, "config must be a JSON object");
        }
        SessionConfig c;
        c.raw = j;
        try {
            const std::string code = j.value("code", "ladder");
            Boundary boundary = parse_boundary(j.value("boundary", "hard"));
            if (code == "ladder") {
                c.kind = CodeKind::Ladder;
                c.ladder.emplace(j.at("levels").get<int>(), j.at("spacing").get<int>(), boundary);
            } else if (code == "planar") {
                c.kind = CodeKind::Planar;
                c.planar = make_planar(j.at("levels_v").get<int>(), j.at("spacing_v").get<int>(),
                                       j.at("levels_h").get<int>(), j.at("spacing_h").get<int>(), boundary);
            } else if (code == "gkp") {
                c.kind = CodeKind::Gkp;
                double lv = j.value("lambda_v", kSqrtPi);
                if (j.contains("lambda_h")) {
                    c.gkp.emplace(lv, j.at("lambda_h").get<double>(), j.value("strict", false));
                } else {
                    c.gkp = make_gkp(lv);
                }
            } else {
                throw Error(ErrorCode::MalformedRequest, "unknown code kind '" + code + "'");
            }
            if (j.contains("alpha") || j.contains("beta")) {
                c.reference = LogicalAmplitudes(parse_complex(j.value("alpha", Json::array({0.0, 0.0}))),
                                                parse_complex(j.value("beta", Json::array({0.0, 0.0}))));
            }
            c.seed = j.value("seed", uint64_t{0});
            c.teacher_mode = j.value("teacher_mode", false);
            c.rule = parse_rule(j.value("rule", "nearest"));
        } catch (const nlohmann::json::exception &e) {
            throw Error(ErrorCode::MalformedRequest, std::string("bad config: ") + e.what());
        }
        return c;
    }

    static Boundary parse_boundary(const std::string &s) {
        if (s == "hard") return Boundary::Hard;
        if (s == "cyclic") return Boundary::Cyclic;
        throw Error(ErrorCode::MalformedRequest, "boundary must be 'hard' or 'cyclic'");
    }

    static RoundingRule parse_rule(const std::string &s) {
        if (s == "nearest") return RoundingRule::Nearest;
        if (s == "paper") return RoundingRule::PaperLiteral;
        throw Error(ErrorCode::MalformedRequest, "rule must be 'nearest' or 'paper'");
    }

    static Complex parse_complex(const Json &j) {
        if (j.is_number()) return {j.get<double>(), 0.0};
        if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
        throw Error(ErrorCode::MalformedRequest, "complex amplitudes are numbers or [re, im] pairs");
    }
};

struct SessionEvent {
    std::string action;
    Json payload;
    Json result;
    std::string narration;
};

inline Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Json amplitudes_to_json(const LogicalAmplitudes &a) {
    return Json{{"alpha", complex_to_json(a.alpha())}, {"beta", complex_to_json(a.beta())}};
}

namespace detail {

inline std::string join_ints(const std::vector<int> &v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
    return s;
}

inline std::string signed_int(int64_t x) { return (x >= 0 ? "+" : "") + std::to_string(x); }

}  // namespace detail

class Session {
public:
    Session(std::string id, SessionConfig config)
        : id_(std::move(id)), config_(std::move(config)), rng_(config_.seed) {
        prepare();
    }

    const std::string &id() const { return id_; }
    const SessionConfig &config() const { return config_; }
    const std::vector<SessionEvent> &event_log() const { return log_; }

    Json create_envelope() {
        std::string narration = "Prepared the reference codeword; the code space is outlined in green.";
        Json result{{"code", config_.raw}, {"narration", narration}};
        return envelope("Create", std::move(result));
    }

    /// Runs one protocol action. Throws Error on invalid requests; the state
    /// and log are untouched in that case.
    Json step(const std::string &action, const Json &payload) {
        Json result;
        if (action == "GetState") {
            result = summary();
            result["narration"] = "Current session state.";
            return envelope(action, std::move(result));
        }
        if (action == "InjectShift") result = inject(payload);
        else if (action == "MeasureSyndrome") result = measure_syndrome_action();
        else if (action == "StepDecoder") result = step_decoder(payload);
        else if (action == "MeasureLogical") result = measure_logical_action();
        else if (action == "CandidateErrors") result = candidates_action(payload);
        else if (action == "Reset") result = reset_action();
        else throw Error(ErrorCode::InvalidAction, "unknown action '" + action + "'");
        log_.push_back(SessionEvent{action, payload, result, result.value("narration", "")});
        return envelope(action, std::move(result));
    }

    /// Learner-visible diagram for the current knowledge state.
    DiagramModel learner_diagram() const {
        switch (config_.kind) {
            case CodeKind::Ladder: {
                LadderDiagramOptions opt;
                opt.title = "ladder N=" + std::to_string(config_.ladder->num_levels()) +
                            " k=" + std::to_string(config_.ladder->spacing());
                opt.label_mod = config_.ladder->spacing();
                opt.highlight = known_levels_;
                opt.annotations = notes_;
                return model_ladder(*config_.ladder, nullptr, opt);
            }
            case CodeKind::Planar: {
                GridDiagramOptions opt;
                opt.show_state = state_known_;
                opt.annotations = notes_;
                return model_planar(*config_.planar, std::get<PlanarState>(state_), opt);
            }
            case CodeKind::Gkp: {
                ContinuousDiagramOptions opt;
                opt.show_state = state_known_;
                opt.annotations = notes_;
                return model_gkp_axis(*config_.gkp, std::get<GkpState>(state_), opt);
            }
        }
        return {};
    }

    DiagramModel true_diagram() const {
        switch (config_.kind) {
            case CodeKind::Ladder: {
                LadderDiagramOptions opt;
                opt.label_mod = config_.ladder->spacing();
                return model_ladder(std::get<LadderState>(state_), opt);
            }
            case CodeKind::Planar:
                return model_planar(*config_.planar, std::get<PlanarState>(state_));
            case CodeKind::Gkp:
                return model_gkp_axis(*config_.gkp, std::get<GkpState>(state_));
        }
        return {};
    }

    Json teacher_view() const {
        Json t;
        switch (config_.kind) {
            case CodeKind::Ladder: {
                const auto &s = std::get<LadderState>(state_);
                Json amps = Json::array();
                for (const auto &[level, a] : s.amplitudes()) {
                    amps.push_back(Json{{"level", level}, {"amplitude", complex_to_json(a)}});
                }
                t["amplitudes"] = std::move(amps);
                Classification c = classify(s);
                t["classification"] = c.is_codeword() ? Json{{"codeword", true}, {"logical", amplitudes_to_json(c.amplitudes())}}
                                                      : Json{{"codeword", false}};
                break;
            }
            case CodeKind::Planar: {
                const auto &s = std::get<PlanarState>(state_);
                t["logical"] = amplitudes_to_json(s.logical);
                t["v_shift"] = s.v_shift;
                t["h_shift"] = s.h_shift;
                break;
            }
            case CodeKind::Gkp: {
                const auto &s = std::get<GkpState>(state_);
                t["logical"] = amplitudes_to_json(s.logical);
                t["delta_v"] = s.delta_v;
                t["delta_h"] = s.delta_h;
                break;
            }
        }
        t["diagram"] = diagram_to_json(true_diagram());
        return t;
    }

private:
    void prepare() {
        switch (config_.kind) {
            case CodeKind::Ladder: {
                LadderState s = encode(*config_.ladder, config_.reference);
                known_levels_ = s.support();
                state_ = std::move(s);
                break;
            }
            case CodeKind::Planar:
                state_ = encode_planar(*config_.planar, config_.reference);
                break;
            case CodeKind::Gkp:
                state_ = encode_gkp(config_.reference);
                break;
        }
        state_known_ = true;
        notes_.clear();
        last_logical_.reset();
        last_syndrome_.reset();
    }

    void forget() {
        state_known_ = false;
        known_levels_.clear();
        notes_.clear();
        last_logical_.reset();
    }

    Json inject(const Json &payload) {
        Json r;
        std::string what;
        switch (config_.kind) {
            case CodeKind::Ladder: {
                int64_t amount = payload_int(payload, "amount");
                state_ = apply_shift(std::get<LadderState>(state_), static_cast<int>(amount));
                r["amount"] = amount;
                what = "Injected X^" + detail::signed_int(amount) + ".";
                break;
            }
            case CodeKind::Planar: {
                int64_t dv = payload_int(payload, "dv", 0);
                int64_t dh = payload_int(payload, "dh", 0);
                state_ = apply_displacement(std::get<PlanarState>(state_), dv, dh);
                r["dv"] = dv;
                r["dh"] = dh;
                what = "Injected vertical shift " + detail::signed_int(dv) + " and horizontal shift " +
                       detail::signed_int(dh) + ".";
                break;
            }
            case CodeKind::Gkp: {
                double dv = payload_real(payload, "dv");
                double dh = payload_real(payload, "dh");
                state_ = apply_displacement_cv(std::get<GkpState>(state_), dv, dh);
                r["dv"] = dv;
                r["dh"] = dh;
                what = "Injected displacement (" + format_real(dv) + ", " + format_real(dh) + ").";
                break;
            }
        }
        forget();
        last_syndrome_.reset();
        r["narration"] = what + " The decoder cannot see where the state went.";
        return r;
    }

    Json measure_syndrome_action() {
        Json r;
        switch (config_.kind) {
            case CodeKind::Ladder: {
                const auto &code = *config_.ladder;
                auto [syn, post] = measure_syndrome(std::get<LadderState>(state_), rng_);
                state_ = std::move(post);
                auto cands = candidate_errors(syn, code);
                last_syndrome_ = syn.value;
                forget();
                known_levels_ = cands;
                r["syndrome"] = syn.value;
                r["candidates"] = cands;
                std::string text = "Syndrome " + std::to_string(syn.value) + ": the active level mod " +
                                   std::to_string(code.spacing()) + " is " + std::to_string(syn.value) + ".";
                if (syn.value == 0) {
                    text += " No error detected.";
                } else {
                    text += " Candidate errors at levels {" + detail::join_ints(cands) + "}.";
                }
                notes_.push_back(Annotation{"syndrome " + std::to_string(syn.value), {0.0, static_cast<double>(code.num_levels() - 1)}});
                r["narration"] = text;
                break;
            }
            case CodeKind::Planar: {
                const auto &s = std::get<PlanarState>(state_);
                int64_t sv = floor_mod(s.v_shift, config_.planar->spacing_v());
                int64_t sh = floor_mod(s.h_shift, config_.planar->spacing_h());
                last_syndrome_ = static_cast<int>(sv);
                last_syndrome_h_ = static_cast<int>(sh);
                r["syndrome_v"] = sv;
                r["syndrome_h"] = sh;
                r["narration"] = "Vertical syndrome " + std::to_string(sv) + " (mod " +
                                 std::to_string(config_.planar->spacing_v()) + "), horizontal syndrome " +
                                 std::to_string(sh) + " (mod " + std::to_string(config_.planar->spacing_h()) + ").";
                break;
            }
            case CodeKind::Gkp: {
                const auto &s = std::get<GkpState>(state_);
                double rv = centered_mod(s.delta_v, config_.gkp->lambda_v());
                double rh = centered_mod(s.delta_h, config_.gkp->lambda_h());
                r["residual_v"] = rv;
                r["residual_h"] = rh;
                r["narration"] = "Measured displacement modulo the lattice: (" + format_real(rv) + ", " +
                                 format_real(rh) + ").";
                break;
            }
        }
        return r;
    }

    Json candidates_action(const Json &payload) {
        Json r;
        switch (config_.kind) {
            case CodeKind::Ladder: {
                std::optional<int> s = last_syndrome_;
                if (payload.is_object() && payload.contains("syndrome")) s = static_cast<int>(payload_int(payload, "syndrome"));
                if (!s) throw Error(ErrorCode::InvalidAction, "no syndrome measured yet; pass {\"syndrome\": s}");
                if (*s < 0 || *s >= config_.ladder->spacing()) throw Error(ErrorCode::InvalidAction, "syndrome outside [0, k)");
                auto cands = candidate_errors(Syndrome{*s}, *config_.ladder);
                r["syndrome"] = *s;
                r["candidates"] = cands;
                r["narration"] = "Syndrome " + std::to_string(*s) + " is produced by errors at levels {" +
                                 detail::join_ints(cands) + "}.";
                break;
            }
            case CodeKind::Planar: {
                if (!last_syndrome_) throw Error(ErrorCode::InvalidAction, "no syndrome measured yet");
                auto cv = candidate_errors(Syndrome{*last_syndrome_}, config_.planar->vertical);
                auto ch = candidate_errors(Syndrome{last_syndrome_h_}, config_.planar->horizontal);
                r["candidates_v"] = cv;
                r["candidates_h"] = ch;
                r["narration"] = "Vertical candidates {" + detail::join_ints(cv) + "}, horizontal candidates {" +
                                 detail::join_ints(ch) + "}.";
                break;
            }
            case CodeKind::Gkp: {
                const auto &s = std::get<GkpState>(state_);
                double lam = config_.gkp->lambda_v();
                double rv = centered_mod(s.delta_v, lam);
                Json list = Json::array();
                for (int m = -2; m <= 2; ++m) list.push_back(rv + m * lam);
                r["candidates_v"] = std::move(list);
                r["narration"] = "Any displacement residual + m*lambda_v fits this syndrome; binning picks m = 0.";
                break;
            }
        }
        return r;
    }

    Json step_decoder(const Json &payload) {
        Json r;
        RoundingRule rule = config_.rule;
        if (payload.is_object() && payload.contains("rule")) rule = SessionConfig::parse_rule(payload.at("rule").get<std::string>());
        switch (config_.kind) {
            case CodeKind::Ladder: {
                DecodeResult d = decode(std::get<LadderState>(state_), rule, rng_);
                state_ = d.corrected_state;
                forget();
                r["syndrome"] = d.measured_syndrome.value;
                r["correction"] = d.applied_correction;
                r["rule"] = std::string(rule_name(rule));
                r["narration"] = "Syndrome " + std::to_string(d.measured_syndrome.value) + ", corrected " +
                                 detail::signed_int(d.applied_correction) + " (" + std::string(rule_name(rule)) + " rule).";
                break;
            }
            case CodeKind::Planar: {
                auto d = decode_planar(std::get<PlanarState>(state_), *config_.planar, rule);
                state_ = d.corrected;
                forget();
                r["correction_v"] = d.correction_v;
                r["correction_h"] = d.correction_h;
                r["rule"] = std::string(rule_name(rule));
                r["narration"] = "Corrected vertical " + detail::signed_int(d.correction_v) + " and horizontal " +
                                 detail::signed_int(d.correction_h) + ".";
                break;
            }
            case CodeKind::Gkp: {
                auto [corrected, out] = decode_gkp(std::get<GkpState>(state_), *config_.gkp);
                state_ = corrected;
                forget();
                r["correction_v"] = -out.residual_v;
                r["correction_h"] = -out.residual_h;
                r["narration"] = "Shifted by (" + format_real(-out.residual_v) + ", " + format_real(-out.residual_h) +
                                 ") onto the nearest lattice point.";
                break;
            }
        }
        return r;
    }

    Json measure_logical_action() {
        Json r;
        int bit = 0;
        const std::optional<int> previous = last_logical_;
        switch (config_.kind) {
            case CodeKind::Ladder: {
                auto [b, post] = measure_logical_or_invalid(std::get<LadderState>(state_));
                bit = b;
                state_ = std::move(post);
                forget();
                known_levels_ = std::get<LadderState>(state_).support();
                break;
            }
            case CodeKind::Planar: {
                auto &s = std::get<PlanarState>(state_);
                const int kv = config_.planar->spacing_v();
                const int kh = config_.planar->spacing_h();
                if (floor_mod(s.v_shift, kv) != 0 || floor_mod(s.h_shift, kh) != 0) {
                    throw Error(ErrorCode::InvalidAction, "logical measurement requires a state in the code space");
                }
                LogicalAction frame = make_action((s.v_shift / kv) % 2 != 0, (s.h_shift / kh) % 2 != 0);
                bit = collapse(s.logical, frame);
                break;
            }
            case CodeKind::Gkp: {
                auto &s = std::get<GkpState>(state_);
                auto v = centered_divmod(s.delta_v, config_.gkp->lambda_v());
                auto h = centered_divmod(s.delta_h, config_.gkp->lambda_h());
                if (std::abs(v.residual) > kAmplitudeTolerance || std::abs(h.residual) > kAmplitudeTolerance) {
                    throw Error(ErrorCode::InvalidAction, "logical measurement requires a state on the lattice");
                }
                bit = collapse(s.logical, make_action(v.multiple % 2 != 0, h.multiple % 2 != 0));
                break;
            }
        }
        if (config_.kind != CodeKind::Ladder) {
            forget();
            state_known_ = true;
        }
        bool same = previous.has_value() && *previous == bit;
        last_logical_ = bit;
        r["bit"] = bit;
        std::string text = "Measured logical " + std::to_string(bit) + ".";
        if (same) {
            text += " Same outcome as before: the measurement result sticks.";
        } else {
            text += " The superposition is gone; repeating the measurement will give " + std::to_string(bit) + " again.";
        }
        r["narration"] = text;
        return r;
    }

    std::pair<int, LadderState> measure_logical_or_invalid(const LadderState &s) {
        try {
            return measure_logical(s, rng_);
        } catch (const Error &e) {
            if (e.code() == ErrorCode::NotInCodeSpace) {
                throw Error(ErrorCode::InvalidAction, "logical measurement requires a state in the code space");
            }
            throw;
        }
    }

    /// Born-rule collapse of logical content seen through the frame action.
    int collapse(LogicalAmplitudes &logical, LogicalAction frame) {
        LogicalAmplitudes effective = apply_action(logical, frame);
        int bit = rng_.uniform() <= std::norm(effective.alpha()) ? 0 : 1;
        LogicalAmplitudes collapsed = bit == 0 ? LogicalAmplitudes::zero() : LogicalAmplitudes::one();
        logical = apply_action(collapsed, frame);
        return bit;
    }

    Json reset_action() {
        prepare();
        return Json{{"narration", "Reset to the reference codeword."}};
    }

    Json summary() const {
        Json j{{"code", config_.raw}, {"events", log_.size()}};
        j["last_syndrome"] = last_syndrome_ ? Json(*last_syndrome_) : Json(nullptr);
        j["last_logical"] = last_logical_ ? Json(*last_logical_) : Json(nullptr);
        return j;
    }

    Json envelope(const std::string &action, Json payload) const {
        Json e{{"protocol_version", kProtocolVersion}, {"session_id", id_}, {"action", action}, {"payload", std::move(payload)}};
        e["diagram"] = diagram_to_json(learner_diagram());
        if (config_.teacher_mode) {
            e["teacher_view"] = teacher_view();
        }
        return e;
    }

    static int64_t payload_int(const Json &p, const char *key, std::optional<int64_t> fallback = std::nullopt) {
        if (!p.is_object() || !p.contains(key)) {
            if (fallback) return *fallback;
            throw Error(ErrorCode::InvalidAction, std::string("payload needs integer '") + key + "'");
        }
        const auto &v = p.at(key);
        if (!v.is_number_integer()) throw Error(ErrorCode::InvalidAction, std::string("'") + key + "' must be an integer");
        int64_t x = v.get<int64_t>();
        if (x < -kMaxShift || x > kMaxShift) throw Error(ErrorCode::OutOfRangeShift, std::string("'") + key + "' too large");
        return x;
    }

    static double payload_real(const Json &p, const char *key) {
        if (!p.is_object() || !p.contains(key)) return 0.0;
        const auto &v = p.at(key);
        if (!v.is_number()) throw Error(ErrorCode::InvalidAction, std::string("'") + key + "' must be a number");
        double x = v.get<double>();
        if (!std::isfinite(x) || std::abs(x) > static_cast<double>(kMaxShift)) {
            throw Error(ErrorCode::OutOfRangeShift, std::string("'") + key + "' out of range");
        }
        return x;
    }

    static constexpr int64_t kMaxShift = 1000000;

    std::string id_;
    SessionConfig config_;
    RandomStream rng_;
    std::variant<LadderState, PlanarState, GkpState> state_ = PlanarState{};
    std::vector<SessionEvent> log_;
    // Learner knowledge.
    bool state_known_ = true;
    std::vector<int> known_levels_;
    std::vector<Annotation> notes_;
    std::optional<int> last_syndrome_;
    int last_syndrome_h_ = 0;
    std::optional<int> last_logical_;
};

inline Json error_envelope(const std::optional<std::string> &session_id, const std::string &action, ErrorCode code,
                           const std::string &message) {
    return Json{{"protocol_version", kProtocolVersion},
                {"session_id", session_id ? Json(*session_id) : Json(nullptr)},
                {"action", action},
                {"error", Json{{"code", error_code_name(code)}, {"message", message}}}};
}

/// HTTP status for an envelope: 200 for results, 4xx for protocol errors.
inline int http_status(const Json &envelope) {
    if (!envelope.contains("error")) return 200;
    const std::string code = envelope["error"]["code"].get<std::string>();
    if (code == "UnknownSession") return 404;
    if (code == "MalformedRequest") return 400;
    return 422;
}

/// Thread-safe session store. Actions on one session are serialized; distinct
/// sessions proceed concurrently.
class SessionService {
public:
    Json health() const { return Json{{"protocol_version", kProtocolVersion}, {"status", "ok"}}; }

    Json create(const Json &config) {
        try {
            SessionConfig cfg = SessionConfig::from_json(config);
            auto slot = std::make_shared<Slot>();
            std::string id;
            {
                std::lock_guard<std::mutex> lock(mutex_);
                id = "s" + std::to_string(++next_id_);
            }
            slot->session.emplace(id, std::move(cfg));
            Json env;
            {
                std::lock_guard<std::mutex> lock(slot->mutex);
                env = slot->session->create_envelope();
            }
            std::lock_guard<std::mutex> lock(mutex_);
            sessions_.emplace(id, std::move(slot));
            return env;
        } catch (const Error &e) {
            return error_envelope(std::nullopt, "Create", e.code(), e.detail());
        }
    }

    Json step(const std::string &id, const std::string &action, const Json &payload) {
        auto slot = find(id);
        if (!slot) {
            return error_envelope(id, action, ErrorCode::UnknownSession, "no session '" + id + "'");
        }
        std::lock_guard<std::mutex> lock(slot->mutex);
        try {
            return slot->session->step(action, payload);
        } catch (const Error &e) {
            return error_envelope(id, action, e.code(), e.detail());
        }
    }

    Json state(const std::string &id) { return step(id, "GetState", Json::object()); }
    Json reset(const std::string &id) { return step(id, "Reset", Json::object()); }

    std::optional<std::vector<SessionEvent>> event_log(const std::string &id) {
        auto slot = find(id);
        if (!slot) return std::nullopt;
        std::lock_guard<std::mutex> lock(slot->mutex);
        return slot->session->event_log();
    }

    /// Endpoint dispatch on a raw request body: create, step, state, reset, health.
    Json handle(const std::string &endpoint, const std::string &body) {
        if (endpoint == "health") return health();
        Json req;
        try {
            req = body.empty() ? Json::object() : Json::parse(body);
        } catch (const nlohmann::json::parse_error &e) {
            return error_envelope(std::nullopt, endpoint, ErrorCode::MalformedRequest, std::string("invalid JSON: ") + e.what());
        }
        if (!req.is_object()) {
            return error_envelope(std::nullopt, endpoint, ErrorCode::MalformedRequest, "request body must be an object");
        }
        if (endpoint == "create") {
            return create(req.contains("config") ? req["config"] : req);
        }
        if (!req.contains("session_id") || !req["session_id"].is_string()) {
            return error_envelope(std::nullopt, endpoint, ErrorCode::MalformedRequest, "missing string 'session_id'");
        }
        const std::string id = req["session_id"].get<std::string>();
        if (endpoint == "state") return state(id);
        if (endpoint == "reset") return reset(id);
        if (endpoint == "step") {
            if (!req.contains("action") || !req["action"].is_string()) {
                return error_envelope(id, "step", ErrorCode::MalformedRequest, "missing string 'action'");
            }
            return step(id, req["action"].get<std::string>(), req.value("payload", Json::object()));
        }
        return error_envelope(std::nullopt, endpoint, ErrorCode::MalformedRequest, "unknown endpoint '" + endpoint + "'");
    }

private:
    struct Slot {
        std::mutex mutex;
        std::optional<Session> session;
    };

    std::shared_ptr<Slot> find(const std::string &id) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = sessions_.find(id);
        return it == sessions_.end() ? nullptr : it->second;
    }

    std::mutex mutex_;
    uint64_t next_id_ = 0;
    std::map<std::string, std::shared_ptr<Slot>> sessions_;
};

}  // namespace shiftsim
