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

#include "shiftsim/session.hpp"

#include <gtest/gtest.h>

#include <thread>

using namespace shiftsim;

namespace {

Json ladder_config(uint64_t seed = 1) {
    return Json{{"code", "ladder"}, {"levels", 10}, {"spacing", 3}, {"boundary", "hard"},
                {"alpha", {1.0, 0.0}},  {"beta", {0.0, 0.0}}, {"seed", seed}};
}

std::string error_code(const Json &env) { return env.contains("error") ? env["error"]["code"].get<std::string>() : ""; }

std::vector<int> shaded(const Json &env) {
    std::vector<int> out;
    for (const auto &c : env["diagram"]["cells"]) {
        if (c["shaded"].get<bool>()) out.push_back(static_cast<int>(c["y"].get<double>()));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST(SessionService, health) {
    SessionService svc;
    Json h = svc.health();
    EXPECT_EQ(h["protocol_version"], "shiftsim/1");
    EXPECT_EQ(h["status"], "ok");
}

TEST(SessionService, ids_are_sequential) {
    SessionService svc;
    EXPECT_EQ(svc.create(ladder_config())["session_id"], "s1");
    EXPECT_EQ(svc.create(ladder_config())["session_id"], "s2");
}

TEST(SessionService, syndrome_lesson) {
    SessionService svc;
    Json created = svc.create(ladder_config());
    ASSERT_EQ(error_code(created), "");
    EXPECT_EQ(created["protocol_version"], "shiftsim/1");
    EXPECT_EQ(created["action"], "Create");
    EXPECT_EQ(shaded(created), std::vector<int>({0, 6}));
    std::string id = created["session_id"];

    Json inj = svc.step(id, "InjectShift", Json{{"amount", 2}});
    ASSERT_EQ(error_code(inj), "");
    EXPECT_EQ(inj["payload"]["amount"], 2);
    EXPECT_TRUE(shaded(inj).empty());

    Json syn = svc.step(id, "MeasureSyndrome", Json::object());
    ASSERT_EQ(error_code(syn), "");
    EXPECT_EQ(syn["payload"]["syndrome"], 2);
    EXPECT_EQ(syn["payload"]["candidates"], Json::array({2, 5, 8}));
    EXPECT_EQ(shaded(syn), std::vector<int>({2, 5, 8}));
    EXPECT_NE(syn["payload"]["narration"].get<std::string>().find("{2, 5, 8}"), std::string::npos);

    Json cands = svc.step(id, "CandidateErrors", Json::object());
    EXPECT_EQ(cands["payload"]["candidates"], Json::array({2, 5, 8}));

    Json dec = svc.step(id, "StepDecoder", Json::object());
    ASSERT_EQ(error_code(dec), "");
    EXPECT_EQ(dec["payload"]["correction"], 1);

    auto log = svc.event_log(id);
    ASSERT_TRUE(log.has_value());
    ASSERT_EQ(log->size(), 4u);
    EXPECT_EQ((*log)[0].action, "InjectShift");
    EXPECT_EQ((*log)[3].action, "StepDecoder");
}

TEST(SessionService, decoder_narration_after_unit_shift) {
    SessionService svc;
    std::string id = svc.create(ladder_config())["session_id"];
    svc.step(id, "InjectShift", Json{{"amount", 1}});
    Json dec = svc.step(id, "StepDecoder", Json::object());
    EXPECT_EQ(dec["payload"]["correction"], -1);
    EXPECT_NE(dec["payload"]["narration"].get<std::string>().find("corrected -1"), std::string::npos);
    Json cfg = ladder_config();
    cfg["teacher_mode"] = true;
    std::string tid = svc.create(cfg)["session_id"];
    svc.step(tid, "InjectShift", Json{{"amount", 1}});
    Json t = svc.step(tid, "StepDecoder", Json::object());
    EXPECT_TRUE(t["teacher_view"]["classification"]["codeword"].get<bool>());
    EXPECT_EQ(t["teacher_view"]["classification"]["logical"]["alpha"], Json::array({1.0, 0.0}));
}

TEST(SessionService, logical_measurement_sticks) {
    SessionService svc;
    for (uint64_t seed = 0; seed < 20; ++seed) {
        Json cfg = ladder_config(seed);
        cfg["alpha"] = {0.6, 0.0};
        cfg["beta"] = {0.8, 0.0};
        std::string id = svc.create(cfg)["session_id"];
        Json first = svc.step(id, "MeasureLogical", Json::object());
        Json second = svc.step(id, "MeasureLogical", Json::object());
        ASSERT_EQ(error_code(first), "");
        EXPECT_EQ(first["payload"]["bit"], second["payload"]["bit"]);
        EXPECT_NE(second["payload"]["narration"].get<std::string>().find("sticks"), std::string::npos);
    }
}

TEST(SessionService, learner_view_hides_state_until_measured) {
    SessionService svc;
    std::string id = svc.create(ladder_config())["session_id"];
    Json inj = svc.step(id, "InjectShift", Json{{"amount", 1}});
    EXPECT_FALSE(inj.contains("teacher_view"));
    EXPECT_TRUE(shaded(inj).empty());
}

TEST(SessionService, teacher_view_shows_amplitudes) {
    SessionService svc;
    Json cfg = ladder_config();
    cfg["teacher_mode"] = true;
    Json created = svc.create(cfg);
    std::string id = created["session_id"];
    Json inj = svc.step(id, "InjectShift", Json{{"amount", 1}});
    ASSERT_TRUE(inj.contains("teacher_view"));
    const auto &amps = inj["teacher_view"]["amplitudes"];
    ASSERT_EQ(amps.size(), 2u);
    EXPECT_EQ(amps[0]["level"], 1);
    EXPECT_EQ(amps[1]["level"], 7);
    EXPECT_FALSE(inj["teacher_view"]["classification"]["codeword"].get<bool>());
}

TEST(SessionService, replay_is_deterministic) {
    auto script = [] {
        SessionService svc;
        Json cfg = ladder_config(42);
        cfg["alpha"] = {0.6, 0.0};
        cfg["beta"] = {0.0, 0.8};
        cfg["boundary"] = "cyclic";
        cfg["levels"] = 12;
        std::string id = svc.create(cfg)["session_id"];
        std::string out;
        out += svc.step(id, "InjectShift", Json{{"amount", 2}}).dump();
        out += svc.step(id, "MeasureSyndrome", Json::object()).dump();
        out += svc.step(id, "StepDecoder", Json::object()).dump();
        out += svc.step(id, "MeasureLogical", Json::object()).dump();
        out += svc.reset(id).dump();
        out += svc.step(id, "MeasureLogical", Json::object()).dump();
        return out;
    };
    EXPECT_EQ(script(), script());
}

TEST(SessionService, reset_restores_reference) {
    SessionService svc;
    std::string id = svc.create(ladder_config())["session_id"];
    svc.step(id, "InjectShift", Json{{"amount", 1}});
    Json r = svc.reset(id);
    EXPECT_EQ(shaded(r), std::vector<int>({0, 6}));
    Json st = svc.state(id);
    EXPECT_EQ(st["action"], "GetState");
    EXPECT_EQ(st["payload"]["events"], 2);
}

TEST(SessionService, errors) {
    SessionService svc;
    Json unknown = svc.step("s99", "GetState", Json::object());
    EXPECT_EQ(error_code(unknown), "UnknownSession");
    EXPECT_EQ(http_status(unknown), 404);

    Json bad_geom = svc.create(Json{{"code", "ladder"}, {"levels", 10}, {"spacing", 3}, {"boundary", "cyclic"}});
    EXPECT_EQ(error_code(bad_geom), "InvalidGeometry");
    EXPECT_EQ(http_status(bad_geom), 422);

    std::string id = svc.create(ladder_config())["session_id"];
    EXPECT_EQ(error_code(svc.step(id, "Dance", Json::object())), "InvalidAction");
    EXPECT_EQ(error_code(svc.step(id, "InjectShift", Json{{"amount", -1}})), "OutOfRangeShift");
    EXPECT_EQ(error_code(svc.step(id, "InjectShift", Json::object())), "InvalidAction");
    // Failed actions leave the log untouched.
    EXPECT_TRUE(svc.event_log(id)->empty());

    svc.step(id, "InjectShift", Json{{"amount", 1}});
    EXPECT_EQ(error_code(svc.step(id, "MeasureLogical", Json::object())), "InvalidAction");

    Json malformed = svc.handle("step", "{not json");
    EXPECT_EQ(error_code(malformed), "MalformedRequest");
    EXPECT_EQ(http_status(malformed), 400);
    EXPECT_EQ(error_code(svc.handle("step", "{}")), "MalformedRequest");
}

TEST(SessionService, handle_dispatch) {
    SessionService svc;
    Json created = svc.handle("create", ladder_config().dump());
    std::string id = created["session_id"];
    Json step = svc.handle("step", Json{{"session_id", id}, {"action", "InjectShift"}, {"payload", {{"amount", 2}}}}.dump());
    EXPECT_EQ(step["payload"]["amount"], 2);
    EXPECT_EQ(svc.handle("state", Json{{"session_id", id}}.dump())["action"], "GetState");
    EXPECT_EQ(svc.handle("reset", Json{{"session_id", id}}.dump())["action"], "Reset");
    EXPECT_EQ(svc.handle("health", "")["status"], "ok");
}

TEST(SessionService, planar_and_gkp_sessions) {
    SessionService svc;
    std::string pid = svc.create(Json{{"code", "planar"}, {"levels_v", 12}, {"spacing_v", 3}, {"levels_h", 16},
                                      {"spacing_h", 4}, {"boundary", "cyclic"}})["session_id"];
    svc.step(pid, "InjectShift", Json{{"dv", 2}, {"dh", 1}});
    Json syn = svc.step(pid, "MeasureSyndrome", Json::object());
    EXPECT_EQ(syn["payload"]["syndrome_v"], 2);
    EXPECT_EQ(syn["payload"]["syndrome_h"], 1);
    Json dec = svc.step(pid, "StepDecoder", Json::object());
    EXPECT_EQ(dec["payload"]["correction_v"], 1);
    EXPECT_EQ(dec["payload"]["correction_h"], -1);

    std::string gid = svc.create(Json{{"code", "gkp"}})["session_id"];
    svc.step(gid, "InjectShift", Json{{"dv", 0.3}, {"dh", -0.2}});
    Json g = svc.step(gid, "StepDecoder", Json::object());
    EXPECT_DOUBLE_EQ(g["payload"]["correction_v"].get<double>(), -0.3);
    Json m1 = svc.step(gid, "MeasureLogical", Json::object());
    Json m2 = svc.step(gid, "MeasureLogical", Json::object());
    EXPECT_EQ(m1["payload"]["bit"], m2["payload"]["bit"]);
}

TEST(SessionService, concurrent_sessions) {
    SessionService svc;
    std::vector<std::thread> pool;
    std::vector<std::string> ids(8);
    for (int t = 0; t < 8; ++t) {
        pool.emplace_back([&, t] {
            std::string id = svc.create(ladder_config(t))["session_id"];
            for (int i = 0; i < 20; ++i) {
                svc.step(id, "InjectShift", Json{{"amount", 1}});
                svc.step(id, "StepDecoder", Json::object());
            }
            ids[t] = id;
        });
    }
    for (auto &th : pool) th.join();
    std::set<std::string> unique(ids.begin(), ids.end());
    EXPECT_EQ(unique.size(), 8u);
    for (const auto &id : ids) EXPECT_EQ(svc.event_log(id)->size(), 40u);
}
