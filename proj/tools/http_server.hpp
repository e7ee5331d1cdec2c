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

// HTTP transport for SessionService. POST bodies and responses are JSON
// envelopes; GET is accepted for health and state.

#include <httplib.h>

#include <string>

#include "shiftsim/session.hpp"

namespace shiftsim::http {

inline void reply(httplib::Response &res, const Json &envelope) {
    res.status = http_status(envelope);
    res.set_content(envelope.dump(), "application/json");
}

inline void install_routes(httplib::Server &server, SessionService &service) {
    server.Get("/health", [&](const httplib::Request &, httplib::Response &res) { reply(res, service.health()); });
    server.Get("/state", [&](const httplib::Request &req, httplib::Response &res) {
        if (!req.has_param("session_id")) {
            reply(res, error_envelope(std::nullopt, "state", ErrorCode::MalformedRequest, "missing session_id"));
            return;
        }
        reply(res, service.state(req.get_param_value("session_id")));
    });
    for (const char *endpoint : {"create", "step", "state", "reset", "health"}) {
        std::string name = endpoint;
        server.Post("/" + name, [&service, name](const httplib::Request &req, httplib::Response &res) {
            reply(res, service.handle(name, req.body));
        });
    }
}

}  // namespace shiftsim::http
