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

#include <csignal>
#include <iostream>
#include <pthread.h>
#include <thread>

#include "cli.hpp"
#include "http_server.hpp"

namespace {

/// Blocks until SIGINT/SIGTERM, then stops the server. Signals are masked in
/// every thread and collected with sigwait, so no handler runs async code.
int serve(const std::string &host, int port, std::ostream &out) {
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    shiftsim::SessionService service;
    httplib::Server server;
    shiftsim::http::install_routes(server, service);
    if (!server.bind_to_port(host, port)) {
        std::cerr << "error: cannot bind " << host << ":" << port << '\n';
        return shiftsim::cli::kExitValidation;
    }
    std::thread waiter([&] {
        int sig = 0;
        sigwait(&signals, &sig);
        server.stop();
    });
    out << "serving " << shiftsim::kProtocolVersion << " on http://" << host << ":" << port << std::endl;
    server.listen_after_bind();
    // Wake the waiter if the server stopped for another reason.
    pthread_kill(waiter.native_handle(), SIGTERM);
    waiter.join();
    out << "shut down" << std::endl;
    return shiftsim::cli::kExitOk;
}

}  // namespace

int main(int argc, char **argv) { return shiftsim::cli::run(argc, argv, std::cout, std::cerr, serve); }
