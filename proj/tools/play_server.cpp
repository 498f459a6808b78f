// Copyright 2026 The lowrand Authors
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

#include <iostream>

#include <CLI11.hpp>
#include <httplib.h>

#include "lowrand/service/http.hpp"
#include "lowrand/service/play_service.hpp"

int main(int argc, char** argv) {
  CLI::App app{"HTTP play service for repeated games against the exploitation engines", "lowrand_play_server"};
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string journal;
  std::string static_dir;
  app.add_option("--host", host);
  app.add_option("--port", port);
  app.add_option("--journal", journal, "append-only JSON lines journal");
  app.add_option("--static", static_dir, "directory served at / (the UI build)");
  CLI11_PARSE(app, argc, argv);

  lowrand::ServiceConfig config;
  if (!journal.empty()) config.journal = journal;
  try {
    lowrand::PlayService service(config);
    httplib::Server server;
    lowrand::mount_play_api(server, service);
    if (!static_dir.empty() && !server.set_mount_point("/", static_dir)) {
      std::cerr << "cannot serve " << static_dir << '\n';
      return 1;
    }
    std::cerr << "listening on http://" << host << ':' << port << '\n';
    if (!server.listen(host, port)) {
      std::cerr << "cannot listen on " << host << ':' << port << '\n';
      return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  return 0;
}
