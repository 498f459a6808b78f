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

#pragma once

namespace httplib {
class Server;
}

namespace lowrand {

class PlayService;

// Registers the /api routes on `server`:
//   GET  /api/games
//   POST /api/session
//   POST /api/session/{id}/move
//   GET  /api/session/{id}
void mount_play_api(httplib::Server& server, PlayService& service);

}  // namespace lowrand
