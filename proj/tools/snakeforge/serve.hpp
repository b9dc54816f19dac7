// Copyright 2026 The Snakeforge Authors
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


#ifndef SNAKEFORGE_TOOLS_SERVE_HPP_
#define SNAKEFORGE_TOOLS_SERVE_HPP_

#include <string>

#include "snakeforge/snakeforge.h"

namespace sfcli
{

struct ServeOptions
{
  std::string host = "127.0.0.1";
  unsigned short port = 8765;
  double tick_rate_hz = 20.0;
  std::string record_path;  // empty: no log
  long max_ticks = 0;       // per session; 0 runs until the client leaves
  bool once = false;        // exit after the first session ends
};

// Websocket service: one simulation session per connection. Blocks until
// interrupted (or, with once, until the first session ends).
int serve(const sf_assembly * assembly, const ServeOptions & options);

}  // namespace sfcli

#endif  // SNAKEFORGE_TOOLS_SERVE_HPP_
