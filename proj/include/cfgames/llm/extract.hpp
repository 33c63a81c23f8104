// Copyright 2026 The cfgames Authors
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

#include <optional>
#include <string_view>

#include "cfgames/game.hpp"

namespace cfgames::llm {

enum class RejectReason { kNoAction, kAmbiguous, kFormat };

std::string to_string(RejectReason reason);

struct Extraction {
  std::optional<int> action;            // index into the game's action list
  std::optional<RejectReason> rejection;

  bool ok() const { return action.has_value(); }
};

// Case-insensitive scan for the game's action labels as standalone tokens
// (maximal alphanumeric runs). All occurrences naming one label yield that
// action; no occurrence rejects with no-action; several distinct labels
// reject with ambiguous unless last_token_rule is set, in which case the last
// occurrence wins. Empty or whitespace-only text rejects with format.
Extraction extract_action(std::string_view raw, const NormalFormGame& game,
                          bool last_token_rule = false);

}  // namespace cfgames::llm
