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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cfgames/agents.hpp"
#include "cfgames/game.hpp"
#include "cfgames/llm/transport.hpp"

namespace cfgames::llm {

enum class PromptMode { kZeroShot, kChainOfThought, kSoloPerformance };

std::string to_string(PromptMode mode);      // "zs", "cot", "spp"
PromptMode prompt_mode_from_string(std::string_view text);

class TemplateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Replaces every {placeholder} in the template from the bindings map. A
// placeholder without a binding raises TemplateError.
std::string fill_placeholders(const std::string& text,
                              const std::map<std::string, std::string>& bindings);

// The game-description system prompt with its payoff placeholders unfilled:
// {a}/{b}(/{c}) for the action labels, {aa},{ab},{ba},{bb} for the PD cells,
// {ac},{ba},{cb} for the three RPS win magnitudes.
std::string game_description_template(GameFamily family);

// System prompt for a concrete game: the family template with every
// placeholder bound from the game's labels and payoff table.
std::string render_game_description(const NormalFormGame& game);

std::string render_history(const NormalFormGame& game, const History& history);

// Full message sequence for one decision: system = game description, user =
// prompting-mode wrapper with rendered history and available actions. The
// optional hint is delivered as an extra `[hint]` user message; no built-in
// experiment sends one.
std::vector<ChatMessage> render_prompt(const NormalFormGame& game, PromptMode mode,
                                       const History& history,
                                       const std::optional<std::string>& hint = std::nullopt);

// Follow-up user message asking for a resubmission after an invalid reply.
std::string retry_instruction(const NormalFormGame& game);

}  // namespace cfgames::llm
