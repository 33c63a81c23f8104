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

#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cfgames/agents.hpp"

namespace cfgames {

// A configuration problem; `what()` carries the JSON path of the offending
// key so errors are actionable.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Builds an agent from a JSON spec, e.g. {"type": "pp", "cycle": ["D", "C"]}
// or {"type": "llm", "mode": "zs", "transport": {"kind": "mock", "fixture":
// "responses.jsonl"}}. `path` prefixes error messages. Relative fixture paths
// are taken as-is; callers resolve them against the config file beforehand.
AgentPtr make_agent(const nlohmann::json& spec, const NormalFormGame& game,
                    const std::string& path = "agent");

// Structural validation without instantiating transports; throws ConfigError.
void validate_agent_spec(const nlohmann::json& spec, const std::string& path);

bool spec_uses_self_consistency(const nlohmann::json& spec);

// Display name for tables: "srep", "pp[D,C]", "mf", "tft", "ap", or the LLM
// model name.
std::string agent_display_name(const nlohmann::json& spec);

// Prompting mode column for tables: "zs"/"cot"/"spp", "sc-" prefixed when
// self-consistency is enabled, "-" for scripted agents.
std::string agent_prompt_mode(const nlohmann::json& spec);

// (name, synopsis) pairs for the CLI listing.
std::vector<std::pair<std::string, std::string>> agent_registry_help();

}  // namespace cfgames
