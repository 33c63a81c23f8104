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

#include "cfgames/agent_registry.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "cfgames/llm/llm_agent.hpp"
#include "cfgames/llm/transport.hpp"

namespace cfgames {

namespace {

using nlohmann::json;

const std::vector<std::string> kScriptedTypes{"srep", "pp", "mf", "tft", "ap"};

std::string known_types() {
  std::ostringstream out;
  for (const auto& t : kScriptedTypes) out << t << ", ";
  out << "llm";
  return out.str();
}

std::string require_type(const json& spec, const std::string& path) {
  if (!spec.is_object()) {
    throw ConfigError(path + ": agent spec must be an object");
  }
  if (!spec.contains("type") || !spec["type"].is_string()) {
    throw ConfigError(path + ".type: missing agent type (known: " + known_types() + ")");
  }
  return spec["type"].get<std::string>();
}

std::vector<int> resolve_cycle(const json& spec, const NormalFormGame& game,
                               const std::string& path) {
  if (!spec.contains("cycle")) {
    // Default cycles: second action then first for two-action games (the
    // D,C pattern), the full action list in order otherwise.
    if (game.family() == GameFamily::kPdLike) return {1, 0};
    std::vector<int> cycle(static_cast<size_t>(game.num_actions()));
    for (int a = 0; a < game.num_actions(); ++a) cycle[static_cast<size_t>(a)] = a;
    return cycle;
  }
  if (!spec["cycle"].is_array() || spec["cycle"].empty()) {
    throw ConfigError(path + ".cycle: must be a non-empty array of action labels");
  }
  std::vector<int> cycle;
  for (size_t i = 0; i < spec["cycle"].size(); ++i) {
    const auto& item = spec["cycle"][i];
    if (!item.is_string()) {
      throw ConfigError(path + ".cycle[" + std::to_string(i) + "]: must be a label");
    }
    const auto index = game.index_of(item.get<std::string>());
    if (!index) {
      throw ConfigError(path + ".cycle[" + std::to_string(i) + "]: unknown action '" +
                        item.get<std::string>() + "' in game " + game.name());
    }
    cycle.push_back(*index);
  }
  return cycle;
}

std::shared_ptr<llm::Transport> build_transport(const json& spec, const std::string& path) {
  if (!spec.contains("transport")) {
    throw ConfigError(path + ".transport: llm agents need a transport block");
  }
  const json& t = spec["transport"];
  const std::string kind = t.value("kind", "");
  if (kind == "mock") {
    if (!t.contains("fixture")) {
      throw ConfigError(path + ".transport.fixture: mock transport needs a fixture path");
    }
    // One fixture reader per match, so every match replays the script from
    // the top and reproduces bit-identically.
    return std::make_shared<llm::MockTransport>(
        std::filesystem::path(t["fixture"].get<std::string>()));
  }
  if (kind == "http") {
    llm::HttpTransportOptions options;
    if (!t.contains("base_url")) {
      throw ConfigError(path + ".transport.base_url: http transport needs a base_url");
    }
    options.base_url = t["base_url"].get<std::string>();
    options.path = t.value("path", options.path);
    options.api_key_env = t.value("api_key_env", options.api_key_env);
    options.auth_header = t.value("auth_header", options.auth_header);
    options.auth_prefix = t.value("auth_prefix", options.auth_prefix);
    options.max_attempts = t.value("max_attempts", options.max_attempts);
    options.retry_backoff_ms = t.value("retry_backoff_ms", options.retry_backoff_ms);
    options.min_request_interval_ms =
        t.value("min_request_interval_ms", options.min_request_interval_ms);
    options.max_in_flight = t.value("max_in_flight", options.max_in_flight);
    options.timeout_s = t.value("timeout_s", options.timeout_s);

    // HTTP transports are shared per endpoint spec so the in-flight cap and
    // rate limit hold across concurrent matches.
    static std::mutex cache_mutex;
    static std::map<std::string, std::shared_ptr<llm::Transport>> cache;
    const std::string key = t.dump();
    std::lock_guard lock(cache_mutex);
    auto& entry = cache[key];
    if (!entry) entry = std::make_shared<llm::HttpTransport>(std::move(options));
    return entry;
  }
  throw ConfigError(path + ".transport.kind: must be 'mock' or 'http', got '" + kind + "'");
}

llm::LlmPlayerConfig parse_llm_config(const json& spec, const NormalFormGame& game,
                                      const std::string& path) {
  llm::LlmPlayerConfig config;
  config.model = spec.value("model", config.model);
  if (spec.contains("mode")) {
    try {
      config.mode = llm::prompt_mode_from_string(spec["mode"].get<std::string>());
    } catch (const std::exception&) {
      throw ConfigError(path + ".mode: must be one of zs, cot, spp");
    }
  }
  config.temperature = spec.value("temperature", config.temperature);
  config.top_p = spec.value("top_p", config.top_p);
  config.max_tokens = spec.value("max_tokens", config.max_tokens);
  config.max_retries = spec.value("max_retries", config.max_retries);
  config.last_token_rule = spec.value("last_token_rule", config.last_token_rule);
  if (spec.contains("self_consistency")) {
    const json& sc = spec["self_consistency"];
    if (sc.is_boolean()) {
      if (sc.get<bool>()) {
        // Family defaults: 3 samples for two actions, 5 for three.
        config.self_consistency = game.num_actions() == 2 ? 3 : 5;
      }
    } else if (sc.is_number_integer() && sc.get<int>() >= 1) {
      config.self_consistency = sc.get<int>();
    } else {
      throw ConfigError(path + ".self_consistency: must be true or an integer >= 1");
    }
  }
  return config;
}

}  // namespace

void validate_agent_spec(const json& spec, const std::string& path) {
  const std::string type = require_type(spec, path);
  if (type == "srep" || type == "mf" || type == "tft" || type == "ap") return;
  if (type == "pp") {
    if (spec.contains("cycle") &&
        (!spec["cycle"].is_array() || spec["cycle"].empty())) {
      throw ConfigError(path + ".cycle: must be a non-empty array of action labels");
    }
    return;
  }
  if (type == "llm") {
    if (!spec.contains("transport")) {
      throw ConfigError(path + ".transport: llm agents need a transport block");
    }
    const std::string kind = spec["transport"].value("kind", "");
    if (kind != "mock" && kind != "http") {
      throw ConfigError(path + ".transport.kind: must be 'mock' or 'http', got '" +
                        kind + "'");
    }
    if (kind == "mock" && !spec["transport"].contains("fixture")) {
      throw ConfigError(path + ".transport.fixture: mock transport needs a fixture path");
    }
    if (kind == "http" && !spec["transport"].contains("base_url")) {
      throw ConfigError(path + ".transport.base_url: http transport needs a base_url");
    }
    if (spec.contains("mode")) {
      const std::string mode = spec["mode"].get<std::string>();
      if (mode != "zs" && mode != "cot" && mode != "spp") {
        throw ConfigError(path + ".mode: must be one of zs, cot, spp");
      }
    }
    return;
  }
  throw ConfigError(path + ".type: unknown agent type '" + type +
                    "' (known: " + known_types() + ")");
}

AgentPtr make_agent(const json& spec, const NormalFormGame& game,
                    const std::string& path) {
  const std::string type = require_type(spec, path);
  try {
    if (type == "srep") {
      std::optional<int> override_action;
      if (spec.contains("override")) {
        const auto index = game.index_of(spec["override"].get<std::string>());
        if (!index) {
          throw ConfigError(path + ".override: unknown action '" +
                            spec["override"].get<std::string>() + "'");
        }
        override_action = index;
      }
      return make_srep_agent(game, override_action);
    }
    if (type == "pp") return make_pattern_agent(game, resolve_cycle(spec, game, path));
    if (type == "mf") return make_most_frequent_exploiter_pd(game);
    if (type == "tft") {
      return game.family() == GameFamily::kPdLike ? make_tft_best_response_pd(game)
                                                  : make_tft_counter_rps(game);
    }
    if (type == "ap") return make_adaptive_counter_rps(game);
    if (type == "llm") {
      auto config = parse_llm_config(spec, game, path);
      const auto samples = config.self_consistency;
      AgentPtr agent = std::make_unique<llm::LlmAgent>(
          std::move(config), build_transport(spec, path));
      if (samples) agent = llm::make_self_consistent(std::move(agent), *samples);
      return agent;
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  throw ConfigError(path + ".type: unknown agent type '" + type +
                    "' (known: " + known_types() + ")");
}

bool spec_uses_self_consistency(const json& spec) {
  if (!spec.is_object() || spec.value("type", "") != "llm") return false;
  if (!spec.contains("self_consistency")) return false;
  const json& sc = spec["self_consistency"];
  return (sc.is_boolean() && sc.get<bool>()) ||
         (sc.is_number_integer() && sc.get<int>() >= 1);
}

std::string agent_display_name(const json& spec) {
  const std::string type = spec.value("type", "?");
  if (type == "pp") {
    if (!spec.contains("cycle")) return "pp";
    std::ostringstream out;
    out << "pp[";
    for (size_t i = 0; i < spec["cycle"].size(); ++i) {
      out << (i ? "," : "") << spec["cycle"][i].get<std::string>();
    }
    out << "]";
    return out.str();
  }
  if (type == "llm") return spec.value("model", "llm");
  return type;
}

std::string agent_prompt_mode(const json& spec) {
  if (spec.value("type", "") != "llm") return "-";
  const std::string mode = spec.value("mode", "zs");
  return spec_uses_self_consistency(spec) ? "sc-" + mode : mode;
}

std::vector<std::pair<std::string, std::string>> agent_registry_help() {
  return {
      {"srep", "single-round equilibrium player; optional \"override\" label for "
               "games with two pure equilibria"},
      {"pp", "cyclic pattern player; \"cycle\" is a label list (default: second "
             "action then first for two-action games, the action list otherwise)"},
      {"mf", "best response to the opponent's most frequent action (two-action "
             "families)"},
      {"tft", "best response / counter to the opponent's previous action"},
      {"ap", "counters the opponent's most frequent action (three-action "
             "families)"},
      {"llm", "language-model player; needs \"transport\" ({kind: mock|http}), "
              "optional mode (zs|cot|spp), self_consistency, max_retries"},
  };
}

}  // namespace cfgames
