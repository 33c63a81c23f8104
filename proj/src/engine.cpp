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

#include "cfgames/engine.hpp"

#include <stdexcept>

#include "cfgames/agent_registry.hpp"
#include "cfgames/rng.hpp"

namespace cfgames {

using nlohmann::json;

int MatchConfig::resolved_rounds() const {
  if (rounds > 0) return rounds;
  if (rounds < 0) throw std::invalid_argument("rounds must be >= 1");
  return game.family() == GameFamily::kPdLike ? 16 : 24;
}

int MatchConfig::resolved_repetitions() const {
  if (repetitions > 0) return repetitions;
  if (repetitions < 0) throw std::invalid_argument("repetitions must be >= 1");
  const bool sc = spec_uses_self_consistency(agent_a) || spec_uses_self_consistency(agent_b);
  return sc ? 2 : 5;
}

json MatchConfig::to_json() const {
  json j{{"game", game.to_json()},
         {"agent_a", agent_a.is_null() ? json::object() : agent_a},
         {"agent_b", agent_b.is_null() ? json::object() : agent_b},
         {"rounds", resolved_rounds()},
         {"repetitions", resolved_repetitions()},
         {"seed", seed}};
  j["discount"] = discount ? json(*discount) : json(nullptr);
  return j;
}

json MatchRecord::to_json() const {
  json round_list = json::array();
  for (const auto& r : rounds) {
    round_list.push_back(json{{"round", r.round},
                              {"action_a", r.action_a},
                              {"action_b", r.action_b},
                              {"payoff_a", r.payoff_a},
                              {"payoff_b", r.payoff_b},
                              {"tokens_a", r.tokens_a},
                              {"tokens_b", r.tokens_b},
                              {"invalid_a", r.invalid_a},
                              {"invalid_b", r.invalid_b},
                              {"fallback_a", r.fallback_a},
                              {"fallback_b", r.fallback_b}});
  }
  return json{{"schema", kSchemaVersion},
              {"config", config},
              {"rounds", std::move(round_list)},
              {"totals", json{{"a", total_a}, {"b", total_b}}},
              {"complete", complete},
              {"error", error}};
}

std::string MatchRecord::to_jsonl() const { return to_json().dump(); }

MatchRecord MatchRecord::from_json(const json& j) {
  if (j.at("schema").get<int>() != kSchemaVersion) {
    throw std::invalid_argument("unsupported match record schema version");
  }
  MatchRecord record;
  record.config = j.at("config");
  for (const auto& r : j.at("rounds")) {
    RoundEntry entry;
    entry.round = r.at("round").get<int>();
    entry.action_a = r.at("action_a").get<int>();
    entry.action_b = r.at("action_b").get<int>();
    entry.payoff_a = r.at("payoff_a").get<int>();
    entry.payoff_b = r.at("payoff_b").get<int>();
    entry.tokens_a = r.at("tokens_a").get<long long>();
    entry.tokens_b = r.at("tokens_b").get<long long>();
    entry.invalid_a = r.at("invalid_a").get<int>();
    entry.invalid_b = r.at("invalid_b").get<int>();
    entry.fallback_a = r.at("fallback_a").get<bool>();
    entry.fallback_b = r.at("fallback_b").get<bool>();
    record.rounds.push_back(entry);
  }
  record.total_a = j.at("totals").at("a").get<long long>();
  record.total_b = j.at("totals").at("b").get<long long>();
  record.complete = j.at("complete").get<bool>();
  record.error = j.value("error", "");
  return record;
}

MatchRecord run_match(const MatchConfig& config, Agent& agent_a, Agent& agent_b) {
  const int rounds = config.resolved_rounds();
  MatchRecord record;
  record.config = config.to_json();

  // Independent per-agent streams, so one agent's sampling cannot perturb
  // the other's under substitution.
  RngStream rng_a(derive_seed(config.seed, "agent_a"));
  RngStream rng_b(derive_seed(config.seed, "agent_b"));

  History history_a, history_b;
  history_a.reserve(static_cast<size_t>(rounds));
  history_b.reserve(static_cast<size_t>(rounds));

  for (int t = 1; t <= rounds; ++t) {
    Move move_a, move_b;
    try {
      move_a = agent_a.choose(config.game, t, history_a, rng_a);
      move_b = agent_b.choose(config.game, t, history_b, rng_b);
    } catch (const AgentUnavailableError& e) {
      record.complete = false;
      record.error = e.what();
      return record;
    }

    const int a = move_a.action.index;
    const int b = move_b.action.index;
    if (a < 0 || a >= config.game.num_actions() || b < 0 ||
        b >= config.game.num_actions()) {
      throw std::logic_error("agent returned an action outside the game");
    }
    const auto cell = config.game.payoff(a, b);

    RoundEntry entry;
    entry.round = t;
    entry.action_a = a;
    entry.action_b = b;
    entry.payoff_a = cell[0];
    entry.payoff_b = cell[1];
    entry.tokens_a = move_a.completion_tokens;
    entry.tokens_b = move_b.completion_tokens;
    entry.invalid_a = move_a.invalid_attempts;
    entry.invalid_b = move_b.invalid_attempts;
    entry.fallback_a = move_a.fallback;
    entry.fallback_b = move_b.fallback;
    record.rounds.push_back(entry);
    record.total_a += cell[0];
    record.total_b += cell[1];

    // Both players observe the full round outcome before the next round.
    history_a.push_back({a, b, cell[0], cell[1]});
    history_b.push_back({b, a, cell[1], cell[0]});
  }
  return record;
}

MatchRecord run_match(const MatchConfig& config) {
  const AgentPtr agent_a = make_agent(config.agent_a, config.game, "agent_a");
  const AgentPtr agent_b = make_agent(config.agent_b, config.game, "agent_b");
  return run_match(config, *agent_a, *agent_b);
}

std::vector<MatchRecord> run_repetitions(const MatchConfig& config) {
  const int repetitions = config.resolved_repetitions();
  std::vector<MatchRecord> records;
  records.reserve(static_cast<size_t>(repetitions));
  for (int rep = 0; rep < repetitions; ++rep) {
    MatchConfig sub = config;
    sub.seed = config.seed + static_cast<uint64_t>(rep);
    try {
      records.push_back(run_match(sub));
    } catch (const std::exception& e) {
      MatchRecord failed;
      failed.config = sub.to_json();
      failed.complete = false;
      failed.error = e.what();
      records.push_back(std::move(failed));
    }
  }
  return records;
}

}  // namespace cfgames
