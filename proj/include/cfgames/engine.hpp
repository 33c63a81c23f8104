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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cfgames/agents.hpp"
#include "cfgames/game.hpp"

namespace cfgames {

struct MatchConfig {
  NormalFormGame game;
  nlohmann::json agent_a;  // registry specs; see agent_registry.hpp
  nlohmann::json agent_b;
  int rounds = 0;       // 0 -> family default: 16 for pd-like, 24 for rps-like
  int repetitions = 0;  // 0 -> 5, or 2 when either agent uses self-consistency
  uint64_t seed = 0;
  // Accepted for the discounted infinite-horizon formulation; the
  // fixed-horizon experiments never set it.
  std::optional<double> discount;

  int resolved_rounds() const;
  int resolved_repetitions() const;
  nlohmann::json to_json() const;
};

struct RoundEntry {
  int round = 0;  // 1-based
  int action_a = -1;
  int action_b = -1;
  int payoff_a = 0;
  int payoff_b = 0;
  long long tokens_a = 0;  // completion tokens over all attempts and samples
  long long tokens_b = 0;
  int invalid_a = 0;
  int invalid_b = 0;
  bool fallback_a = false;
  bool fallback_b = false;
};

// Serialized as one JSONL line per match, schema version 1. Identical
// MatchConfig (including seed) reproduces a byte-identical line.
struct MatchRecord {
  static constexpr int kSchemaVersion = 1;

  nlohmann::json config;  // provenance: game, agents, rounds, repetitions, seed
  std::vector<RoundEntry> rounds;
  long long total_a = 0;
  long long total_b = 0;
  bool complete = true;
  std::string error;

  nlohmann::json to_json() const;
  std::string to_jsonl() const;
  static MatchRecord from_json(const nlohmann::json& j);
};

// Plays one repeated match: each round both agents are queried with the
// history so far (never the opponent's current move), actions are resolved
// against the payoff table, and the full record is returned. If an agent
// becomes unavailable the partial record is flagged incomplete.
MatchRecord run_match(const MatchConfig& config, Agent& agent_a, Agent& agent_b);

// Same, constructing both agents from their registry specs.
MatchRecord run_match(const MatchConfig& config);

// `repetitions` independent matches with derived seeds seed+0 .. seed+(k-1).
// Per-repetition failures are captured in incomplete records rather than
// aborting the remaining repetitions.
std::vector<MatchRecord> run_repetitions(const MatchConfig& config);

}  // namespace cfgames
