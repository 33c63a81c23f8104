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

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cfgames/equilibrium.hpp"
#include "cfgames/game.hpp"
#include "cfgames/rng.hpp"

namespace cfgames {

// Raised when an agent cannot produce a move at all (e.g. its transport is
// unreachable after the retry budget). The engine aborts the match and flags
// the partial record incomplete.
class AgentUnavailableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One completed round from an agent's own perspective.
struct HistoryEntry {
  int own_action = -1;
  int opp_action = -1;
  int own_payoff = 0;
  int opp_payoff = 0;
};

using History = std::vector<HistoryEntry>;

// A single decision plus its accounting. Scripted agents report zero tokens
// and zero invalid attempts; LLM-backed agents fill in the cost of every
// attempt and self-consistency sample behind the move.
struct Move {
  ActionId action;
  long long prompt_tokens = 0;
  long long completion_tokens = 0;
  int invalid_attempts = 0;
  bool fallback = false;  // retry budget exhausted, action drawn at random
};

// Behavioral contract: (game, round, history, randomness) -> action. `round`
// is 1-based and `history` holds exactly round-1 completed entries, so an
// agent can never observe the opponent's current-round move.
class Agent {
 public:
  virtual ~Agent() = default;
  virtual Move choose(const NormalFormGame& game, int round,
                      const History& history, RngStream& rng) = 0;
  virtual std::string describe() const = 0;
  virtual bool uses_self_consistency() const { return false; }
};

using AgentPtr = std::unique_ptr<Agent>;

// Single-round-equilibrium player: the strictly dominant action for PD-family
// games, or i.i.d. draws from the symmetric mixed equilibrium for RPS-family
// games. PD-family games without a strictly dominant action (the SH payoff
// structure) require an explicit equilibrium_override, otherwise construction
// fails.
AgentPtr make_srep_agent(const NormalFormGame& game,
                         std::optional<int> equilibrium_override = std::nullopt);

// Cyclic pattern player: round t plays cycle[(t-1) mod cycle_length].
AgentPtr make_pattern_agent(const NormalFormGame& game, std::vector<int> cycle);

// PD-family: best response to the opponent's most frequent action so far;
// round 1 plays the best response to the uniform prior. Frequency and
// best-response ties break to the lowest action index.
AgentPtr make_most_frequent_exploiter_pd(const NormalFormGame& game);

// PD-family reactive player: the cooperative action in round 1, then the best
// response to the opponent's previous action.
AgentPtr make_tft_best_response_pd(const NormalFormGame& game);

// RPS-family: counters the opponent's most frequent action; round 1 is
// uniform random. The "beats" relation is read from the payoff table, never
// from the labels, so counterfactual variants are handled automatically.
AgentPtr make_adaptive_counter_rps(const NormalFormGame& game);

// RPS-family reactive player: uniform random in round 1, then the
// table-derived counter of the opponent's previous action.
AgentPtr make_tft_counter_rps(const NormalFormGame& game);

// The action c maximizing u1(c, target) among those with u1(c, target) > 0;
// ties break to the lowest index. Used by the RPS counter players.
int counter_action(const NormalFormGame& game, int target);

}  // namespace cfgames
