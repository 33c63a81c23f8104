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

#include "cfgames/agents.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cfgames {

namespace {

void require_family(const NormalFormGame& game, GameFamily family,
                    const std::string& agent) {
  if (game.family() != family) {
    throw std::invalid_argument(agent + " requires a " + to_string(family) + " game");
  }
}

// Best response to a point mass on `target`, lowest index on ties.
int best_response_to_action(const NormalFormGame& game, int target) {
  int best = 0;
  for (int a = 1; a < game.num_actions(); ++a) {
    if (game.payoff_for(0, a, target) > game.payoff_for(0, best, target)) best = a;
  }
  return best;
}

int most_frequent_action(const NormalFormGame& game, const History& history) {
  std::vector<int> counts(static_cast<size_t>(game.num_actions()), 0);
  for (const auto& entry : history) counts[static_cast<size_t>(entry.opp_action)]++;
  int best = 0;
  for (int a = 1; a < game.num_actions(); ++a) {
    if (counts[static_cast<size_t>(a)] > counts[static_cast<size_t>(best)]) best = a;
  }
  return best;
}

// Strictly dominant action, if any: better than every alternative against
// every opponent action.
std::optional<int> dominant_action(const NormalFormGame& game) {
  const int n = game.num_actions();
  for (int candidate = 0; candidate < n; ++candidate) {
    bool dominant = true;
    for (int other = 0; other < n && dominant; ++other) {
      if (other == candidate) continue;
      for (int opp = 0; opp < n && dominant; ++opp) {
        if (game.payoff_for(0, candidate, opp) <= game.payoff_for(0, other, opp)) {
          dominant = false;
        }
      }
    }
    if (dominant) return candidate;
  }
  return std::nullopt;
}

class SrepAgent : public Agent {
 public:
  SrepAgent(const NormalFormGame& game, std::optional<int> override_action) {
    if (game.family() == GameFamily::kPdLike) {
      auto dominant = dominant_action(game);
      if (!dominant) {
        if (!override_action) {
          throw std::invalid_argument(
              "srep: game '" + game.name() +
              "' has no strictly dominant action; pass an explicit "
              "equilibrium-selection override");
        }
        dominant = override_action;
      }
      fixed_action_ = *dominant;
    } else {
      mixed_ = zero_sum_mixed_nash(game).s1;
    }
  }

  Move choose(const NormalFormGame& game, int /*round*/, const History& /*history*/,
              RngStream& rng) override {
    if (fixed_action_) return Move{game.action(*fixed_action_)};
    return Move{game.action(rng.sample(mixed_.probs))};
  }

  std::string describe() const override { return "srep"; }

 private:
  std::optional<int> fixed_action_;
  MixedStrategy mixed_;
};

class PatternAgent : public Agent {
 public:
  PatternAgent(const NormalFormGame& game, std::vector<int> cycle)
      : cycle_(std::move(cycle)) {
    if (cycle_.empty()) throw std::invalid_argument("pattern agent: cycle must be non-empty");
    for (int a : cycle_) {
      if (a < 0 || a >= game.num_actions()) {
        throw std::invalid_argument("pattern agent: cycle action out of range");
      }
    }
    labels_.reserve(cycle_.size());
    for (int a : cycle_) labels_.push_back(game.action(a).label);
  }

  Move choose(const NormalFormGame& game, int round, const History& /*history*/,
              RngStream& /*rng*/) override {
    const size_t slot = static_cast<size_t>(round - 1) % cycle_.size();
    return Move{game.action(cycle_[slot])};
  }

  std::string describe() const override {
    std::ostringstream out;
    out << "pp[";
    for (size_t i = 0; i < labels_.size(); ++i) out << (i ? "," : "") << labels_[i];
    out << "]";
    return out.str();
  }

 private:
  std::vector<int> cycle_;
  std::vector<std::string> labels_;
};

class MostFrequentExploiter : public Agent {
 public:
  explicit MostFrequentExploiter(const NormalFormGame& game) {
    require_family(game, GameFamily::kPdLike, "mf");
  }

  Move choose(const NormalFormGame& game, int /*round*/, const History& history,
              RngStream& /*rng*/) override {
    if (history.empty()) {
      const auto responses =
          best_responses(game, 0, MixedStrategy::uniform(game.num_actions()));
      return Move{responses.front()};
    }
    const int target = most_frequent_action(game, history);
    return Move{game.action(best_response_to_action(game, target))};
  }

  std::string describe() const override { return "mf"; }
};

class TftBestResponsePd : public Agent {
 public:
  explicit TftBestResponsePd(const NormalFormGame& game) {
    require_family(game, GameFamily::kPdLike, "tft");
  }

  Move choose(const NormalFormGame& game, int /*round*/, const History& history,
              RngStream& /*rng*/) override {
    if (history.empty()) return Move{*game.cooperative_action()};
    return Move{game.action(best_response_to_action(game, history.back().opp_action))};
  }

  std::string describe() const override { return "tft"; }
};

class AdaptiveCounterRps : public Agent {
 public:
  explicit AdaptiveCounterRps(const NormalFormGame& game) {
    require_family(game, GameFamily::kRpsLike, "ap");
  }

  Move choose(const NormalFormGame& game, int /*round*/, const History& history,
              RngStream& rng) override {
    if (history.empty()) return Move{game.action(rng.uniform_index(game.num_actions()))};
    return Move{game.action(counter_action(game, most_frequent_action(game, history)))};
  }

  std::string describe() const override { return "ap"; }
};

class TftCounterRps : public Agent {
 public:
  explicit TftCounterRps(const NormalFormGame& game) {
    require_family(game, GameFamily::kRpsLike, "tft");
  }

  Move choose(const NormalFormGame& game, int /*round*/, const History& history,
              RngStream& rng) override {
    if (history.empty()) return Move{game.action(rng.uniform_index(game.num_actions()))};
    return Move{game.action(counter_action(game, history.back().opp_action))};
  }

  std::string describe() const override { return "tft"; }
};

}  // namespace

int counter_action(const NormalFormGame& game, int target) {
  int best = -1;
  for (int c = 0; c < game.num_actions(); ++c) {
    if (game.payoff_for(0, c, target) <= 0) continue;
    if (best == -1 || game.payoff_for(0, c, target) > game.payoff_for(0, best, target)) {
      best = c;
    }
  }
  if (best == -1) {
    throw std::invalid_argument("no action beats '" + game.action(target).label +
                                "' in game " + game.name());
  }
  return best;
}

AgentPtr make_srep_agent(const NormalFormGame& game,
                         std::optional<int> equilibrium_override) {
  return std::make_unique<SrepAgent>(game, equilibrium_override);
}

AgentPtr make_pattern_agent(const NormalFormGame& game, std::vector<int> cycle) {
  return std::make_unique<PatternAgent>(game, std::move(cycle));
}

AgentPtr make_most_frequent_exploiter_pd(const NormalFormGame& game) {
  return std::make_unique<MostFrequentExploiter>(game);
}

AgentPtr make_tft_best_response_pd(const NormalFormGame& game) {
  return std::make_unique<TftBestResponsePd>(game);
}

AgentPtr make_adaptive_counter_rps(const NormalFormGame& game) {
  return std::make_unique<AdaptiveCounterRps>(game);
}

AgentPtr make_tft_counter_rps(const NormalFormGame& game) {
  return std::make_unique<TftCounterRps>(game);
}

}  // namespace cfgames
