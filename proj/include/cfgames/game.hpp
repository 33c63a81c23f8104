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

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace cfgames {

enum class GameFamily { kPdLike, kRpsLike };

std::string to_string(GameFamily family);
GameFamily family_from_string(std::string_view text);

struct ActionId {
  int index = -1;
  std::string label;

  friend bool operator==(const ActionId&, const ActionId&) = default;
};

// {u1, u2} for one joint action. Payoffs are exact integers; every matrix in
// the built-in catalogue is integral, and expectations are computed in
// floating point downstream.
using PayoffCell = std::array<int, 2>;
using PayoffTable = std::vector<std::vector<PayoffCell>>;

// A finite two-player simultaneous game with a shared ordered action list.
// Immutable after construction; safe to share across concurrent match
// runners.
class NormalFormGame {
 public:
  NormalFormGame(std::string name, GameFamily family,
                 std::vector<std::string> actions, PayoffTable payoff,
                 std::optional<int> cooperative_action);

  const std::string& name() const { return name_; }
  GameFamily family() const { return family_; }
  int num_actions() const { return static_cast<int>(actions_.size()); }
  const std::vector<std::string>& action_labels() const { return actions_; }

  ActionId action(int index) const;
  std::optional<int> index_of(std::string_view label) const;

  PayoffCell payoff(int a, int b) const;
  // player 0 is the row player, player 1 the column player.
  int payoff_for(int player, int a, int b) const;

  std::optional<ActionId> cooperative_action() const;

  nlohmann::json to_json() const;
  static NormalFormGame from_json(const nlohmann::json& j);

  friend bool operator==(const NormalFormGame&, const NormalFormGame&) = default;

 private:
  std::string name_;
  GameFamily family_;
  std::vector<std::string> actions_;
  PayoffTable payoff_;
  std::optional<int> cooperative_action_;
};

// A counterfactual intervention: rename action labels in place (the payoff
// table keeps its positional layout, so the label previously associated with
// one strategic role moves to another), replace the payoff table, or both.
struct CounterfactualSpec {
  std::optional<std::map<std::string, std::string>> relabel;  // old -> new
  std::optional<PayoffTable> repay;
  std::optional<std::string> renamed;  // name for the derived game
};

NormalFormGame apply_counterfactual(const NormalFormGame& game,
                                    const CounterfactualSpec& spec);

// Canonical instantiations. PD-family games use labels C/D (S/H once
// relabeled); RPS-family games use Rock/Paper/Scissors, with the label
// counterfactual presented in the order Paper, Rock, Scissors so that
// Scissors beats Rock and Rock beats Paper.
NormalFormGame make_pd_default();
NormalFormGame make_pd_label_cf();
NormalFormGame make_pd_payoff_cf();
NormalFormGame make_pd_joint_cf();
NormalFormGame make_rps_default();
NormalFormGame make_rps_label_cf();
NormalFormGame make_rps_payoff_cf();
NormalFormGame make_rps_joint_cf();

std::vector<std::string> builtin_game_names();
std::optional<NormalFormGame> game_by_name(std::string_view name);

// T/R/P/S read off a 2x2 matrix: R = mutual first action, T = unilateral
// second action, P = mutual second action, S = unilateral first action.
struct PdOrderingReport {
  int temptation = 0;
  int reward = 0;
  int punishment = 0;
  int sucker = 0;
  bool pd_ordering = false;  // T > R > P > S
  bool sh_ordering = false;  // R > T >= P > S
};

PdOrderingReport check_pd_ordering(const NormalFormGame& game);

bool is_zero_sum(const NormalFormGame& game);
bool is_symmetric(const NormalFormGame& game);

}  // namespace cfgames
