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

#include "cfgames/game.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace cfgames {

namespace {

void validate_table(const PayoffTable& payoff, size_t n) {
  if (payoff.size() != n) {
    throw std::invalid_argument("payoff table must have one row per action");
  }
  for (const auto& row : payoff) {
    if (row.size() != n) {
      throw std::invalid_argument("payoff table must be total over all joint actions");
    }
  }
}

}  // namespace

std::string to_string(GameFamily family) {
  return family == GameFamily::kPdLike ? "pd-like" : "rps-like";
}

GameFamily family_from_string(std::string_view text) {
  if (text == "pd-like") return GameFamily::kPdLike;
  if (text == "rps-like") return GameFamily::kRpsLike;
  throw std::invalid_argument("unknown game family: " + std::string(text));
}

NormalFormGame::NormalFormGame(std::string name, GameFamily family,
                               std::vector<std::string> actions,
                               PayoffTable payoff,
                               std::optional<int> cooperative_action)
    : name_(std::move(name)),
      family_(family),
      actions_(std::move(actions)),
      payoff_(std::move(payoff)),
      cooperative_action_(cooperative_action) {
  if (actions_.empty()) throw std::invalid_argument("game needs at least one action");
  std::set<std::string> seen;
  for (const auto& label : actions_) {
    if (label.empty()) throw std::invalid_argument("action labels must be non-empty");
    if (!seen.insert(label).second) {
      throw std::invalid_argument("duplicate action label: " + label);
    }
  }
  validate_table(payoff_, actions_.size());
  if (family_ == GameFamily::kPdLike) {
    if (!cooperative_action_) {
      throw std::invalid_argument("pd-like games require a cooperative action");
    }
    if (*cooperative_action_ < 0 || *cooperative_action_ >= num_actions()) {
      throw std::invalid_argument("cooperative action out of range");
    }
  } else if (cooperative_action_) {
    throw std::invalid_argument("rps-like games have no cooperative action");
  }
}

ActionId NormalFormGame::action(int index) const {
  if (index < 0 || index >= num_actions()) {
    throw std::out_of_range("action index out of range for game " + name_);
  }
  return ActionId{index, actions_[static_cast<size_t>(index)]};
}

std::optional<int> NormalFormGame::index_of(std::string_view label) const {
  for (size_t i = 0; i < actions_.size(); ++i) {
    if (actions_[i] == label) return static_cast<int>(i);
  }
  return std::nullopt;
}

PayoffCell NormalFormGame::payoff(int a, int b) const {
  if (a < 0 || a >= num_actions() || b < 0 || b >= num_actions()) {
    throw std::out_of_range("joint action out of range for game " + name_);
  }
  return payoff_[static_cast<size_t>(a)][static_cast<size_t>(b)];
}

int NormalFormGame::payoff_for(int player, int a, int b) const {
  if (player != 0 && player != 1) throw std::invalid_argument("player must be 0 or 1");
  return payoff(a, b)[static_cast<size_t>(player)];
}

std::optional<ActionId> NormalFormGame::cooperative_action() const {
  if (!cooperative_action_) return std::nullopt;
  return action(*cooperative_action_);
}

nlohmann::json NormalFormGame::to_json() const {
  nlohmann::json payoff = nlohmann::json::array();
  for (const auto& row : payoff_) {
    for (const auto& cell : row) payoff.push_back({cell[0], cell[1]});
  }
  nlohmann::json j{
      {"name", name_},
      {"actions", actions_},
      {"payoff", std::move(payoff)},  // row-major [u1, u2] pairs
      {"family", to_string(family_)},
  };
  if (cooperative_action_) {
    j["cooperative_action"] = actions_[static_cast<size_t>(*cooperative_action_)];
  } else {
    j["cooperative_action"] = nullptr;
  }
  return j;
}

NormalFormGame NormalFormGame::from_json(const nlohmann::json& j) {
  const auto actions = j.at("actions").get<std::vector<std::string>>();
  const auto flat = j.at("payoff");
  const size_t n = actions.size();
  if (flat.size() != n * n) {
    throw std::invalid_argument("payoff list has wrong length for action count");
  }
  PayoffTable table(n, std::vector<PayoffCell>(n));
  for (size_t i = 0; i < n; ++i) {
    for (size_t k = 0; k < n; ++k) {
      const auto& cell = flat[i * n + k];
      table[i][k] = {cell.at(0).get<int>(), cell.at(1).get<int>()};
    }
  }
  std::optional<int> coop;
  if (j.contains("cooperative_action") && !j.at("cooperative_action").is_null()) {
    const auto label = j.at("cooperative_action").get<std::string>();
    const auto it = std::find(actions.begin(), actions.end(), label);
    if (it == actions.end()) {
      throw std::invalid_argument("cooperative_action label not in action list");
    }
    coop = static_cast<int>(it - actions.begin());
  }
  return NormalFormGame(j.at("name").get<std::string>(),
                        family_from_string(j.at("family").get<std::string>()),
                        actions, std::move(table), coop);
}

NormalFormGame apply_counterfactual(const NormalFormGame& game,
                                    const CounterfactualSpec& spec) {
  if (!spec.relabel && !spec.repay) {
    throw std::invalid_argument("counterfactual spec must relabel or repay");
  }

  PayoffTable table;
  const int n = game.num_actions();
  if (spec.repay) {
    validate_table(*spec.repay, static_cast<size_t>(n));
    table = *spec.repay;
  } else {
    table.resize(static_cast<size_t>(n), std::vector<PayoffCell>(static_cast<size_t>(n)));
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) table[a][b] = game.payoff(a, b);
    }
  }

  std::vector<std::string> labels = game.action_labels();
  if (spec.relabel) {
    const auto& relabel = *spec.relabel;
    if (relabel.size() != labels.size()) {
      throw std::invalid_argument("relabel must cover every action exactly once");
    }
    std::set<std::string> new_labels;
    for (auto& label : labels) {
      const auto it = relabel.find(label);
      if (it == relabel.end()) {
        throw std::invalid_argument("relabel missing entry for action: " + label);
      }
      if (it->second.empty()) {
        throw std::invalid_argument("relabel target must be non-empty");
      }
      if (!new_labels.insert(it->second).second) {
        throw std::invalid_argument("relabel is not a bijection: duplicate target " +
                                    it->second);
      }
      label = it->second;
    }
  }

  std::optional<int> coop;
  if (auto c = game.cooperative_action()) coop = c->index;  // position is preserved
  std::string name = spec.renamed.value_or(game.name() + "_cf");
  return NormalFormGame(std::move(name), game.family(), std::move(labels),
                        std::move(table), coop);
}

namespace {

const PayoffTable kPdTable{
    {{{4, 4}}, {{1, 6}}},
    {{{6, 1}}, {{2, 2}}},
};

const PayoffTable kStagHuntTable{
    {{{6, 6}}, {{1, 4}}},
    {{{4, 1}}, {{2, 2}}},
};

// Cyclic zero-sum layout shared by every RPS-family variant: the first action
// beats the third, the second beats the first, the third beats the second.
PayoffTable cyclic_rps_table(int rock_paper_magnitude) {
  const int m = rock_paper_magnitude;
  return {
      {{{0, 0}}, {{-m, m}}, {{1, -1}}},
      {{{m, -m}}, {{0, 0}}, {{-1, 1}}},
      {{{-1, 1}}, {{1, -1}}, {{0, 0}}},
  };
}

}  // namespace

NormalFormGame make_pd_default() {
  return NormalFormGame("pd", GameFamily::kPdLike, {"C", "D"}, kPdTable, 0);
}

NormalFormGame make_pd_label_cf() {
  return NormalFormGame("pd_label", GameFamily::kPdLike, {"S", "H"}, kPdTable, 0);
}

NormalFormGame make_pd_payoff_cf() {
  return NormalFormGame("pd_payoff", GameFamily::kPdLike, {"C", "D"}, kStagHuntTable, 0);
}

NormalFormGame make_pd_joint_cf() {
  return NormalFormGame("pd_joint", GameFamily::kPdLike, {"S", "H"}, kStagHuntTable, 0);
}

NormalFormGame make_rps_default() {
  return NormalFormGame("rps", GameFamily::kRpsLike, {"Rock", "Paper", "Scissors"},
                        cyclic_rps_table(1), std::nullopt);
}

NormalFormGame make_rps_label_cf() {
  return NormalFormGame("rps_label", GameFamily::kRpsLike, {"Paper", "Rock", "Scissors"},
                        cyclic_rps_table(1), std::nullopt);
}

NormalFormGame make_rps_payoff_cf() {
  return NormalFormGame("rps_payoff", GameFamily::kRpsLike, {"Rock", "Paper", "Scissors"},
                        cyclic_rps_table(3), std::nullopt);
}

NormalFormGame make_rps_joint_cf() {
  return NormalFormGame("rps_joint", GameFamily::kRpsLike, {"Paper", "Rock", "Scissors"},
                        cyclic_rps_table(3), std::nullopt);
}

std::vector<std::string> builtin_game_names() {
  return {"pd",  "pd_label",  "pd_payoff",  "pd_joint",
          "rps", "rps_label", "rps_payoff", "rps_joint"};
}

std::optional<NormalFormGame> game_by_name(std::string_view name) {
  if (name == "pd") return make_pd_default();
  if (name == "pd_label") return make_pd_label_cf();
  if (name == "pd_payoff") return make_pd_payoff_cf();
  if (name == "pd_joint") return make_pd_joint_cf();
  if (name == "rps") return make_rps_default();
  if (name == "rps_label") return make_rps_label_cf();
  if (name == "rps_payoff") return make_rps_payoff_cf();
  if (name == "rps_joint") return make_rps_joint_cf();
  return std::nullopt;
}

PdOrderingReport check_pd_ordering(const NormalFormGame& game) {
  if (game.num_actions() != 2) {
    throw std::invalid_argument("ordering check requires a 2x2 game");
  }
  PdOrderingReport report;
  report.reward = game.payoff_for(0, 0, 0);
  report.sucker = game.payoff_for(0, 0, 1);
  report.temptation = game.payoff_for(0, 1, 0);
  report.punishment = game.payoff_for(0, 1, 1);
  report.pd_ordering = report.temptation > report.reward &&
                       report.reward > report.punishment &&
                       report.punishment > report.sucker;
  report.sh_ordering = report.reward > report.temptation &&
                       report.temptation >= report.punishment &&
                       report.punishment > report.sucker;
  return report;
}

bool is_zero_sum(const NormalFormGame& game) {
  const int n = game.num_actions();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const auto cell = game.payoff(a, b);
      if (cell[0] + cell[1] != 0) return false;
    }
  }
  return true;
}

bool is_symmetric(const NormalFormGame& game) {
  const int n = game.num_actions();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (game.payoff_for(0, a, b) != game.payoff_for(1, b, a)) return false;
    }
  }
  return true;
}

}  // namespace cfgames
