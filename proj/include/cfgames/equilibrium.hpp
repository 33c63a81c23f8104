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
#include <optional>
#include <vector>

#include "cfgames/game.hpp"

namespace cfgames {

// A probability distribution over a game's actions, aligned with the action
// list. validate() enforces entries in [0, 1] summing to 1 within 1e-12.
struct MixedStrategy {
  std::vector<double> probs;

  static MixedStrategy point_mass(int num_actions, int index);
  static MixedStrategy uniform(int num_actions);

  void validate(int num_actions) const;
};

// Bilinear expectation computed directly from the payoff table.
std::array<double, 2> expected_payoff(const NormalFormGame& game,
                                      const MixedStrategy& s1,
                                      const MixedStrategy& s2);

// All actions maximizing `player`'s expected payoff against the opponent
// strategy; ties within tol are all included.
std::vector<ActionId> best_responses(const NormalFormGame& game, int player,
                                     const MixedStrategy& opponent,
                                     double tol = 1e-9);

// Joint profiles {a1, a2} where each action is a best response to the other.
std::vector<std::array<int, 2>> pure_nash(const NormalFormGame& game);

struct MixedProfile {
  MixedStrategy s1;
  MixedStrategy s2;
  std::array<double, 2> value{};
};

struct EquilibriumResult {
  std::vector<std::array<int, 2>> pure;
  std::vector<MixedProfile> mixed;
  bool all_strategies_equilibria = false;  // degenerate constant game
};

// Pure equilibria plus the interior mixed equilibrium of a 2x2 game when the
// indifference system has a solution with both probabilities in (0, 1).
EquilibriumResult mixed_nash_2x2(const NormalFormGame& game);

struct ZeroSumSolution {
  MixedStrategy s1;
  MixedStrategy s2;
  double value = 0.0;
};

// Minimax solution of a zero-sum game via support enumeration, solved to tol.
// For symmetric zero-sum games the value is 0 and both players receive the
// same strategy. Throws std::invalid_argument if the game is not zero-sum.
ZeroSumSolution zero_sum_mixed_nash(const NormalFormGame& game, double tol = 1e-9);

// True iff no pure deviation improves either player's expected payoff by more
// than tol (pure deviations suffice by linearity of the expectation).
bool verify_equilibrium(const NormalFormGame& game, const MixedStrategy& s1,
                        const MixedStrategy& s2, double tol);

}  // namespace cfgames
