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

#include "cfgames/equilibrium.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace cfgames {

namespace {

constexpr double kSumTolerance = 1e-12;

// Gaussian elimination with partial pivoting on an augmented matrix.
// Returns std::nullopt for (numerically) singular systems.
std::optional<std::vector<double>> solve_linear(std::vector<std::vector<double>> m) {
  const size_t n = m.size();
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    for (size_t row = col + 1; row < n; ++row) {
      if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
    }
    if (std::abs(m[pivot][col]) < 1e-12) return std::nullopt;
    std::swap(m[col], m[pivot]);
    for (size_t row = 0; row < n; ++row) {
      if (row == col) continue;
      const double factor = m[row][col] / m[col][col];
      for (size_t k = col; k <= n; ++k) m[row][k] -= factor * m[col][k];
    }
  }
  std::vector<double> solution(n);
  for (size_t i = 0; i < n; ++i) solution[i] = m[i][n] / m[i][i];
  return solution;
}

std::vector<int> mask_to_support(uint32_t mask, int n) {
  std::vector<int> support;
  for (int i = 0; i < n; ++i) {
    if (mask & (1u << i)) support.push_back(i);
  }
  return support;
}

}  // namespace

MixedStrategy MixedStrategy::point_mass(int num_actions, int index) {
  MixedStrategy s;
  s.probs.assign(static_cast<size_t>(num_actions), 0.0);
  s.probs.at(static_cast<size_t>(index)) = 1.0;
  return s;
}

MixedStrategy MixedStrategy::uniform(int num_actions) {
  MixedStrategy s;
  s.probs.assign(static_cast<size_t>(num_actions), 1.0 / num_actions);
  return s;
}

void MixedStrategy::validate(int num_actions) const {
  if (static_cast<int>(probs.size()) != num_actions) {
    throw std::invalid_argument("strategy length does not match action count");
  }
  double sum = 0.0;
  for (double p : probs) {
    if (p < 0.0 || p > 1.0) {
      throw std::invalid_argument("strategy probabilities must lie in [0, 1]");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw std::invalid_argument("strategy probabilities must sum to 1");
  }
}

std::array<double, 2> expected_payoff(const NormalFormGame& game,
                                      const MixedStrategy& s1,
                                      const MixedStrategy& s2) {
  const int n = game.num_actions();
  s1.validate(n);
  s2.validate(n);
  std::array<double, 2> value{0.0, 0.0};
  for (int a = 0; a < n; ++a) {
    if (s1.probs[static_cast<size_t>(a)] == 0.0) continue;
    for (int b = 0; b < n; ++b) {
      const double mass = s1.probs[static_cast<size_t>(a)] * s2.probs[static_cast<size_t>(b)];
      if (mass == 0.0) continue;
      const auto cell = game.payoff(a, b);
      value[0] += mass * cell[0];
      value[1] += mass * cell[1];
    }
  }
  return value;
}

std::vector<ActionId> best_responses(const NormalFormGame& game, int player,
                                     const MixedStrategy& opponent, double tol) {
  const int n = game.num_actions();
  opponent.validate(n);
  if (player != 0 && player != 1) throw std::invalid_argument("player must be 0 or 1");

  std::vector<double> values(static_cast<size_t>(n), 0.0);
  for (int own = 0; own < n; ++own) {
    double v = 0.0;
    for (int other = 0; other < n; ++other) {
      const int u = player == 0 ? game.payoff_for(0, own, other)
                                : game.payoff_for(1, other, own);
      v += opponent.probs[static_cast<size_t>(other)] * u;
    }
    values[static_cast<size_t>(own)] = v;
  }
  const double best = *std::max_element(values.begin(), values.end());
  std::vector<ActionId> result;
  for (int a = 0; a < n; ++a) {
    if (values[static_cast<size_t>(a)] >= best - tol) result.push_back(game.action(a));
  }
  return result;
}

std::vector<std::array<int, 2>> pure_nash(const NormalFormGame& game) {
  const int n = game.num_actions();
  std::vector<std::array<int, 2>> cells;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      bool best = true;
      for (int dev = 0; dev < n && best; ++dev) {
        if (game.payoff_for(0, dev, b) > game.payoff_for(0, a, b)) best = false;
      }
      for (int dev = 0; dev < n && best; ++dev) {
        if (game.payoff_for(1, a, dev) > game.payoff_for(1, a, b)) best = false;
      }
      if (best) cells.push_back({a, b});
    }
  }
  return cells;
}

EquilibriumResult mixed_nash_2x2(const NormalFormGame& game) {
  if (game.num_actions() != 2) {
    throw std::invalid_argument("mixed_nash_2x2 requires a 2x2 game");
  }
  EquilibriumResult result;
  result.pure = pure_nash(game);

  bool constant = true;
  const int first = game.payoff_for(0, 0, 0);
  for (int a = 0; a < 2 && constant; ++a) {
    for (int b = 0; b < 2 && constant; ++b) {
      const auto cell = game.payoff(a, b);
      constant = cell[0] == first && cell[1] == first;
    }
  }
  if (constant) {
    result.all_strategies_equilibria = true;
    return result;
  }

  // q makes player 1 indifferent between rows; p makes player 2 indifferent
  // between columns. Interior solutions require both strictly inside (0, 1).
  const double d1 = game.payoff_for(0, 0, 0) - game.payoff_for(0, 0, 1) -
                    game.payoff_for(0, 1, 0) + game.payoff_for(0, 1, 1);
  const double d2 = game.payoff_for(1, 0, 0) - game.payoff_for(1, 1, 0) -
                    game.payoff_for(1, 0, 1) + game.payoff_for(1, 1, 1);
  if (d1 != 0.0 && d2 != 0.0) {
    const double q = (game.payoff_for(0, 1, 1) - game.payoff_for(0, 0, 1)) / d1;
    const double p = (game.payoff_for(1, 1, 1) - game.payoff_for(1, 1, 0)) / d2;
    if (p > 0.0 && p < 1.0 && q > 0.0 && q < 1.0) {
      MixedProfile profile;
      profile.s1.probs = {p, 1.0 - p};
      profile.s2.probs = {q, 1.0 - q};
      if (verify_equilibrium(game, profile.s1, profile.s2, 1e-9)) {
        profile.value = expected_payoff(game, profile.s1, profile.s2);
        result.mixed.push_back(std::move(profile));
      }
    }
  }
  return result;
}

ZeroSumSolution zero_sum_mixed_nash(const NormalFormGame& game, double tol) {
  if (!is_zero_sum(game)) {
    throw std::invalid_argument("zero_sum_mixed_nash requires a zero-sum game");
  }
  const int n = game.num_actions();
  if (n > 10) throw std::invalid_argument("support enumeration limited to 10 actions");

  // Enumerate support pairs of equal size, small to large, and solve the
  // indifference system on each. The first verified solution wins, which
  // makes the output deterministic.
  std::vector<uint32_t> masks;
  for (uint32_t mask = 1; mask < (1u << n); ++mask) masks.push_back(mask);
  std::sort(masks.begin(), masks.end(), [](uint32_t a, uint32_t b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });

  for (uint32_t row_mask : masks) {
    for (uint32_t col_mask : masks) {
      if (std::popcount(row_mask) != std::popcount(col_mask)) continue;
      const auto rows = mask_to_support(row_mask, n);
      const auto cols = mask_to_support(col_mask, n);
      const size_t k = rows.size();

      // Row strategy x and value v: sum_i x_i * u1(i, j) = v for j in cols,
      // sum_i x_i = 1.
      std::vector<std::vector<double>> sys(k + 1, std::vector<double>(k + 2, 0.0));
      for (size_t jc = 0; jc < k; ++jc) {
        for (size_t ir = 0; ir < k; ++ir) {
          sys[jc][ir] = game.payoff_for(0, rows[ir], cols[jc]);
        }
        sys[jc][k] = -1.0;  // -v
        sys[jc][k + 1] = 0.0;
      }
      for (size_t ir = 0; ir < k; ++ir) sys[k][ir] = 1.0;
      sys[k][k + 1] = 1.0;
      const auto row_solution = solve_linear(sys);
      if (!row_solution) continue;

      // Column strategy y and value w: sum_j y_j * u1(i, j) = w for i in rows.
      std::vector<std::vector<double>> sys2(k + 1, std::vector<double>(k + 2, 0.0));
      for (size_t ir = 0; ir < k; ++ir) {
        for (size_t jc = 0; jc < k; ++jc) {
          sys2[ir][jc] = game.payoff_for(0, rows[ir], cols[jc]);
        }
        sys2[ir][k] = -1.0;
        sys2[ir][k + 1] = 0.0;
      }
      for (size_t jc = 0; jc < k; ++jc) sys2[k][jc] = 1.0;
      sys2[k][k + 1] = 1.0;
      const auto col_solution = solve_linear(sys2);
      if (!col_solution) continue;

      const double v = (*row_solution)[k];
      const double w = (*col_solution)[k];
      if (std::abs(v - w) > tol) continue;

      MixedStrategy x, y;
      x.probs.assign(static_cast<size_t>(n), 0.0);
      y.probs.assign(static_cast<size_t>(n), 0.0);
      bool feasible = true;
      for (size_t i = 0; i < k && feasible; ++i) {
        if ((*row_solution)[i] < -tol || (*col_solution)[i] < -tol) feasible = false;
        x.probs[static_cast<size_t>(rows[i])] = std::max(0.0, (*row_solution)[i]);
        y.probs[static_cast<size_t>(cols[i])] = std::max(0.0, (*col_solution)[i]);
      }
      if (!feasible) continue;
      // Clamping may nudge the mass off 1 by a few ulps; renormalize so the
      // strategies stay valid distributions.
      for (auto* strategy : {&x, &y}) {
        double mass = 0.0;
        for (double p : strategy->probs) mass += p;
        if (mass <= 0.0) {
          feasible = false;
          break;
        }
        for (auto& p : strategy->probs) p /= mass;
      }
      if (!feasible) continue;

      // The row strategy must guarantee v against every column, and the
      // column strategy must cap the row player at v against every row.
      for (int j = 0; j < n && feasible; ++j) {
        double guarantee = 0.0;
        for (size_t i = 0; i < k; ++i) {
          guarantee += x.probs[static_cast<size_t>(rows[i])] * game.payoff_for(0, rows[i], j);
        }
        if (guarantee < v - tol) feasible = false;
      }
      for (int i = 0; i < n && feasible; ++i) {
        double cap = 0.0;
        for (size_t j = 0; j < k; ++j) {
          cap += y.probs[static_cast<size_t>(cols[j])] * game.payoff_for(0, i, cols[j]);
        }
        if (cap > v + tol) feasible = false;
      }
      if (!feasible) continue;
      if (!verify_equilibrium(game, x, y, tol)) continue;

      // Symmetric zero-sum games have value 0 and admit a shared optimal
      // strategy, so both players report the same distribution.
      if (is_symmetric(game) && verify_equilibrium(game, x, x, tol)) {
        return ZeroSumSolution{x, x, 0.0};
      }
      return ZeroSumSolution{x, y, v};
    }
  }
  throw std::runtime_error("no equilibrium found for zero-sum game " + game.name());
}

bool verify_equilibrium(const NormalFormGame& game, const MixedStrategy& s1,
                        const MixedStrategy& s2, double tol) {
  const int n = game.num_actions();
  s1.validate(n);
  s2.validate(n);
  const auto value = expected_payoff(game, s1, s2);
  for (int a = 0; a < n; ++a) {
    const auto deviation =
        expected_payoff(game, MixedStrategy::point_mass(n, a), s2);
    if (deviation[0] > value[0] + tol) return false;
  }
  for (int b = 0; b < n; ++b) {
    const auto deviation =
        expected_payoff(game, s1, MixedStrategy::point_mass(n, b));
    if (deviation[1] > value[1] + tol) return false;
  }
  return true;
}

}  // namespace cfgames
