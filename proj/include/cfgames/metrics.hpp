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
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cfgames/engine.hpp"
#include "cfgames/game.hpp"

namespace cfgames {

class PartialRecordError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a metric is asked for the wrong game family, e.g. cooperation
// rate on a zero-sum game (use action_distribution there instead).
class FamilyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact target percentage for the comprehension threshold. The comparison
// count/window >= num/den is evaluated in integer arithmetic, so boundary
// cases like 8/9 against 90% never flip on floating-point rounding.
struct Fraction {
  long long num = 9;
  long long den = 10;
};

// Parses "0.9", "90%", or "9/10" into an exact fraction.
Fraction parse_fraction(const std::string& text);

std::array<long long, 2> total_points(const MatchRecord& record);

// Earliest round m such that `player`'s payoff is at least the opponent's in
// at least tp of rounds m..N; N+1 when no round qualifies.
int opponent_comprehension(const MatchRecord& record, Fraction tp = {},
                           int player = 0);

double cooperation_rate(const MatchRecord& record, const NormalFormGame& game,
                        int player);

std::vector<double> action_distribution(const MatchRecord& record,
                                        const NormalFormGame& game, int player);

// Points per c tokens; nullopt when tokens is zero (scripted agents), never
// infinity. Negative tokens raise std::invalid_argument.
std::optional<double> efficiency(double points, long long tokens, double c = 1000.0);

// 1 - invalid / (rounds + invalid): each rejected attempt is one attempt on
// top of the round's accepted one.
double validity_rate(const MatchRecord& record, int player);

struct MetricsReport {
  long long total_points_a = 0;
  long long total_points_b = 0;
  int comprehension_round_m = 0;  // player A's comprehension of B
  std::optional<double> cooperation_rate_a, cooperation_rate_b;
  std::optional<std::vector<double>> action_distribution_a, action_distribution_b;
  std::optional<double> efficiency_a, efficiency_b;
  double validity_rate_a = 1.0, validity_rate_b = 1.0;
  bool low_validity_a = false, low_validity_b = false;  // rate below 0.5

  nlohmann::json to_json() const;
};

MetricsReport compute_metrics(const MatchRecord& record, const NormalFormGame& game,
                              Fraction tp = {});

// Flat metric map used by the aggregation tables. Distribution entries appear
// as freq_<label>_a / freq_<label>_b; undefined efficiencies are omitted.
std::map<std::string, double> metric_values(const MetricsReport& report,
                                            const NormalFormGame& game);

struct Aggregate {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation; 0 when count == 1
  int count = 0;
  bool single = false;  // count == 1, stddev reported as 0
};

Aggregate aggregate_values(std::span<const double> values);

// "64.0 ± 0.0": mean and std to one decimal, the layout used across tables.
std::string format_mean_std(const Aggregate& aggregate);

}  // namespace cfgames
