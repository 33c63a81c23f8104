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

#include "cfgames/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

namespace cfgames {

namespace {

void require_complete(const MatchRecord& record) {
  if (!record.complete) {
    throw PartialRecordError("metric requires a complete match record: " + record.error);
  }
}

void require_player(int player) {
  if (player != 0 && player != 1) throw std::invalid_argument("player must be 0 or 1");
}

long long gcd_ll(long long a, long long b) { return b == 0 ? a : gcd_ll(b, a % b); }

}  // namespace

Fraction parse_fraction(const std::string& text) {
  std::string body = text;
  bool percent = false;
  if (!body.empty() && body.back() == '%') {
    percent = true;
    body.pop_back();
  }
  Fraction f;
  if (const auto slash = body.find('/'); slash != std::string::npos) {
    f.num = std::stoll(body.substr(0, slash));
    f.den = std::stoll(body.substr(slash + 1));
  } else if (const auto dot = body.find('.'); dot != std::string::npos) {
    const std::string digits = body.substr(0, dot) + body.substr(dot + 1);
    f.num = std::stoll(digits);
    f.den = 1;
    for (size_t i = dot + 1; i < body.size(); ++i) f.den *= 10;
  } else {
    f.num = std::stoll(body);
    f.den = 1;
  }
  if (percent) f.den *= 100;
  if (f.den <= 0 || f.num <= 0 || f.num > f.den) {
    throw std::invalid_argument("target percentage must lie in (0, 1]: " + text);
  }
  const long long g = gcd_ll(f.num, f.den);
  return Fraction{f.num / g, f.den / g};
}

std::array<long long, 2> total_points(const MatchRecord& record) {
  require_complete(record);
  long long a = 0, b = 0;
  for (const auto& round : record.rounds) {
    a += round.payoff_a;
    b += round.payoff_b;
  }
  return {a, b};
}

int opponent_comprehension(const MatchRecord& record, Fraction tp, int player) {
  require_complete(record);
  require_player(player);
  if (tp.num <= 0 || tp.den <= 0 || tp.num > tp.den) {
    throw std::invalid_argument("target percentage must lie in (0, 1]");
  }
  const int n = static_cast<int>(record.rounds.size());
  // Suffix counts of rounds where the player's payoff is at least the
  // opponent's; the threshold comparison stays in integers.
  std::vector<int> suffix(static_cast<size_t>(n) + 1, 0);
  for (int t = n; t >= 1; --t) {
    const auto& round = record.rounds[static_cast<size_t>(t - 1)];
    const bool at_least = player == 0 ? round.payoff_a >= round.payoff_b
                                      : round.payoff_b >= round.payoff_a;
    suffix[static_cast<size_t>(t - 1)] =
        suffix[static_cast<size_t>(t)] + (at_least ? 1 : 0);
  }
  for (int m = 1; m <= n; ++m) {
    const long long window = n - m + 1;
    const long long count = suffix[static_cast<size_t>(m - 1)];
    if (count * tp.den >= tp.num * window) return m;
  }
  return n + 1;
}

double cooperation_rate(const MatchRecord& record, const NormalFormGame& game,
                        int player) {
  require_complete(record);
  require_player(player);
  const auto coop = game.cooperative_action();
  if (game.family() != GameFamily::kPdLike || !coop) {
    throw FamilyError("cooperation rate needs a cooperative action; "
                      "use action_distribution for " + game.name());
  }
  if (record.rounds.empty()) return 0.0;
  int chosen = 0;
  for (const auto& round : record.rounds) {
    const int action = player == 0 ? round.action_a : round.action_b;
    if (action == coop->index) ++chosen;
  }
  return static_cast<double>(chosen) / static_cast<double>(record.rounds.size());
}

std::vector<double> action_distribution(const MatchRecord& record,
                                        const NormalFormGame& game, int player) {
  require_complete(record);
  require_player(player);
  std::vector<double> freq(static_cast<size_t>(game.num_actions()), 0.0);
  if (record.rounds.empty()) return freq;
  for (const auto& round : record.rounds) {
    const int action = player == 0 ? round.action_a : round.action_b;
    freq.at(static_cast<size_t>(action)) += 1.0;
  }
  for (auto& f : freq) f /= static_cast<double>(record.rounds.size());
  return freq;
}

std::optional<double> efficiency(double points, long long tokens, double c) {
  if (tokens < 0) throw std::invalid_argument("token count must be non-negative");
  if (tokens == 0) return std::nullopt;
  return points / static_cast<double>(tokens) * c;
}

double validity_rate(const MatchRecord& record, int player) {
  require_player(player);
  long long invalid = 0;
  for (const auto& round : record.rounds) {
    invalid += player == 0 ? round.invalid_a : round.invalid_b;
  }
  const long long attempts = static_cast<long long>(record.rounds.size()) + invalid;
  if (attempts == 0) return 1.0;
  return 1.0 - static_cast<double>(invalid) / static_cast<double>(attempts);
}

nlohmann::json MetricsReport::to_json() const {
  nlohmann::json j{{"total_points_a", total_points_a},
                   {"total_points_b", total_points_b},
                   {"comprehension_round_m", comprehension_round_m},
                   {"validity_rate_a", validity_rate_a},
                   {"validity_rate_b", validity_rate_b},
                   {"low_validity_a", low_validity_a},
                   {"low_validity_b", low_validity_b}};
  j["cooperation_rate_a"] = cooperation_rate_a ? nlohmann::json(*cooperation_rate_a)
                                               : nlohmann::json(nullptr);
  j["cooperation_rate_b"] = cooperation_rate_b ? nlohmann::json(*cooperation_rate_b)
                                               : nlohmann::json(nullptr);
  j["action_distribution_a"] = action_distribution_a
                                   ? nlohmann::json(*action_distribution_a)
                                   : nlohmann::json(nullptr);
  j["action_distribution_b"] = action_distribution_b
                                   ? nlohmann::json(*action_distribution_b)
                                   : nlohmann::json(nullptr);
  j["efficiency_a"] = efficiency_a ? nlohmann::json(*efficiency_a) : nlohmann::json(nullptr);
  j["efficiency_b"] = efficiency_b ? nlohmann::json(*efficiency_b) : nlohmann::json(nullptr);
  return j;
}

MetricsReport compute_metrics(const MatchRecord& record, const NormalFormGame& game,
                              Fraction tp) {
  require_complete(record);
  MetricsReport report;
  const auto totals = total_points(record);
  report.total_points_a = totals[0];
  report.total_points_b = totals[1];
  report.comprehension_round_m = opponent_comprehension(record, tp, 0);

  if (game.family() == GameFamily::kPdLike) {
    report.cooperation_rate_a = cooperation_rate(record, game, 0);
    report.cooperation_rate_b = cooperation_rate(record, game, 1);
  } else {
    report.action_distribution_a = action_distribution(record, game, 0);
    report.action_distribution_b = action_distribution(record, game, 1);
  }

  long long tokens_a = 0, tokens_b = 0;
  for (const auto& round : record.rounds) {
    tokens_a += round.tokens_a;
    tokens_b += round.tokens_b;
  }
  report.efficiency_a = efficiency(static_cast<double>(totals[0]), tokens_a);
  report.efficiency_b = efficiency(static_cast<double>(totals[1]), tokens_b);

  report.validity_rate_a = validity_rate(record, 0);
  report.validity_rate_b = validity_rate(record, 1);
  report.low_validity_a = report.validity_rate_a < 0.5;
  report.low_validity_b = report.validity_rate_b < 0.5;
  return report;
}

std::map<std::string, double> metric_values(const MetricsReport& report,
                                            const NormalFormGame& game) {
  std::map<std::string, double> values{
      {"total_points_a", static_cast<double>(report.total_points_a)},
      {"total_points_b", static_cast<double>(report.total_points_b)},
      {"comprehension_round_m", static_cast<double>(report.comprehension_round_m)},
      {"validity_rate_a", report.validity_rate_a},
      {"validity_rate_b", report.validity_rate_b},
  };
  if (report.cooperation_rate_a) values["cooperation_rate_a"] = *report.cooperation_rate_a;
  if (report.cooperation_rate_b) values["cooperation_rate_b"] = *report.cooperation_rate_b;
  if (report.action_distribution_a) {
    for (int a = 0; a < game.num_actions(); ++a) {
      values["freq_" + game.action(a).label + "_a"] =
          (*report.action_distribution_a)[static_cast<size_t>(a)];
    }
  }
  if (report.action_distribution_b) {
    for (int a = 0; a < game.num_actions(); ++a) {
      values["freq_" + game.action(a).label + "_b"] =
          (*report.action_distribution_b)[static_cast<size_t>(a)];
    }
  }
  if (report.efficiency_a) values["efficiency_a"] = *report.efficiency_a;
  if (report.efficiency_b) values["efficiency_b"] = *report.efficiency_b;
  return values;
}

Aggregate aggregate_values(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("cannot aggregate zero reports");
  Aggregate aggregate;
  aggregate.count = static_cast<int>(values.size());
  aggregate.mean = std::accumulate(values.begin(), values.end(), 0.0) /
                   static_cast<double>(values.size());
  if (values.size() == 1) {
    aggregate.single = true;
    aggregate.stddev = 0.0;
    return aggregate;
  }
  double squares = 0.0;
  for (double v : values) squares += (v - aggregate.mean) * (v - aggregate.mean);
  aggregate.stddev = std::sqrt(squares / static_cast<double>(values.size() - 1));
  return aggregate;
}

std::string format_mean_std(const Aggregate& aggregate) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.1f ± %.1f", aggregate.mean, aggregate.stddev);
  return buffer;
}

}  // namespace cfgames
