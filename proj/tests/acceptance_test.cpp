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

// Acceptance suite: one binary, one pass/fail line per criterion, each with
// its stated tolerance and runtime budget. Exit status is nonzero if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cfgames/agents.hpp"
#include "cfgames/engine.hpp"
#include "cfgames/equilibrium.hpp"
#include "cfgames/experiment.hpp"
#include "cfgames/game.hpp"
#include "cfgames/metrics.hpp"
#include "cfgames/rng.hpp"

using namespace cfgames;
using nlohmann::json;

namespace {

struct Checker {
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& message) {
    if (!ok) failures.push_back(message);
  }
  void note(const std::string& message) { notes.push_back(message); }
};

MixedStrategy random_strategy(int n, RngStream& rng) {
  MixedStrategy s;
  s.probs.resize(static_cast<size_t>(n));
  double sum = 0.0;
  for (auto& p : s.probs) {
    p = rng.next_double() + 1e-9;
    sum += p;
  }
  for (auto& p : s.probs) p /= sum;
  return s;
}

// ---------------------------------------------------------------------------
// 1. Equilibrium facts of the catalogue.

void criterion_1(Checker& check) {
  const auto pd_cells = pure_nash(make_pd_default());
  check.require(pd_cells == std::vector<std::array<int, 2>>{{1, 1}},
                "default PD must have (D,D) as its unique pure equilibrium");

  const auto sh = make_pd_payoff_cf();
  check.require(pure_nash(sh) == std::vector<std::array<int, 2>>{{0, 0}, {1, 1}},
                "SH payoff counterfactual must have exactly the two diagonal equilibria");

  for (const auto& name : {"rps", "rps_label", "rps_payoff", "rps_joint"}) {
    check.require(pure_nash(*game_by_name(name)).empty(),
                  std::string(name) + " must have no pure equilibrium");
  }

  const auto uniform = zero_sum_mixed_nash(make_rps_default());
  for (int a = 0; a < 3; ++a) {
    check.require(std::abs(uniform.s1.probs[static_cast<size_t>(a)] - 1.0 / 3) <= 1e-9,
                  "default RPS equilibrium must be uniform within 1e-9");
    check.require(std::abs(uniform.s2.probs[static_cast<size_t>(a)] - 1.0 / 3) <= 1e-9,
                  "default RPS equilibrium must be uniform for both players");
  }
  check.require(std::abs(uniform.value) <= 1e-9, "default RPS value must be 0");
}

// ---------------------------------------------------------------------------
// 2. Weighted-RPS equilibrium against the hand-derived indifference oracle.

void criterion_2(Checker& check) {
  const auto g = make_rps_payoff_cf();
  // Hand-derived from the indifference system: -3q_P + q_S = 3q_R - q_S =
  // -q_R + q_P = 0 with the probabilities summing to 1.
  const std::vector<double> oracle{0.2, 0.2, 0.6};
  MixedStrategy oracle_strategy;
  oracle_strategy.probs = oracle;
  for (int a = 0; a < 3; ++a) {
    double payoff = 0.0;
    for (int b = 0; b < 3; ++b) payoff += oracle[static_cast<size_t>(b)] * g.payoff_for(0, a, b);
    check.require(std::abs(payoff) <= 1e-12,
                  "oracle strategy must equalize every pure action at 0");
  }

  const auto solution = zero_sum_mixed_nash(g);
  for (int a = 0; a < 3; ++a) {
    check.require(
        std::abs(solution.s1.probs[static_cast<size_t>(a)] - oracle[static_cast<size_t>(a)]) <= 1e-9,
        "player 1 strategy must match (0.2, 0.2, 0.6) within 1e-9");
    check.require(
        std::abs(solution.s2.probs[static_cast<size_t>(a)] - oracle[static_cast<size_t>(a)]) <= 1e-9,
        "player 2 strategy must match (0.2, 0.2, 0.6) within 1e-9");
  }
  check.require(std::abs(solution.value) <= 1e-9, "weighted RPS value must be 0");
  check.require(verify_equilibrium(g, solution.s1, solution.s2, 1e-9),
                "weighted RPS solution must pass the deviation test");
  check.require(verify_equilibrium(g, oracle_strategy, oracle_strategy, 1e-9),
                "the hand-derived profile must itself be an equilibrium");
}

// ---------------------------------------------------------------------------
// 3. Expected-payoff oracle: closed forms, Monte Carlo, and the documented
//    misprinted simplification.

void criterion_3(Checker& check) {
  RngStream rng(0xace);

  struct Variant {
    std::string name;
    std::function<double(const std::vector<double>&, const std::vector<double>&)> closed;
  };
  const auto pd_sum = [](const std::vector<double>& s1, const std::vector<double>& s2) {
    const double p = s1[0], q = s2[0];
    return 4 * p * q + 1 * p * (1 - q) + 6 * (1 - p) * q + 2 * (1 - p) * (1 - q);
  };
  const auto sh_closed = [](const std::vector<double>& s1, const std::vector<double>& s2) {
    const double p = s1[0], q = s2[0];
    return 2 - p + 2 * q + 3 * p * q;
  };
  const auto rps_closed = [](const std::vector<double>& p, const std::vector<double>& q) {
    return (p[0] * q[2] + p[1] * q[0] + p[2] * q[1]) -
           (p[0] * q[1] + p[1] * q[2] + p[2] * q[0]);
  };
  const auto rps_weighted = [](const std::vector<double>& p, const std::vector<double>& q) {
    return 3 * p[1] * q[0] + p[0] * q[2] + p[2] * q[1] -
           (3 * p[0] * q[1] + p[1] * q[2] + p[2] * q[0]);
  };
  const std::vector<Variant> variants{
      {"pd", pd_sum},          {"pd_label", pd_sum},
      {"pd_payoff", sh_closed}, {"pd_joint", sh_closed},
      {"rps", rps_closed},     {"rps_label", rps_closed},
      {"rps_payoff", rps_weighted}, {"rps_joint", rps_weighted},
  };

  for (const auto& variant : variants) {
    const auto g = *game_by_name(variant.name);
    for (int trial = 0; trial < 1000; ++trial) {
      const auto s1 = random_strategy(g.num_actions(), rng);
      const auto s2 = random_strategy(g.num_actions(), rng);
      const double table = expected_payoff(g, s1, s2)[0];
      const double closed = variant.closed(s1.probs, s2.probs);
      if (std::abs(table - closed) > 1e-12) {
        check.require(false, variant.name + ": closed form deviates by more than 1e-12");
        break;
      }
    }

    // Monte Carlo at 100k samples within 4 standard errors.
    const auto s1 = random_strategy(g.num_actions(), rng);
    const auto s2 = random_strategy(g.num_actions(), rng);
    const auto expected = expected_payoff(g, s1, s2);
    const int samples = 100000;
    double sum = 0.0, squares = 0.0;
    for (int i = 0; i < samples; ++i) {
      const int a = rng.sample(s1.probs);
      const int b = rng.sample(s2.probs);
      const double u = g.payoff_for(0, a, b);
      sum += u;
      squares += u * u;
    }
    const double mean = sum / samples;
    const double variance = std::max(squares / samples - mean * mean, 1e-12);
    const double stderr_mean = std::sqrt(variance / samples);
    check.require(std::abs(mean - expected[0]) <= 4 * stderr_mean,
                  variant.name + ": Monte Carlo mean outside 4 standard errors");
  }

  // The printed default-PD simplification is inconsistent with its own
  // matrix at (p, q) = (1, 0): the table (and the unsimplified sum) give the
  // unilateral-cooperation payoff 1, the printed polynomial gives 3.
  const auto pd = make_pd_default();
  const double table_value = expected_payoff(pd, MixedStrategy::point_mass(2, 0),
                                             MixedStrategy::point_mass(2, 1))[0];
  const double printed = 2 + 1 + 4 * 0 - 3 * 1 * 0;  // 2 + p + 4q - 3pq
  check.require(table_value == 1.0, "table value at (p,q)=(1,0) must be 1");
  check.require(printed == 3.0 && std::abs(printed - table_value) > 1,
                "the printed simplification should disagree at (1,0)");
  check.note("documented discrepancy: printed default-PD simplification gives 3 at "
             "(p,q)=(1,0); the payoff table gives 1 and the suite asserts the table");
}

// ---------------------------------------------------------------------------
// 4. Score baselines and bounds under fuzzing.

class BernoulliAgent : public Agent {
 public:
  Move choose(const NormalFormGame& game, int, const History&, RngStream& rng) override {
    return Move{game.action(rng.uniform_index(game.num_actions()))};
  }
  std::string describe() const override { return "random"; }
};

void criterion_4(Checker& check) {
  const auto srep_pair = run_match(
      MatchConfig{make_pd_default(), {{"type", "srep"}}, {{"type", "srep"}}, 0, 0, 1});
  check.require(srep_pair.total_a == 32 && srep_pair.total_b == 32,
                "SREP vs SREP must total (32, 32) over 16 rounds");

  const json all_c{{"type", "pp"}, {"cycle", {"C"}}};
  const auto cooperative = run_match(MatchConfig{make_pd_default(), all_c, all_c, 0, 0, 1});
  check.require(cooperative.total_a == 64 && cooperative.total_b == 64,
                "mutual cooperation must total (64, 64)");

  // brute-force trace oracle for always-defect vs the D,C pattern
  const auto pd = make_pd_default();
  long long oracle_a = 0, oracle_b = 0;
  for (int t = 1; t <= 16; ++t) {
    const int a = 1;
    const int b = t % 2 == 1 ? 1 : 0;
    oracle_a += pd.payoff_for(0, a, b);
    oracle_b += pd.payoff_for(1, a, b);
  }
  const json all_d{{"type", "pp"}, {"cycle", {"D"}}};
  const json dc{{"type", "pp"}, {"cycle", {"D", "C"}}};
  const auto exploit = run_match(MatchConfig{make_pd_default(), all_d, dc, 0, 0, 1});
  check.require(exploit.total_a == oracle_a && exploit.total_b == oracle_b,
                "always-defect vs PP[D,C] must match the trace oracle");
  check.require(oracle_a == 64 && oracle_b == 24,
                "trace oracle itself must give (64, 24)");

  // 10,000 fuzzed matches stay inside the fixed-horizon bounds.
  RngStream rng(0xf00d);
  const auto rps = make_rps_default();
  for (int trial = 0; trial < 5000; ++trial) {
    const auto scripted_pd = [&](int which) -> AgentPtr {
      switch (which) {
        case 0: return make_srep_agent(pd);
        case 1: return make_most_frequent_exploiter_pd(pd);
        case 2: return make_tft_best_response_pd(pd);
        case 3: return std::make_unique<BernoulliAgent>();
        default: {
          std::vector<int> cycle;
          const int length = 1 + rng.uniform_index(6);
          for (int i = 0; i < length; ++i) cycle.push_back(rng.uniform_index(2));
          return make_pattern_agent(pd, cycle);
        }
      }
    };
    auto agent_a = scripted_pd(rng.uniform_index(5));
    auto agent_b = scripted_pd(rng.uniform_index(5));
    MatchConfig config{pd, {}, {}, 0, 0, rng.next_u64()};
    const auto record = run_match(config, *agent_a, *agent_b);
    if (record.total_a < 16 || record.total_a > 96 || record.total_b < 16 ||
        record.total_b > 96) {
      check.require(false, "default-PD totals must stay in [16, 96]");
      return;
    }

    const auto scripted_rps = [&](int which) -> AgentPtr {
      switch (which) {
        case 0: return make_srep_agent(rps);
        case 1: return make_adaptive_counter_rps(rps);
        case 2: return make_tft_counter_rps(rps);
        case 3: return std::make_unique<BernoulliAgent>();
        default: {
          std::vector<int> cycle;
          const int length = 1 + rng.uniform_index(6);
          for (int i = 0; i < length; ++i) cycle.push_back(rng.uniform_index(3));
          return make_pattern_agent(rps, cycle);
        }
      }
    };
    auto rps_a = scripted_rps(rng.uniform_index(5));
    auto rps_b = scripted_rps(rng.uniform_index(5));
    MatchConfig rps_config{rps, {}, {}, 0, 0, rng.next_u64()};
    const auto rps_record = run_match(rps_config, *rps_a, *rps_b);
    if (rps_record.total_a < -24 || rps_record.total_a > 24 ||
        rps_record.total_a + rps_record.total_b != 0) {
      check.require(false, "default-RPS totals must stay in [-24, 24] and sum to 0");
      return;
    }
  }
}

// ---------------------------------------------------------------------------
// 5. Comprehension metric against its brute-force oracle.

int comprehension_oracle(const std::vector<std::array<int, 2>>& payoffs, Fraction tp) {
  const int n = static_cast<int>(payoffs.size());
  for (int m = 1; m <= n; ++m) {
    long long count = 0;
    for (int t = m; t <= n; ++t) {
      if (payoffs[static_cast<size_t>(t - 1)][0] >= payoffs[static_cast<size_t>(t - 1)][1]) {
        ++count;
      }
    }
    if (count * tp.den >= tp.num * (n - m + 1)) return m;
  }
  return n + 1;
}

void criterion_5(Checker& check) {
  RngStream rng(0x5eed);
  const std::vector<Fraction> thresholds{{1, 2}, {9, 10}, {1, 1}};
  for (const int n : {16, 24}) {
    for (int trial = 0; trial < 500; ++trial) {
      std::vector<std::array<int, 2>> payoffs;
      bool any_at_least = false;
      for (int t = 0; t < n; ++t) {
        const int pa = rng.uniform_index(9) - 4;
        const int pb = rng.uniform_index(9) - 4;
        payoffs.push_back({pa, pb});
        any_at_least = any_at_least || pa >= pb;
      }
      MatchRecord record;
      for (int t = 0; t < n; ++t) {
        RoundEntry entry;
        entry.round = t + 1;
        entry.payoff_a = payoffs[static_cast<size_t>(t)][0];
        entry.payoff_b = payoffs[static_cast<size_t>(t)][1];
        record.rounds.push_back(entry);
      }

      int previous = 0;
      for (const auto tp : thresholds) {
        const int expected = comprehension_oracle(payoffs, tp);
        const int actual = opponent_comprehension(record, tp);
        if (actual != expected) {
          check.require(false, "comprehension deviates from the brute-force oracle");
          return;
        }
        if (actual < previous) {
          check.require(false, "comprehension must be monotone in the target percentage");
          return;
        }
        previous = actual;
      }

      // sentinel exactly when no m qualifies: with tp = 1, the last round
      // alone decides; spot-check the all-below trace too
      if (!any_at_least) {
        check.require(opponent_comprehension(record, {9, 10}) == n + 1,
                      "sentinel N+1 expected when no round qualifies");
      }
    }
  }

  MatchRecord record;
  for (int t = 0; t < 24; ++t) {
    record.rounds.push_back(RoundEntry{t + 1, 0, 0, 0, 1, 0, 0, 0, 0, false, false});
  }
  check.require(opponent_comprehension(record) == 25,
                "a player never matching its opponent over 24 rounds must report 25");
}

// ---------------------------------------------------------------------------
// 6. Counterfactual equivalence of scripted agents.

void criterion_6(Checker& check) {
  RngStream rng(0xc0ffee);
  int matches = 0;

  for (const auto& name : builtin_game_names()) {
    const auto g = *game_by_name(name);
    const int n = g.num_actions();

    // all permutations of the label set
    std::vector<int> order(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
    std::vector<std::vector<int>> permutations;
    do {
      permutations.push_back(order);
    } while (std::next_permutation(order.begin(), order.end()));

    for (const auto& pi : permutations) {
      CounterfactualSpec spec;
      spec.relabel.emplace();
      for (int i = 0; i < n; ++i) {
        (*spec.relabel)[g.action(i).label] = g.action(pi[static_cast<size_t>(i)]).label;
      }
      const auto relabeled = apply_counterfactual(g, spec);

      const auto build = [&](const NormalFormGame& game, int which,
                             const std::vector<int>& cycle) -> AgentPtr {
        if (game.family() == GameFamily::kPdLike) {
          switch (which) {
            case 0: return make_most_frequent_exploiter_pd(game);
            case 1: return make_tft_best_response_pd(game);
            default: return make_pattern_agent(game, cycle);
          }
        }
        switch (which) {
          case 0: return make_srep_agent(game);
          case 1: return make_adaptive_counter_rps(game);
          case 2: return make_tft_counter_rps(game);
          default: return make_pattern_agent(game, cycle);
        }
      };
      const int kinds = g.family() == GameFamily::kPdLike ? 3 : 4;

      for (int repeat = 0; repeat < 16; ++repeat) {
        std::vector<int> cycle_a, cycle_b;
        for (int i = 0, len = 1 + rng.uniform_index(4); i < len; ++i) {
          cycle_a.push_back(rng.uniform_index(n));
        }
        for (int i = 0, len = 1 + rng.uniform_index(4); i < len; ++i) {
          cycle_b.push_back(rng.uniform_index(n));
        }
        const int kind_a = rng.uniform_index(kinds);
        const int kind_b = rng.uniform_index(kinds);
        const uint64_t seed = rng.next_u64();

        auto original_a = build(g, kind_a, cycle_a);
        auto original_b = build(g, kind_b, cycle_b);
        auto image_a = build(relabeled, kind_a, cycle_a);
        auto image_b = build(relabeled, kind_b, cycle_b);

        MatchConfig original_config{g, {}, {}, 0, 0, seed};
        MatchConfig relabeled_config{relabeled, {}, {}, 0, 0, seed};
        const auto original = run_match(original_config, *original_a, *original_b);
        const auto image = run_match(relabeled_config, *image_a, *image_b);
        ++matches;

        if (original.total_a != image.total_a || original.total_b != image.total_b) {
          check.require(false, name + ": totals must be invariant under relabeling");
          return;
        }
        for (size_t t = 0; t < original.rounds.size(); ++t) {
          const auto& round = original.rounds[t];
          const auto& round_image = image.rounds[t];
          if (round.action_a != round_image.action_a ||
              round.action_b != round_image.action_b) {
            check.require(false, name + ": action sequence must be the permutation image");
            return;
          }
          const auto expected_label =
              (*spec.relabel)[g.action(round.action_a).label];
          if (relabeled.action(round_image.action_a).label != expected_label) {
            check.require(false, name + ": labels must map through the permutation");
            return;
          }
        }
      }
    }
  }
  check.require(matches >= 500, "at least 500 randomized matches must be exercised, got " +
                                    std::to_string(matches));
  check.note("counterfactual equivalence checked on " + std::to_string(matches) +
             " randomized matches");
}

// ---------------------------------------------------------------------------
// 7. Gateway determinism on mock fixtures.

void write_fixture(const std::filesystem::path& path, int rounds, int samples,
                   int exhaustion_round, const std::string& move_text) {
  std::ofstream out(path);
  for (int t = 1; t <= rounds; ++t) {
    for (int s = 1; s <= samples; ++s) {
      if (t == exhaustion_round && s == 2) {
        for (int attempt = 0; attempt < 4; ++attempt) {
          out << R"({"text": "mumble mumble", "prompt_tokens": 10, "completion_tokens": 5})"
              << "\n";
        }
      } else {
        out << R"({"text": ")" << move_text
            << R"(", "prompt_tokens": 10, "completion_tokens": 5})" << "\n";
      }
    }
  }
}

void criterion_7(Checker& check) {
  const auto dir = std::filesystem::temp_directory_path() / "cfgames_acceptance";
  std::filesystem::create_directories(dir);

  // PD: self-consistency k=3, 16 rounds, one retry-exhaustion sample in
  // round 5 -> 16*3 + 3 = 51 responses, 4 invalid attempts.
  const auto pd_fixture = dir / "pd_fixture.jsonl";
  write_fixture(pd_fixture, 16, 3, 5, "[move] C");
  const json pd_llm{{"type", "llm"},
                    {"model", "mock"},
                    {"mode", "zs"},
                    {"self_consistency", 3},
                    {"transport", {{"kind", "mock"}, {"fixture", pd_fixture.string()}}}};
  MatchConfig pd_config{make_pd_default(), pd_llm, {{"type", "srep"}}, 0, 0, 21};
  const auto pd_first = run_match(pd_config);
  const auto pd_second = run_match(pd_config);
  check.require(pd_first.complete, "PD mock match must complete");
  check.require(pd_first.to_jsonl() == pd_second.to_jsonl(),
                "PD records must be byte-identical across runs");

  long long pd_tokens = 0;
  int pd_invalid = 0;
  for (const auto& round : pd_first.rounds) {
    pd_tokens += round.tokens_a;
    pd_invalid += round.invalid_a;
  }
  check.require(pd_tokens == 51 * 5, "PD completion tokens must equal 51 responses x 5");
  check.require(pd_invalid == 4, "PD invalid attempts must equal 4");
  check.require(std::abs(validity_rate(pd_first, 0) - 0.8) < 1e-15,
                "PD validity must be 16/20 = 0.8");
  check.require(pd_first.total_a == 16 && pd_first.total_b == 96,
                "PD totals must be (16, 96): all-C against always-defect");
  check.require(pd_first.rounds[4].fallback_a && pd_first.rounds[4].invalid_a == 4,
                "round 5 must carry the flagged fallback sample");

  // RPS: self-consistency k=5, 24 rounds, exhaustion in round 3 ->
  // 24*5 + 3 = 123 responses.
  const auto rps_fixture = dir / "rps_fixture.jsonl";
  write_fixture(rps_fixture, 24, 5, 3, "[move] Rock");
  const json rps_llm{{"type", "llm"},
                     {"model", "mock"},
                     {"mode", "cot"},
                     {"self_consistency", 5},
                     {"transport", {{"kind", "mock"}, {"fixture", rps_fixture.string()}}}};
  MatchConfig rps_config{make_rps_default(), rps_llm, {{"type", "tft"}}, 0, 0, 22};
  const auto rps_first = run_match(rps_config);
  const auto rps_second = run_match(rps_config);
  check.require(rps_first.complete, "RPS mock match must complete");
  check.require(rps_first.to_jsonl() == rps_second.to_jsonl(),
                "RPS records must be byte-identical across runs");

  long long rps_tokens = 0;
  int rps_invalid = 0;
  for (const auto& round : rps_first.rounds) {
    rps_tokens += round.tokens_a;
    rps_invalid += round.invalid_a;
  }
  check.require(rps_tokens == 123 * 5, "RPS completion tokens must equal 123 x 5");
  check.require(rps_invalid == 4, "RPS invalid attempts must equal 4");
  check.require(std::abs(validity_rate(rps_first, 0) - 24.0 / 28.0) < 1e-15,
                "RPS validity must be 24/28");
  const auto distribution = action_distribution(rps_first, make_rps_default(), 0);
  check.require(distribution[0] == 1.0, "the k=5 vote must always resolve to Rock");

  std::filesystem::remove_all(dir);
}

// ---------------------------------------------------------------------------
// 8. Table emission and lossless CSV round-trip.

void criterion_8(Checker& check) {
  const auto dir = std::filesystem::temp_directory_path() / "cfgames_acceptance_tables";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);

  const json document{
      {"seed", 1},
      {"out_dir", dir.string()},
      {"games", {"pd"}},
      {"pairings",
       json::array({json{{"a", {{"type", "pp"}, {"cycle", {"C"}}}},
                         {"b", {{"type", "pp"}, {"cycle", {"C"}}}}}})},
  };
  const auto config = ExperimentConfig::from_json(document, {});
  const auto stats = run_experiment(config);
  check.require(stats.ok() && stats.executed == 5, "five mock matches must run");

  std::ostringstream csv, table;
  aggregate_logs(dir / "logs.jsonl", csv, table);
  check.require(table.str().find("64.0 ± 0.0") != std::string::npos,
                "five identical 64-point matches must render as '64.0 ± 0.0'");

  // lossless: every mean/std field reparses to the exact double
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  check.require(line == "game,model,prompt,opponent,metric,mean,std,count",
                "CSV header must carry the aggregation axes");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream split(line);
    while (std::getline(split, field, ',')) fields.push_back(field);
    for (size_t i = fields.size() - 3; i < fields.size() - 1; ++i) {
      const double value = std::strtod(fields[i].c_str(), nullptr);
      char buffer[40];
      std::snprintf(buffer, sizeof(buffer), "%.17g", value);
      if (fields[i] != buffer) {
        check.require(false, "CSV numeric fields must round-trip losslessly");
        return;
      }
    }
  }

  // the subcommand path recomputes the same bytes from the logs alone
  std::ostringstream csv_again, table_again;
  aggregate_logs(dir / "logs.jsonl", csv_again, table_again);
  check.require(csv.str() == csv_again.str() && table.str() == table_again.str(),
                "aggregation must be a pure function of the logs");

  std::filesystem::remove_all(dir);
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string title;
    double budget_s;
    std::function<void(Checker&)> body;
  };
  const std::vector<Criterion> criteria{
      {1, "equilibrium facts (PD, SH, RPS, uniform 1/3)", 1.0, criterion_1},
      {2, "weighted-RPS equilibrium (0.2, 0.2, 0.6)", 1.0, criterion_2},
      {3, "expected-payoff oracle vs closed forms and Monte Carlo", 30.0, criterion_3},
      {4, "score baselines and fuzzed bounds", 60.0, criterion_4},
      {5, "comprehension metric vs brute-force oracle", 10.0, criterion_5},
      {6, "counterfactual equivalence of scripted agents", 30.0, criterion_6},
      {7, "gateway determinism on mock fixtures", 5.0, criterion_7},
      {8, "table emission and lossless CSV round-trip", 5.0, criterion_8},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    Checker check;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.body(check);
    } catch (const std::exception& e) {
      check.require(false, std::string("unexpected exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > criterion.budget_s) {
      check.require(false, "runtime budget exceeded: " + std::to_string(elapsed) + "s > " +
                               std::to_string(criterion.budget_s) + "s");
    }
    const bool passed = check.failures.empty();
    failures += passed ? 0 : 1;
    std::printf("[%s] criterion %d: %s (%.2fs)\n", passed ? "PASS" : "FAIL", criterion.id,
                criterion.title.c_str(), elapsed);
    for (const auto& note : check.notes) std::printf("       note: %s\n", note.c_str());
    for (const auto& failure : check.failures) {
      std::printf("       failure: %s\n", failure.c_str());
    }
  }
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
