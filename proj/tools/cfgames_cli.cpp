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

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "cfgames/agent_registry.hpp"
#include "cfgames/equilibrium.hpp"
#include "cfgames/experiment.hpp"
#include "cfgames/game.hpp"

namespace {

using namespace cfgames;

std::string strategy_text(const NormalFormGame& game, const MixedStrategy& strategy) {
  std::ostringstream out;
  out << "(";
  for (int a = 0; a < game.num_actions(); ++a) {
    out << (a ? ", " : "") << game.action(a).label << "="
        << strategy.probs[static_cast<size_t>(a)];
  }
  out << ")";
  return out.str();
}

int cmd_solve(const std::string& name) {
  const auto game = game_by_name(name);
  if (!game) {
    std::cerr << "unknown game '" << name << "'; available:";
    for (const auto& n : builtin_game_names()) std::cerr << " " << n;
    std::cerr << "\n";
    return 1;
  }
  std::cout << "game: " << game->name() << " (" << to_string(game->family())
            << ", " << (is_zero_sum(*game) ? "zero-sum" : "general-sum") << ")\n";
  std::cout << "actions:";
  for (const auto& label : game->action_labels()) std::cout << " " << label;
  std::cout << "\n";

  const auto pure = pure_nash(*game);
  std::cout << "pure equilibria: ";
  if (pure.empty()) {
    std::cout << "(none)";
  } else {
    for (const auto& cell : pure) {
      std::cout << "(" << game->action(cell[0]).label << ","
                << game->action(cell[1]).label << ") ";
    }
  }
  std::cout << "\n";

  if (game->num_actions() == 2) {
    const auto result = mixed_nash_2x2(*game);
    if (result.all_strategies_equilibria) {
      std::cout << "degenerate: every strategy profile is an equilibrium\n";
    }
    for (const auto& profile : result.mixed) {
      std::cout << "mixed equilibrium: " << strategy_text(*game, profile.s1) << " vs "
                << strategy_text(*game, profile.s2) << ", value (" << profile.value[0]
                << ", " << profile.value[1] << ")\n";
    }
    if (game->family() == GameFamily::kPdLike) {
      const auto ordering = check_pd_ordering(*game);
      std::cout << "ordering: T=" << ordering.temptation << " R=" << ordering.reward
                << " P=" << ordering.punishment << " S=" << ordering.sucker
                << (ordering.pd_ordering ? "  [T > R > P > S]" : "")
                << (ordering.sh_ordering ? "  [R > T >= P > S]" : "") << "\n";
    }
  }
  if (is_zero_sum(*game)) {
    const auto solution = zero_sum_mixed_nash(*game);
    std::cout << "zero-sum equilibrium: " << strategy_text(*game, solution.s1)
              << " / " << strategy_text(*game, solution.s2)
              << ", value " << solution.value << "\n";
    std::cout << "verified: "
              << (verify_equilibrium(*game, solution.s1, solution.s2, 1e-9) ? "yes" : "no")
              << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Repeated-game evaluation harness for default and counterfactual "
               "two-player games"};
  app.require_subcommand(1);

  // run
  std::string config_path;
  std::optional<uint64_t> seed_override;
  std::optional<std::string> out_override;
  std::optional<int> jobs_override;
  bool resume = false;
  auto* run = app.add_subcommand("run", "execute an experiment matrix");
  run->add_option("config", config_path, "experiment config (JSON)")->required();
  run->add_option("--seed", seed_override, "override the base seed");
  run->add_option("--out", out_override, "override the output directory");
  run->add_option("--jobs", jobs_override, "worker pool size");
  run->add_flag("--resume", resume, "reuse completed matches from an existing log");

  // aggregate
  std::string logs_path;
  std::string csv_out, table_out;
  std::string tp_text = "0.9";
  auto* aggregate = app.add_subcommand("aggregate", "recompute tables from a JSONL log");
  aggregate->add_option("logs", logs_path, "logs.jsonl produced by run")->required();
  aggregate->add_option("--csv", csv_out, "write CSV aggregates to this file");
  aggregate->add_option("--table", table_out, "write text tables to this file");
  aggregate->add_option("--tp", tp_text,
                        "comprehension target percentage (e.g. 0.9, 90%, 9/10)");

  // validate-config
  std::string validate_path;
  auto* validate = app.add_subcommand("validate-config", "check a config without running");
  validate->add_option("config", validate_path, "experiment config (JSON)")->required();

  // list-agents
  auto* list_agents = app.add_subcommand("list-agents", "show registered agent types");

  // solve
  std::string game_name;
  auto* solve = app.add_subcommand("solve", "equilibria report for a built-in game");
  solve->add_option("game", game_name, "game name, e.g. pd or rps_payoff")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      auto config = ExperimentConfig::load(config_path);
      if (seed_override) config.seed = *seed_override;
      if (out_override) config.out_dir = *out_override;
      if (jobs_override) config.jobs = *jobs_override;
      const auto stats = run_experiment(config, resume);
      std::cout << "executed " << stats.executed << " matches, reused " << stats.skipped
                << ", failed " << stats.failed << "\n";
      std::cout << "outputs in " << config.out_dir.string() << "\n";
      return stats.ok() ? 0 : 1;
    }
    if (aggregate->parsed()) {
      std::ostringstream csv, table;
      aggregate_logs(logs_path, csv, table, parse_fraction(tp_text));
      if (!csv_out.empty()) {
        std::ofstream out(csv_out);
        out << csv.str();
      }
      if (!table_out.empty()) {
        std::ofstream out(table_out);
        out << table.str();
        std::cout << "tables written to " << table_out << "\n";
      } else {
        std::cout << table.str();
      }
      if (csv_out.empty() && table_out.empty()) std::cout << csv.str();
      return 0;
    }
    if (validate->parsed()) {
      const auto config = ExperimentConfig::load(validate_path);
      const auto cells = expand_matrix(config);
      std::cout << "config ok: " << cells.size() << " matrix cells, hash "
                << config.config_hash() << "\n";
      return 0;
    }
    if (list_agents->parsed()) {
      for (const auto& [name, help] : agent_registry_help()) {
        std::cout << name << "\n    " << help << "\n";
      }
      return 0;
    }
    if (solve->parsed()) return cmd_solve(game_name);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
