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

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cfgames/engine.hpp"
#include "cfgames/metrics.hpp"

namespace cfgames {

struct PairingSpec {
  nlohmann::json agent_a;
  nlohmann::json agent_b;
  // Restricts this pairing to a subset of the experiment's games, e.g. the
  // two-action opponents to the PD family. Empty means every game.
  std::vector<std::string> games;
};

// A single JSON document drives a whole experiment:
//   {
//     "seed": 42,
//     "out_dir": "runs/demo",
//     "jobs": 2,
//     "games": ["pd", {"family": "rps", "counterfactual": "payoff"}],
//     "pairings": [{"a": {"type": "pp", "cycle": ["D", "C"]},
//                   "b": {"type": "srep"}}],
//     "rounds": 16,        // optional; family default otherwise
//     "repetitions": 5     // optional; 5, or 2 for self-consistency pairings
//   }
struct ExperimentConfig {
  std::vector<std::string> games;  // resolved built-in names
  std::vector<PairingSpec> pairings;
  std::optional<int> rounds;
  std::optional<int> repetitions;
  uint64_t seed = 0;
  std::filesystem::path out_dir = "out";
  int jobs = 1;
  nlohmann::json raw;  // canonical document, hashed for provenance

  // Validates the document and resolves relative fixture paths against the
  // config file's directory. Throws ConfigError with the offending JSON path.
  static ExperimentConfig load(const std::filesystem::path& file);
  static ExperimentConfig from_json(nlohmann::json document,
                                    const std::filesystem::path& base_dir);

  std::string config_hash() const;
};

// One cell of the experiment matrix. The seed derives from the base seed and
// the cell's coordinates, so adding cells never perturbs existing ones.
struct Cell {
  std::string id;
  std::string game;
  nlohmann::json agent_a;
  nlohmann::json agent_b;
  int rounds = 0;
  int repetitions = 0;
  uint64_t seed = 0;

  nlohmann::json to_json() const;
};

std::vector<Cell> expand_matrix(const ExperimentConfig& config);

nlohmann::json manifest_json(const ExperimentConfig& config,
                             const std::vector<Cell>& cells);

struct RunStats {
  int executed = 0;
  int skipped = 0;   // resumed from an existing log
  int failed = 0;    // incomplete records
  bool ok() const { return failed == 0; }
};

// Runs every cell, writes manifest.json, logs.jsonl, aggregates.csv and
// tables.txt under out_dir. With resume, matches already present in the log
// under the same config hash are not re-executed. Log lines are written in
// matrix order regardless of worker scheduling, so deterministic agents
// reproduce byte-identical logs.
RunStats run_experiment(const ExperimentConfig& config, bool resume = false);

// Recomputes the aggregate outputs from a JSONL log alone.
void aggregate_logs(const std::filesystem::path& logs, std::ostream& csv,
                    std::ostream& table, Fraction tp = {});

}  // namespace cfgames
