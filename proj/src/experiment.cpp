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

#include "cfgames/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "cfgames/agent_registry.hpp"
#include "cfgames/rng.hpp"

namespace cfgames {

namespace {

using nlohmann::json;

constexpr const char* kArtifactVersion = "0.1.0";

std::string hex64(uint64_t value) {
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(value));
  return buffer;
}

std::string resolve_game_name(const json& entry, const std::string& path) {
  const auto known = builtin_game_names();
  std::string name;
  if (entry.is_string()) {
    name = entry.get<std::string>();
  } else if (entry.is_object()) {
    const std::string family = entry.value("family", "");
    if (family != "pd" && family != "rps") {
      throw ConfigError(path + ".family: must be 'pd' or 'rps'");
    }
    const std::string cf = entry.value("counterfactual", "none");
    if (cf == "none") {
      name = family;
    } else if (cf == "label" || cf == "payoff" || cf == "joint") {
      name = family + "_" + cf;
    } else {
      throw ConfigError(path + ".counterfactual: must be none, label, payoff or joint");
    }
  } else {
    throw ConfigError(path + ": game selector must be a name or {family, counterfactual}");
  }
  if (std::find(known.begin(), known.end(), name) == known.end()) {
    std::ostringstream out;
    out << path << ": unknown game '" << name << "' (known:";
    for (const auto& k : known) out << " " << k;
    out << ")";
    throw ConfigError(out.str());
  }
  return name;
}

// Fixture paths inside agent specs are resolved against the config file's
// directory; the original spec is kept for cell coordinates and display so
// seeds do not depend on where the tree happens to live.
json resolve_fixture_paths(json spec, const std::filesystem::path& base_dir) {
  if (spec.is_object() && spec.value("type", "") == "llm" && spec.contains("transport")) {
    auto& transport = spec["transport"];
    if (transport.value("kind", "") == "mock" && transport.contains("fixture")) {
      const std::filesystem::path fixture(transport["fixture"].get<std::string>());
      if (fixture.is_relative() && !base_dir.empty()) {
        transport["fixture"] = (base_dir / fixture).lexically_normal().string();
      }
    }
  }
  return spec;
}

struct GroupKey {
  std::string game;
  std::string model;
  std::string prompt;
  std::string opponent;

  auto tie() const { return std::tie(game, model, prompt, opponent); }
  bool operator<(const GroupKey& other) const { return tie() < other.tie(); }
};

std::string format_full(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

}  // namespace

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config file: " + file.string());
  json document;
  try {
    in >> document;
  } catch (const json::exception& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  return from_json(std::move(document), file.parent_path());
}

ExperimentConfig ExperimentConfig::from_json(json document,
                                             const std::filesystem::path& base_dir) {
  if (!document.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> kKnown{"games",  "pairings",    "rounds", "repetitions",
                                            "seed",   "out_dir",     "jobs"};
  for (const auto& [key, _] : document.items()) {
    if (!kKnown.count(key)) {
      throw ConfigError(key + ": unknown configuration key");
    }
  }

  ExperimentConfig config;
  config.raw = document;

  if (!document.contains("games") || !document["games"].is_array() ||
      document["games"].empty()) {
    throw ConfigError("games: must be a non-empty array");
  }
  for (size_t i = 0; i < document["games"].size(); ++i) {
    config.games.push_back(
        resolve_game_name(document["games"][i], "games[" + std::to_string(i) + "]"));
  }

  if (!document.contains("pairings") || !document["pairings"].is_array() ||
      document["pairings"].empty()) {
    throw ConfigError("pairings: must be a non-empty array");
  }
  for (size_t i = 0; i < document["pairings"].size(); ++i) {
    const auto& entry = document["pairings"][i];
    const std::string path = "pairings[" + std::to_string(i) + "]";
    if (!entry.is_object() || !entry.contains("a") || !entry.contains("b")) {
      throw ConfigError(path + ": must be an object with agents 'a' and 'b'");
    }
    for (const auto& [key, _] : entry.items()) {
      if (key != "a" && key != "b" && key != "games") {
        throw ConfigError(path + "." + key + ": unknown pairing key");
      }
    }
    validate_agent_spec(entry["a"], path + ".a");
    validate_agent_spec(entry["b"], path + ".b");
    PairingSpec pairing;
    pairing.agent_a = resolve_fixture_paths(entry["a"], base_dir);
    pairing.agent_b = resolve_fixture_paths(entry["b"], base_dir);
    if (entry.contains("games")) {
      if (!entry["games"].is_array() || entry["games"].empty()) {
        throw ConfigError(path + ".games: must be a non-empty array of game selectors");
      }
      for (size_t k = 0; k < entry["games"].size(); ++k) {
        const auto name = resolve_game_name(
            entry["games"][k], path + ".games[" + std::to_string(k) + "]");
        if (std::find(config.games.begin(), config.games.end(), name) ==
            config.games.end()) {
          throw ConfigError(path + ".games: '" + name +
                            "' is not part of this experiment's games list");
        }
        pairing.games.push_back(name);
      }
    }
    config.pairings.push_back(std::move(pairing));
  }

  if (document.contains("rounds")) {
    if (!document["rounds"].is_number_integer() || document["rounds"].get<int>() < 1) {
      throw ConfigError("rounds: must be an integer >= 1");
    }
    config.rounds = document["rounds"].get<int>();
  }
  if (document.contains("repetitions")) {
    if (!document["repetitions"].is_number_integer() ||
        document["repetitions"].get<int>() < 1) {
      throw ConfigError("repetitions: must be an integer >= 1");
    }
    config.repetitions = document["repetitions"].get<int>();
  }
  if (document.contains("seed")) {
    if (!document["seed"].is_number_unsigned() && !document["seed"].is_number_integer()) {
      throw ConfigError("seed: must be an integer");
    }
    config.seed = document["seed"].get<uint64_t>();
  }
  if (document.contains("out_dir")) {
    config.out_dir = document["out_dir"].get<std::string>();
    if (config.out_dir.is_relative() && !base_dir.empty()) {
      config.out_dir = base_dir / config.out_dir;
    }
  }
  if (document.contains("jobs")) {
    if (!document["jobs"].is_number_integer() || document["jobs"].get<int>() < 1) {
      throw ConfigError("jobs: must be an integer >= 1");
    }
    config.jobs = document["jobs"].get<int>();
  }
  return config;
}

std::string ExperimentConfig::config_hash() const { return hex64(fnv1a64(raw.dump())); }

json Cell::to_json() const {
  return json{{"id", id},           {"game", game},
              {"agent_a", agent_a}, {"agent_b", agent_b},
              {"rounds", rounds},   {"repetitions", repetitions},
              {"seed", seed}};
}

std::vector<Cell> expand_matrix(const ExperimentConfig& config) {
  std::vector<Cell> cells;
  std::set<std::string> seen;
  const auto& raw_pairings =
      config.raw.contains("pairings") ? config.raw["pairings"] : json::array();

  for (const auto& game_name : config.games) {
    const auto game = game_by_name(game_name);
    for (size_t p = 0; p < config.pairings.size(); ++p) {
      const auto& pairing = config.pairings[p];
      if (!pairing.games.empty() &&
          std::find(pairing.games.begin(), pairing.games.end(), game_name) ==
              pairing.games.end()) {
        continue;  // pairing restricted to other games
      }
      // Coordinates come from the unresolved pairing entry so that resolved
      // absolute paths do not leak into seed derivation.
      const json& source = p < raw_pairings.size()
                               ? raw_pairings[static_cast<int>(p)]
                               : json{{"a", pairing.agent_a}, {"b", pairing.agent_b}};
      const std::string coord = game_name + "\x1f" + source.dump();
      if (!seen.insert(coord).second) continue;  // duplicate cell, keep one

      Cell cell;
      cell.id = hex64(fnv1a64(coord));
      cell.game = game_name;
      cell.agent_a = pairing.agent_a;
      cell.agent_b = pairing.agent_b;
      MatchConfig probe{*game, pairing.agent_a, pairing.agent_b,
                        config.rounds.value_or(0), config.repetitions.value_or(0),
                        0, std::nullopt};
      cell.rounds = probe.resolved_rounds();
      cell.repetitions = probe.resolved_repetitions();
      cell.seed = derive_seed(config.seed, coord);
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

json manifest_json(const ExperimentConfig& config, const std::vector<Cell>& cells) {
  json cell_list = json::array();
  for (const auto& cell : cells) cell_list.push_back(cell.to_json());
  return json{{"artifact_version", kArtifactVersion},
              {"config_hash", config.config_hash()},
              {"seed", config.seed},
              {"cells", std::move(cell_list)}};
}

RunStats run_experiment(const ExperimentConfig& config, bool resume) {
  std::filesystem::create_directories(config.out_dir);
  const auto cells = expand_matrix(config);
  const std::string config_hash = config.config_hash();

  {
    std::ofstream manifest(config.out_dir / "manifest.json");
    if (!manifest) {
      throw ConfigError("output directory not writable: " + config.out_dir.string());
    }
    manifest << manifest_json(config, cells).dump(2) << "\n";
  }

  const auto logs_path = config.out_dir / "logs.jsonl";

  // Completed matches from a previous run are reused when the config hash
  // still matches; everything else is re-executed.
  std::map<std::string, std::string> previous;
  if (resume && std::filesystem::exists(logs_path)) {
    std::ifstream in(logs_path);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      try {
        const json j = json::parse(line);
        const auto& cell_info = j.at("config").at("cell");
        if (cell_info.at("config_hash").get<std::string>() != config_hash) continue;
        if (!j.at("complete").get<bool>()) continue;
        const std::string key = cell_info.at("id").get<std::string>() + ":" +
                                std::to_string(cell_info.at("repetition").get<int>());
        previous[key] = j.dump();
      } catch (const json::exception&) {
        continue;  // unreadable line: re-run that cell
      }
    }
  }

  struct Task {
    const Cell* cell;
    int repetition;
  };
  std::vector<Task> tasks;
  for (const auto& cell : cells) {
    for (int rep = 0; rep < cell.repetitions; ++rep) tasks.push_back({&cell, rep});
  }

  std::vector<std::string> lines(tasks.size());
  std::atomic<size_t> cursor{0};
  std::atomic<int> executed{0}, skipped{0}, failed{0};

  const auto worker = [&] {
    while (true) {
      const size_t index = cursor.fetch_add(1);
      if (index >= tasks.size()) return;
      const Task& task = tasks[index];
      const std::string key = task.cell->id + ":" + std::to_string(task.repetition);

      if (const auto hit = previous.find(key); hit != previous.end()) {
        lines[index] = hit->second;
        skipped.fetch_add(1);
        continue;
      }

      MatchConfig match{*game_by_name(task.cell->game), task.cell->agent_a,
                        task.cell->agent_b, task.cell->rounds, task.cell->repetitions,
                        task.cell->seed + static_cast<uint64_t>(task.repetition),
                        std::nullopt};
      MatchRecord record;
      try {
        record = run_match(match);
      } catch (const std::exception& e) {
        record.config = match.to_json();
        record.complete = false;
        record.error = e.what();
      }
      record.config["cell"] = json{{"id", task.cell->id},
                                   {"game", task.cell->game},
                                   {"repetition", task.repetition},
                                   {"config_hash", config_hash}};
      if (!record.complete) failed.fetch_add(1);
      lines[index] = record.to_jsonl();
      executed.fetch_add(1);
    }
  };

  const int jobs = std::max(1, config.jobs);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(jobs) - 1);
  for (int i = 1; i < jobs; ++i) pool.emplace_back(worker);
  worker();
  for (auto& thread : pool) thread.join();

  {
    // Single appender; lines land in matrix order regardless of scheduling.
    std::ofstream out(logs_path);
    for (const auto& line : lines) out << line << "\n";
  }

  {
    std::ofstream csv(config.out_dir / "aggregates.csv");
    std::ofstream table(config.out_dir / "tables.txt");
    aggregate_logs(logs_path, csv, table);
  }

  RunStats stats;
  stats.executed = executed.load();
  stats.skipped = skipped.load();
  stats.failed = failed.load();
  return stats;
}

void aggregate_logs(const std::filesystem::path& logs, std::ostream& csv,
                    std::ostream& table, Fraction tp) {
  std::ifstream in(logs);
  if (!in) throw ConfigError("cannot open log file: " + logs.string());

  std::map<GroupKey, std::map<std::string, std::vector<double>>> groups;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    const MatchRecord record = MatchRecord::from_json(j);
    if (!record.complete) continue;  // error marker retained in the log only

    const auto game = NormalFormGame::from_json(record.config.at("game"));
    GroupKey key{game.name(), agent_display_name(record.config.at("agent_a")),
                 agent_prompt_mode(record.config.at("agent_a")),
                 agent_display_name(record.config.at("agent_b"))};
    const auto report = compute_metrics(record, game, tp);
    for (const auto& [metric, value] : metric_values(report, game)) {
      groups[key][metric].push_back(value);
    }
  }

  csv << "game,model,prompt,opponent,metric,mean,std,count\n";
  for (const auto& [key, metrics] : groups) {
    for (const auto& [metric, values] : metrics) {
      const auto aggregate = aggregate_values(values);
      csv << csv_field(key.game) << "," << csv_field(key.model) << ","
          << csv_field(key.prompt) << "," << csv_field(key.opponent) << ","
          << csv_field(metric) << "," << format_full(aggregate.mean) << ","
          << format_full(aggregate.stddev) << "," << aggregate.count << "\n";
    }
  }

  // Text tables: one section per (game, metric), rows are (model, prompt),
  // columns are opponents, cells are mean ± std.
  std::map<std::pair<std::string, std::string>,
           std::map<std::pair<std::string, std::string>, std::map<std::string, std::string>>>
      sections;
  for (const auto& [key, metrics] : groups) {
    for (const auto& [metric, values] : metrics) {
      sections[{key.game, metric}][{key.model, key.prompt}][key.opponent] =
          format_mean_std(aggregate_values(values));
    }
  }
  for (const auto& [section, rows] : sections) {
    std::vector<std::string> opponents;
    size_t row_width = std::string("model/prompt").size();
    for (const auto& [row, cells] : rows) {
      row_width = std::max(row_width, row.first.size() + row.second.size() + 1);
      for (const auto& [opponent, _] : cells) {
        if (std::find(opponents.begin(), opponents.end(), opponent) == opponents.end()) {
          opponents.push_back(opponent);
        }
      }
    }
    std::sort(opponents.begin(), opponents.end());
    std::map<std::string, size_t> widths;
    for (const auto& opponent : opponents) widths[opponent] = opponent.size();
    for (const auto& [row, cells] : rows) {
      for (const auto& [opponent, text] : cells) {
        // "±" is a two-byte UTF-8 character; padding counts display columns.
        widths[opponent] = std::max(widths[opponent], text.size() - 2);
      }
    }

    table << "== " << section.first << " :: " << section.second << " ==\n";
    table << std::left << std::setw(static_cast<int>(row_width) + 2) << "model/prompt";
    for (const auto& opponent : opponents) {
      table << "  " << std::setw(static_cast<int>(widths[opponent])) << opponent;
    }
    table << "\n";
    for (const auto& [row, cells] : rows) {
      table << std::setw(static_cast<int>(row_width) + 2)
            << (row.first + "/" + row.second);
      for (const auto& opponent : opponents) {
        const auto it = cells.find(opponent);
        const std::string text = it == cells.end() ? "-" : it->second;
        const size_t pad = text.find("±") != std::string::npos ? 2 : 0;
        table << "  " << std::setw(static_cast<int>(widths[opponent] + pad)) << text;
      }
      table << "\n";
    }
    table << "\n";
  }
}

}  // namespace cfgames
