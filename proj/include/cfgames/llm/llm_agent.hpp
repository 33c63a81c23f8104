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

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "cfgames/agents.hpp"
#include "cfgames/llm/extract.hpp"
#include "cfgames/llm/prompts.hpp"
#include "cfgames/llm/transport.hpp"

namespace cfgames::llm {

// One model reply and what became of it.
struct Attempt {
  std::string raw;
  std::optional<int> action;
  std::optional<RejectReason> rejection;
  long long prompt_tokens = 0;
  long long completion_tokens = 0;
};

struct LlmPlayerConfig {
  std::string model = "default";
  PromptMode mode = PromptMode::kZeroShot;
  double temperature = 0.7;
  double top_p = 1.0;
  int max_tokens = 50;
  // Samples per round when self-consistency is enabled: 3 for two-action
  // games, 5 for three-action games.
  std::optional<int> self_consistency;
  int max_retries = 3;
  // Resolve multi-label replies by taking the last valid token instead of
  // re-prompting.
  bool last_token_rule = false;
};

// Provides per-round advice text; reserved, no built-in experiment sends one.
using HintProvider = std::function<std::optional<std::string>(int round)>;

// A language-model player: renders the prompt, requests a completion,
// extracts the action, and re-prompts on rejection up to max_retries extra
// attempts. When the budget is exhausted the round is completed with a
// uniformly random valid action, flagged as a fallback, and every rejected
// attempt is counted. Token usage accumulates across all attempts.
class LlmAgent : public Agent {
 public:
  LlmAgent(LlmPlayerConfig config, std::shared_ptr<Transport> transport,
           HintProvider hint_provider = nullptr);

  Move choose(const NormalFormGame& game, int round, const History& history,
              RngStream& rng) override;
  std::string describe() const override;

  const LlmPlayerConfig& config() const { return config_; }
  // Attempt-by-attempt trace of the most recent choose() call.
  const std::vector<Attempt>& last_attempts() const { return last_attempts_; }

 private:
  LlmPlayerConfig config_;
  std::shared_ptr<Transport> transport_;
  HintProvider hint_provider_;
  std::vector<Attempt> last_attempts_;
};

// Draws k independent samples through the inner agent's full pipeline and
// plays the modal action; ties at the highest frequency break uniformly at
// random. Token and invalid-attempt counts sum over all samples, and a sample
// that exhausted its retries contributes its fallback action to the vote.
AgentPtr make_self_consistent(AgentPtr inner, int samples);

}  // namespace cfgames::llm
