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

#include "cfgames/llm/llm_agent.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace cfgames::llm {

LlmAgent::LlmAgent(LlmPlayerConfig config, std::shared_ptr<Transport> transport,
                   HintProvider hint_provider)
    : config_(std::move(config)),
      transport_(std::move(transport)),
      hint_provider_(std::move(hint_provider)) {
  if (!transport_) throw std::invalid_argument("llm agent requires a transport");
  if (config_.self_consistency && *config_.self_consistency < 1) {
    throw std::invalid_argument("self_consistency count must be >= 1");
  }
  if (config_.temperature < 0.0) {
    throw std::invalid_argument("temperature must be non-negative");
  }
  if (config_.max_retries < 0) {
    throw std::invalid_argument("max_retries must be non-negative");
  }
}

Move LlmAgent::choose(const NormalFormGame& game, int round, const History& history,
                      RngStream& rng) {
  std::optional<std::string> hint;
  if (hint_provider_) hint = hint_provider_(round);
  std::vector<ChatMessage> messages = render_prompt(game, config_.mode, history, hint);

  Move move;
  last_attempts_.clear();
  const int attempts = config_.max_retries + 1;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    ChatRequest request{config_.model, messages, config_.temperature, config_.top_p,
                        config_.max_tokens};
    ChatResponse response;
    try {
      response = transport_->complete(request);
    } catch (const TransportError& e) {
      throw AgentUnavailableError(std::string("llm transport failed: ") + e.what());
    }
    move.prompt_tokens += response.prompt_tokens;
    move.completion_tokens += response.completion_tokens;

    const Extraction extraction =
        extract_action(response.text, game, config_.last_token_rule);
    last_attempts_.push_back(Attempt{response.text, extraction.action,
                                     extraction.rejection, response.prompt_tokens,
                                     response.completion_tokens});
    if (extraction.ok()) {
      move.action = game.action(*extraction.action);
      return move;
    }
    move.invalid_attempts++;
    messages.push_back({"assistant", response.text});
    messages.push_back({"user", retry_instruction(game)});
  }

  move.action = game.action(rng.uniform_index(game.num_actions()));
  move.fallback = true;
  return move;
}

std::string LlmAgent::describe() const {
  return "llm:" + config_.model + ":" + to_string(config_.mode);
}

namespace {

class SelfConsistentAgent : public Agent {
 public:
  SelfConsistentAgent(AgentPtr inner, int samples)
      : inner_(std::move(inner)), samples_(samples) {
    if (!inner_) throw std::invalid_argument("self-consistency requires an inner agent");
    if (samples_ < 1) throw std::invalid_argument("self-consistency requires k >= 1");
  }

  Move choose(const NormalFormGame& game, int round, const History& history,
              RngStream& rng) override {
    Move total;
    std::vector<int> counts(static_cast<size_t>(game.num_actions()), 0);
    for (int i = 0; i < samples_; ++i) {
      const Move sample = inner_->choose(game, round, history, rng);
      total.prompt_tokens += sample.prompt_tokens;
      total.completion_tokens += sample.completion_tokens;
      total.invalid_attempts += sample.invalid_attempts;
      total.fallback = total.fallback || sample.fallback;
      counts[static_cast<size_t>(sample.action.index)]++;
    }
    const int top = *std::max_element(counts.begin(), counts.end());
    std::vector<int> tied;
    for (int a = 0; a < game.num_actions(); ++a) {
      if (counts[static_cast<size_t>(a)] == top) tied.push_back(a);
    }
    const int winner =
        tied.size() == 1 ? tied.front()
                         : tied[static_cast<size_t>(rng.uniform_index(
                               static_cast<int>(tied.size())))];
    total.action = game.action(winner);
    return total;
  }

  std::string describe() const override {
    return "sc(" + inner_->describe() + ",k=" + std::to_string(samples_) + ")";
  }

  bool uses_self_consistency() const override { return true; }

 private:
  AgentPtr inner_;
  int samples_;
};

}  // namespace

AgentPtr make_self_consistent(AgentPtr inner, int samples) {
  return std::make_unique<SelfConsistentAgent>(std::move(inner), samples);
}

}  // namespace cfgames::llm
