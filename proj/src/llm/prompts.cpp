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

#include "cfgames/llm/prompts.hpp"

#include <sstream>

namespace cfgames::llm {

namespace {

constexpr const char* kSharedRules =
    "In each round of the game you play against one other player. You and the "
    "other player each make a move privately. The moves are compared and you "
    "and the other player get your reward/penalty based on the moves made.\n"
    "\n"
    "Message Formats:\n"
    "Move messages are sent when you want to make a move.\n"
    "Move messages are formatted like this:\n"
    "[move] (Optional explanation here) Your move here\n"
    "\n"
    "Hint messages are received when you are provided with advice and "
    "directions. These messages are important and you should pay attention to "
    "them.\n"
    "Hint messages are formatted like this:\n"
    "[hint] Hint message here\n"
    "\n"
    "Objective:\n"
    "Maximize your points and/or minimize your penalties.\n"
    "\n"
    "Tips:\n"
    "- Try to formulate a strategy by reasoning on the provided information.\n"
    "- Pay attention to the payoff matrix of the game moves.\n"
    "- You should only send move messages. Hint messages will only be provided "
    "to you.\n"
    "- Pay attention to hints when provided.\n"
    "- Do not use markdown formatting in your messages (e.g., bold text, "
    "italic text, etc.).";

const std::string kPdDescription =
    std::string(
        "You are playing a game against other player(s). The game is based on "
        "strategic moves.\n"
        "\n"
        "Game Description:\n"
        "There are two possible moves: {a} and {b}.\n"
        "- if both players choose {a}, both get {aa} points.\n"
        "- if both players choose {b}, both get {bb} points.\n"
        "- if you choose {a} and the other player chooses {b}, you get {ab} "
        "points and the other player gets {ba} points.\n"
        "- if you choose {b} and the other player chooses {a}, you get {ba} "
        "points and the other player gets {ab} points.\n"
        "\n") +
    kSharedRules;

const std::string kRpsDescription =
    std::string(
        "You are playing a game against other player(s). The game is based on "
        "making moves.\n"
        "\n"
        "Game Description:\n"
        "There are three possible moves: {a}, {b}, and {c}.\n"
        "- {a} beats {c} giving the winner {ac} points and the loser -{ac} "
        "points.\n"
        "- {b} beats {a} giving the winner {ba} points and the loser -{ba} "
        "points.\n"
        "- {c} beats {b} giving the winner {cb} points and the loser -{cb} "
        "points.\n"
        "- If both players make the same move, the game is a tie and no points "
        "are awarded.\n"
        "\n") +
    kSharedRules;

std::string mode_wrapper(PromptMode mode) {
  switch (mode) {
    case PromptMode::kZeroShot:
      return "You are playing a repeated game. At each round, choose one of the "
             "available actions. The history of previous rounds is provided "
             "below. Based on this, select your next move. Output only your "
             "final action.";
    case PromptMode::kChainOfThought:
      return "You are playing a repeated game. Analyze the opponent's behavior "
             "and think step by step before deciding your move. Then output "
             "your final action.";
    case PromptMode::kSoloPerformance:
      return "You are playing a repeated game. Consider multiple possible "
             "strategies and perspectives before deciding your next move. "
             "Reflect briefly on the opponent's behavior and select the best "
             "action.";
  }
  throw TemplateError("unknown prompting mode");
}

}  // namespace

std::string to_string(PromptMode mode) {
  switch (mode) {
    case PromptMode::kZeroShot: return "zs";
    case PromptMode::kChainOfThought: return "cot";
    case PromptMode::kSoloPerformance: return "spp";
  }
  throw TemplateError("unknown prompting mode");
}

PromptMode prompt_mode_from_string(std::string_view text) {
  if (text == "zs") return PromptMode::kZeroShot;
  if (text == "cot") return PromptMode::kChainOfThought;
  if (text == "spp") return PromptMode::kSoloPerformance;
  throw TemplateError("unknown prompting mode: " + std::string(text));
}

std::string fill_placeholders(const std::string& text,
                              const std::map<std::string, std::string>& bindings) {
  std::string out;
  out.reserve(text.size());
  size_t pos = 0;
  while (pos < text.size()) {
    const size_t open = text.find('{', pos);
    if (open == std::string::npos) {
      out.append(text, pos, std::string::npos);
      break;
    }
    const size_t close = text.find('}', open);
    if (close == std::string::npos) {
      throw TemplateError("unterminated placeholder in template");
    }
    out.append(text, pos, open - pos);
    const std::string key = text.substr(open + 1, close - open - 1);
    const auto it = bindings.find(key);
    if (it == bindings.end()) {
      throw TemplateError("unbound template placeholder: {" + key + "}");
    }
    out.append(it->second);
    pos = close + 1;
  }
  return out;
}

std::string game_description_template(GameFamily family) {
  return family == GameFamily::kPdLike ? kPdDescription : kRpsDescription;
}

std::string render_game_description(const NormalFormGame& game) {
  std::map<std::string, std::string> bindings;
  if (game.family() == GameFamily::kPdLike) {
    if (game.num_actions() != 2) {
      throw TemplateError("pd-like description requires exactly two actions");
    }
    bindings["a"] = game.action(0).label;
    bindings["b"] = game.action(1).label;
    bindings["aa"] = std::to_string(game.payoff_for(0, 0, 0));
    bindings["ab"] = std::to_string(game.payoff_for(0, 0, 1));
    bindings["ba"] = std::to_string(game.payoff_for(0, 1, 0));
    bindings["bb"] = std::to_string(game.payoff_for(0, 1, 1));
  } else {
    if (game.num_actions() != 3) {
      throw TemplateError("rps-like description requires exactly three actions");
    }
    // Win magnitudes of the cycle: first beats third, second beats first,
    // third beats second. Anything else does not fit the template.
    const int ac = game.payoff_for(0, 0, 2);
    const int ba = game.payoff_for(0, 1, 0);
    const int cb = game.payoff_for(0, 2, 1);
    if (ac <= 0 || ba <= 0 || cb <= 0) {
      throw TemplateError("game " + game.name() + " does not follow the cyclic layout");
    }
    bindings["a"] = game.action(0).label;
    bindings["b"] = game.action(1).label;
    bindings["c"] = game.action(2).label;
    bindings["ac"] = std::to_string(ac);
    bindings["ba"] = std::to_string(ba);
    bindings["cb"] = std::to_string(cb);
  }
  return fill_placeholders(game_description_template(game.family()), bindings);
}

std::string render_history(const NormalFormGame& game, const History& history) {
  if (history.empty()) return "(no previous rounds)";
  std::ostringstream out;
  for (size_t i = 0; i < history.size(); ++i) {
    const auto& entry = history[i];
    if (i) out << "\n";
    out << "Round " << (i + 1) << ": you played " << game.action(entry.own_action).label
        << " (" << entry.own_payoff << " points), opponent played "
        << game.action(entry.opp_action).label << " (" << entry.opp_payoff
        << " points)";
  }
  return out.str();
}

std::vector<ChatMessage> render_prompt(const NormalFormGame& game, PromptMode mode,
                                       const History& history,
                                       const std::optional<std::string>& hint) {
  std::ostringstream labels;
  for (int a = 0; a < game.num_actions(); ++a) {
    labels << (a ? ", " : "") << game.action(a).label;
  }
  std::ostringstream user;
  user << mode_wrapper(mode) << "\n\nHistory: " << render_history(game, history)
       << "\n\nAvailable actions: " << labels.str();

  std::vector<ChatMessage> messages;
  messages.push_back({"system", render_game_description(game)});
  if (hint) messages.push_back({"user", "[hint] " + *hint});
  messages.push_back({"user", user.str()});
  return messages;
}

std::string retry_instruction(const NormalFormGame& game) {
  std::ostringstream labels;
  for (int a = 0; a < game.num_actions(); ++a) {
    labels << (a ? ", " : "") << game.action(a).label;
  }
  return "Your previous message did not contain exactly one valid move. "
         "Resubmit your answer as a single move message, formatted like this: "
         "[move] Your move here. Valid moves: " +
         labels.str() + ".";
}

}  // namespace cfgames::llm
