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

#include "cfgames/llm/extract.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <string>
#include <vector>

namespace cfgames::llm {

namespace {

bool iequals(std::string_view lhs, std::string_view rhs) {
  return lhs.size() == rhs.size() &&
         std::equal(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(), [](char a, char b) {
           return std::tolower(static_cast<unsigned char>(a)) ==
                  std::tolower(static_cast<unsigned char>(b));
         });
}

bool is_token_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

}  // namespace

std::string to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::kNoAction: return "no-action";
    case RejectReason::kAmbiguous: return "ambiguous";
    case RejectReason::kFormat: return "format";
  }
  return "unknown";
}

Extraction extract_action(std::string_view raw, const NormalFormGame& game,
                          bool last_token_rule) {
  const bool blank = raw.find_first_not_of(" \t\r\n") == std::string_view::npos;
  if (blank) return Extraction{std::nullopt, RejectReason::kFormat};

  std::vector<int> occurrences;
  size_t pos = 0;
  while (pos < raw.size()) {
    while (pos < raw.size() && !is_token_char(raw[pos])) ++pos;
    size_t end = pos;
    while (end < raw.size() && is_token_char(raw[end])) ++end;
    if (end > pos) {
      const std::string_view token = raw.substr(pos, end - pos);
      for (int a = 0; a < game.num_actions(); ++a) {
        if (iequals(token, game.action_labels()[static_cast<size_t>(a)])) {
          occurrences.push_back(a);
          break;
        }
      }
    }
    pos = end;
  }

  if (occurrences.empty()) return Extraction{std::nullopt, RejectReason::kNoAction};
  const std::set<int> distinct(occurrences.begin(), occurrences.end());
  if (distinct.size() == 1) return Extraction{occurrences.front(), std::nullopt};
  if (last_token_rule) return Extraction{occurrences.back(), std::nullopt};
  return Extraction{std::nullopt, RejectReason::kAmbiguous};
}

}  // namespace cfgames::llm
