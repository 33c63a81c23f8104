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

#include "cfgames/llm/transport.hpp"

#include <cstdlib>
#include <fstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "httplib.h"

namespace cfgames::llm {

using nlohmann::json;

MockTransport::MockTransport(const std::filesystem::path& fixture)
    : source_(fixture.string()) {
  std::ifstream in(fixture);
  if (!in) throw TransportError("cannot open mock fixture: " + fixture.string());
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const json j = json::parse(line);
    ChatResponse response;
    response.text = j.at("text").get<std::string>();
    response.prompt_tokens = j.value("prompt_tokens", 0LL);
    response.completion_tokens = j.value("completion_tokens", 0LL);
    responses_.push_back(std::move(response));
  }
}

MockTransport::MockTransport(std::vector<ChatResponse> responses)
    : responses_(std::move(responses)), source_("<inline>") {}

ChatResponse MockTransport::complete(const ChatRequest& /*request*/) {
  std::lock_guard lock(mutex_);
  if (next_ >= responses_.size()) {
    throw TransportError("mock transport exhausted after " +
                         std::to_string(responses_.size()) + " responses (" +
                         source_ + ")");
  }
  return responses_[next_++];
}

std::string MockTransport::describe() const { return "mock:" + source_; }

size_t MockTransport::served() const {
  std::lock_guard lock(mutex_);
  return next_;
}

HttpTransport::HttpTransport(HttpTransportOptions options)
    : options_(std::move(options)), next_allowed_(std::chrono::steady_clock::now()) {
  if (options_.base_url.empty()) {
    throw TransportError("http transport requires a base_url");
  }
  if (!options_.api_key_env.empty()) {
    if (const char* key = std::getenv(options_.api_key_env.c_str())) api_key_ = key;
  }
}

void HttpTransport::acquire_slot() {
  std::unique_lock lock(mutex_);
  slot_available_.wait(lock, [&] { return in_flight_ < options_.max_in_flight; });
  ++in_flight_;
}

void HttpTransport::release_slot() {
  {
    std::lock_guard lock(mutex_);
    --in_flight_;
  }
  slot_available_.notify_one();
}

void HttpTransport::pace() {
  if (options_.min_request_interval_ms <= 0) return;
  std::chrono::steady_clock::time_point wake;
  {
    std::lock_guard lock(mutex_);
    const auto now = std::chrono::steady_clock::now();
    wake = std::max(now, next_allowed_);
    next_allowed_ = wake + std::chrono::milliseconds(options_.min_request_interval_ms);
  }
  std::this_thread::sleep_until(wake);
}

ChatResponse HttpTransport::complete(const ChatRequest& request) {
  json body{{"model", request.model},
            {"temperature", request.temperature},
            {"top_p", request.top_p},
            {"max_tokens", request.max_tokens}};
  body["messages"] = json::array();
  for (const auto& message : request.messages) {
    body["messages"].push_back({{"role", message.role}, {"content", message.content}});
  }
  const std::string payload = body.dump();

  acquire_slot();
  struct SlotGuard {
    HttpTransport* self;
    ~SlotGuard() { self->release_slot(); }
  } guard{this};

  std::string last_error;
  for (int attempt = 0; attempt < options_.max_attempts; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(
          std::chrono::milliseconds(options_.retry_backoff_ms << (attempt - 1)));
    }
    pace();

    httplib::Client client(options_.base_url);
    client.set_connection_timeout(options_.timeout_s);
    client.set_read_timeout(options_.timeout_s);
    httplib::Headers headers;
    if (!api_key_.empty()) {
      headers.emplace(options_.auth_header, options_.auth_prefix + api_key_);
    }

    auto result = client.Post(options_.path, headers, payload, "application/json");
    if (!result) {
      last_error = "connection error: " + httplib::to_string(result.error());
      continue;
    }
    if (result->status == 429 || result->status >= 500) {
      last_error = "http status " + std::to_string(result->status);
      continue;
    }
    if (result->status != 200) {
      throw TransportError("http status " + std::to_string(result->status) + ": " +
                           result->body);
    }

    json parsed;
    try {
      parsed = json::parse(result->body);
    } catch (const json::exception& e) {
      throw TransportError(std::string("malformed completion response: ") + e.what());
    }
    ChatResponse response;
    if (parsed.contains("choices") && !parsed["choices"].empty()) {
      response.text = parsed["choices"][0].at("message").at("content").get<std::string>();
    } else if (parsed.contains("text")) {
      response.text = parsed["text"].get<std::string>();
    } else {
      throw TransportError("completion response exposes no generated text");
    }
    if (parsed.contains("usage")) {
      response.prompt_tokens = parsed["usage"].value("prompt_tokens", 0LL);
      response.completion_tokens = parsed["usage"].value("completion_tokens", 0LL);
    }
    return response;
  }
  throw TransportError("transport failed after " + std::to_string(options_.max_attempts) +
                       " attempts: " + last_error);
}

std::string HttpTransport::describe() const {
  return "http:" + options_.base_url + options_.path;
}

}  // namespace cfgames::llm
