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

#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace cfgames::llm {

struct ChatMessage {
  std::string role;  // "system", "user" or "assistant"
  std::string content;
};

struct ChatRequest {
  std::string model;
  std::vector<ChatMessage> messages;
  double temperature = 0.7;
  double top_p = 1.0;
  int max_tokens = 50;
};

struct ChatResponse {
  std::string text;
  long long prompt_tokens = 0;
  long long completion_tokens = 0;
};

class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Minimal chat-completion exchange: messages in, text plus token usage out.
// Any provider or local server can be adapted with a thin shim.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual ChatResponse complete(const ChatRequest& request) = 0;
  virtual std::string describe() const = 0;
};

// Serves scripted responses in order from a JSONL fixture (one object per
// expected request: {"text": ..., "prompt_tokens": ..., "completion_tokens":
// ...}). Throws TransportError once the fixture is exhausted.
class MockTransport : public Transport {
 public:
  explicit MockTransport(const std::filesystem::path& fixture);
  explicit MockTransport(std::vector<ChatResponse> responses);

  ChatResponse complete(const ChatRequest& request) override;
  std::string describe() const override;
  size_t served() const;

 private:
  mutable std::mutex mutex_;
  std::vector<ChatResponse> responses_;
  size_t next_ = 0;
  std::string source_;
};

struct HttpTransportOptions {
  std::string base_url;                        // e.g. "http://localhost:8080"
  std::string path = "/v1/chat/completions";
  std::string api_key_env = "CFGAMES_API_KEY";  // credentials only via environment
  std::string auth_header = "Authorization";
  std::string auth_prefix = "Bearer ";
  int max_attempts = 3;          // network/429/5xx retries with backoff
  int retry_backoff_ms = 250;
  int min_request_interval_ms = 0;  // per-endpoint rate limit
  int max_in_flight = 4;
  int timeout_s = 120;
};

// HTTP POST of {model, messages, temperature, top_p, max_tokens}; expects the
// generated text in choices[0].message.content (or a top-level "text") and
// token counts under "usage". Requests from concurrent matches are bounded by
// max_in_flight and spaced by min_request_interval_ms.
class HttpTransport : public Transport {
 public:
  explicit HttpTransport(HttpTransportOptions options);

  ChatResponse complete(const ChatRequest& request) override;
  std::string describe() const override;

 private:
  void acquire_slot();
  void release_slot();
  void pace();

  HttpTransportOptions options_;
  std::string api_key_;
  std::mutex mutex_;
  std::condition_variable slot_available_;
  int in_flight_ = 0;
  std::chrono::steady_clock::time_point next_allowed_;
};

}  // namespace cfgames::llm
