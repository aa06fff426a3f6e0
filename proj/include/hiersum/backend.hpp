#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hiersum {

struct BackendConfig {
  std::string base_url = "http://localhost:8000";
  std::string model_id;
  std::string embedding_model_id;
  double timeout_s = 120.0;
  int max_retries = 3;
  double temperature = 0.0;
  std::optional<std::string> api_key;
  /// First retry delay; doubles on every further attempt.
  double retry_backoff_s = 1.0;
};

struct ChatRequest {
  std::string system_text;
  std::string user_text;
  int max_output_tokens = 512;
  std::optional<double> temperature;
};

struct ChatResponse {
  std::string text;
  std::int64_t prompt_tokens = 0;
  std::int64_t completion_tokens = 0;
  std::string model_id;
  double latency_ms = 0.0;
};

using Embedding = std::vector<double>;

/// A chat-completion + embedding endpoint. complete() and embed() validate
/// the request and count calls; subclasses only implement the transport.
/// Safe to share across threads.
class Backend {
 public:
  virtual ~Backend() = default;

  ChatResponse complete(const ChatRequest& request);
  std::vector<Embedding> embed(const std::vector<std::string>& texts);

  virtual std::string model_id() const = 0;
  virtual bool is_mock() const { return false; }

  std::uint64_t completion_calls() const { return completion_calls_.load(); }
  std::uint64_t embedding_calls() const { return embedding_calls_.load(); }

 protected:
  virtual ChatResponse do_complete(const ChatRequest& request) = 0;
  virtual std::vector<Embedding> do_embed(const std::vector<std::string>& texts) = 0;

 private:
  std::atomic<std::uint64_t> completion_calls_{0};
  std::atomic<std::uint64_t> embedding_calls_{0};
};

/// OpenAI-compatible HTTP endpoint: POST <base_url>/v1/chat/completions and
/// <base_url>/v1/embeddings.
class HttpBackend : public Backend {
 public:
  explicit HttpBackend(BackendConfig config);

  std::string model_id() const override { return config_.model_id; }
  const BackendConfig& config() const { return config_; }

 protected:
  ChatResponse do_complete(const ChatRequest& request) override;
  std::vector<Embedding> do_embed(const std::vector<std::string>& texts) override;

 private:
  std::string post_with_retries(const std::string& path, const std::string& body);

  BackendConfig config_;
  std::string scheme_host_port_;
  std::string path_prefix_;
};

/// Deterministic stand-in used by tests and --mock runs. Completion echoes
/// the user text; embeddings are 8-dim hashed bag-of-tokens, L2-normalized.
class MockBackend : public Backend {
 public:
  static constexpr int kEmbeddingDim = 8;
  static constexpr const char* kEchoPrefix = "ECHO:\n";

  std::string model_id() const override { return "mock"; }
  bool is_mock() const override { return true; }

  static Embedding mock_embedding(const std::string& text);

 protected:
  ChatResponse do_complete(const ChatRequest& request) override;
  std::vector<Embedding> do_embed(const std::vector<std::string>& texts) override;
};

}  // namespace hiersum
