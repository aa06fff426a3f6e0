#include "hiersum/backend.hpp"

#include <httplib.h>

#include <chrono>
#include <cmath>
#include <memory>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <thread>

#include "hiersum/error.hpp"
#include "hiersum/tokenize.hpp"

namespace hiersum {

using nlohmann::json;

ChatResponse Backend::complete(const ChatRequest& request) {
  if (request.user_text.empty()) throw std::invalid_argument("chat request has empty user text");
  if (request.max_output_tokens <= 0) throw std::invalid_argument("max_output_tokens must be positive");
  completion_calls_.fetch_add(1);
  return do_complete(request);
}

std::vector<Embedding> Backend::embed(const std::vector<std::string>& texts) {
  if (texts.empty()) throw std::invalid_argument("embedding request has no texts");
  for (const auto& t : texts) {
    if (t.empty()) throw std::invalid_argument("embedding request contains an empty text");
  }
  embedding_calls_.fetch_add(1);
  auto vectors = do_embed(texts);
  if (vectors.size() != texts.size()) {
    throw ProtocolError("embedding count " + std::to_string(vectors.size()) + " does not match input count " +
                        std::to_string(texts.size()));
  }
  for (const auto& v : vectors) {
    if (v.size() != vectors.front().size()) throw ProtocolError("embedding dimensions differ within a batch");
  }
  return vectors;
}

// ---------------------------------------------------------------------------
// HTTP

namespace {

std::string excerpt(const std::string& body) {
  constexpr std::size_t kMax = 300;
  return body.size() <= kMax ? body : body.substr(0, kMax) + "...";
}

}  // namespace

HttpBackend::HttpBackend(BackendConfig config) : config_(std::move(config)) {
  const std::string& url = config_.base_url;
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw ConfigError("backend URL needs a scheme: " + url);
  const std::string scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") throw ConfigError("unsupported backend URL scheme: " + scheme);
  const auto path_start = url.find('/', scheme_end + 3);
  scheme_host_port_ = url.substr(0, path_start);
  if (path_start != std::string::npos) path_prefix_ = url.substr(path_start);
  while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
  if (config_.timeout_s <= 0) throw ConfigError("backend timeout must be positive");
  if (config_.max_retries < 0) throw ConfigError("max_retries must not be negative");
}

std::string HttpBackend::post_with_retries(const std::string& path, const std::string& body) {
  httplib::Client client(scheme_host_port_);
  const auto timeout = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::duration<double>(config_.timeout_s));
  client.set_connection_timeout(std::chrono::duration_cast<std::chrono::seconds>(timeout).count(),
                                static_cast<long>(timeout.count() % 1000000));
  client.set_read_timeout(std::chrono::duration_cast<std::chrono::seconds>(timeout).count(),
                          static_cast<long>(timeout.count() % 1000000));
  client.set_write_timeout(std::chrono::duration_cast<std::chrono::seconds>(timeout).count(),
                           static_cast<long>(timeout.count() % 1000000));
  httplib::Headers headers;
  if (config_.api_key && !config_.api_key->empty()) {
    headers.emplace("Authorization", "Bearer " + *config_.api_key);
  }
  const std::string full_path = path_prefix_ + path;

  double delay = config_.retry_backoff_s;
  std::string last_error;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::duration<double>(delay));
      delay *= 2;
    }
    auto res = client.Post(full_path, headers, body, "application/json");
    if (!res) {
      last_error = "request to " + scheme_host_port_ + full_path + " failed: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 200 && res->status < 300) return res->body;
    if (res->status >= 400 && res->status < 500) {
      throw BackendError("HTTP " + std::to_string(res->status) + " from " + full_path + ": " + excerpt(res->body),
                         res->status, false);
    }
    last_error = "HTTP " + std::to_string(res->status) + " from " + full_path + ": " + excerpt(res->body);
  }
  throw BackendError(last_error + " (after " + std::to_string(config_.max_retries + 1) + " attempts)", 0, true);
}

ChatResponse HttpBackend::do_complete(const ChatRequest& request) {
  json messages = json::array();
  if (!request.system_text.empty()) messages.push_back({{"role", "system"}, {"content", request.system_text}});
  messages.push_back({{"role", "user"}, {"content", request.user_text}});
  const json payload = {{"model", config_.model_id},
                        {"messages", messages},
                        {"temperature", request.temperature.value_or(config_.temperature)},
                        {"max_tokens", request.max_output_tokens}};

  const auto started = std::chrono::steady_clock::now();
  const std::string body = post_with_retries("/v1/chat/completions", payload.dump());
  const auto elapsed = std::chrono::steady_clock::now() - started;

  const json doc = json::parse(body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw ProtocolError("chat completion response is not a JSON object");
  if (!doc.contains("choices") || !doc["choices"].is_array() || doc["choices"].empty()) {
    throw ProtocolError("chat completion response has no choices");
  }
  const json& choice = doc["choices"][0];
  if (!choice.is_object() || !choice.contains("message") || !choice["message"].is_object() ||
      !choice["message"].contains("content") || !choice["message"]["content"].is_string()) {
    throw ProtocolError("chat completion choice has no message content");
  }
  ChatResponse out;
  out.text = choice["message"]["content"].get<std::string>();
  out.model_id = doc.contains("model") && doc["model"].is_string() ? doc["model"].get<std::string>() : config_.model_id;
  if (doc.contains("usage") && doc["usage"].is_object()) {
    const json& usage = doc["usage"];
    if (usage.contains("prompt_tokens") && usage["prompt_tokens"].is_number_integer()) {
      out.prompt_tokens = usage["prompt_tokens"].get<std::int64_t>();
    }
    if (usage.contains("completion_tokens") && usage["completion_tokens"].is_number_integer()) {
      out.completion_tokens = usage["completion_tokens"].get<std::int64_t>();
    }
  }
  out.latency_ms = std::chrono::duration<double, std::milli>(elapsed).count();
  return out;
}

std::vector<Embedding> HttpBackend::do_embed(const std::vector<std::string>& texts) {
  const json payload = {{"model", config_.embedding_model_id.empty() ? config_.model_id : config_.embedding_model_id},
                        {"input", texts}};
  const std::string body = post_with_retries("/v1/embeddings", payload.dump());
  const json doc = json::parse(body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("data") || !doc["data"].is_array()) {
    throw ProtocolError("embedding response has no data array");
  }
  std::vector<Embedding> out(texts.size());
  std::vector<bool> seen(texts.size(), false);
  std::size_t position = 0;
  for (const json& item : doc["data"]) {
    if (!item.is_object() || !item.contains("embedding") || !item["embedding"].is_array()) {
      throw ProtocolError("embedding item has no vector");
    }
    std::size_t index = position++;
    if (item.contains("index") && item["index"].is_number_integer()) index = item["index"].get<std::size_t>();
    if (index >= texts.size() || seen[index]) throw ProtocolError("embedding index out of range or repeated");
    seen[index] = true;
    for (const json& v : item["embedding"]) {
      if (!v.is_number()) throw ProtocolError("embedding vector holds a non-number");
      out[index].push_back(v.get<double>());
    }
  }
  if (position != texts.size()) {
    throw ProtocolError("embedding count " + std::to_string(position) + " does not match input count " +
                        std::to_string(texts.size()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Mock

ChatResponse MockBackend::do_complete(const ChatRequest& request) {
  ChatResponse out;
  out.text = std::string(kEchoPrefix) + request.user_text;
  out.model_id = model_id();
  return out;
}

Embedding MockBackend::mock_embedding(const std::string& text) {
  Embedding v(kEmbeddingDim, 0.0);
  for (const auto& token : tokenize(text)) {
    // FNV-1a, 32 bit.
    std::uint32_t h = 2166136261u;
    for (unsigned char c : token) {
      h ^= c;
      h *= 16777619u;
    }
    v[h % kEmbeddingDim] += 1.0;
  }
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  if (norm > 0.0) {
    for (double& x : v) x /= norm;
  }
  return v;
}

std::vector<Embedding> MockBackend::do_embed(const std::vector<std::string>& texts) {
  std::vector<Embedding> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(mock_embedding(t));
  return out;
}

}  // namespace hiersum
