#include "hiersum/summary_cache.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <system_error>

#include "hiersum/error.hpp"
#include "hiersum/text_util.hpp"

namespace hiersum {

namespace fs = std::filesystem;
using nlohmann::json;

SummaryCache::SummaryCache(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (!fs::is_directory(dir_, ec)) throw ConfigError("cannot create cache directory " + dir_.string());
}

std::string SummaryCache::make_key(const std::string& model_id, const std::string& template_id,
                                   const std::string& template_version, const std::string& grounding_digest,
                                   const std::string& prompt_text) {
  std::string material;
  for (const std::string* part : {&model_id, &template_id, &template_version, &grounding_digest}) {
    material += *part;
    material.push_back('\0');
  }
  material += sha256_hex(prompt_text);
  return sha256_hex(material);
}

fs::path SummaryCache::path_for(const std::string& key) const {
  const bool hex = key.size() == 64 && std::all_of(key.begin(), key.end(), [](char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
  });
  if (!hex) throw std::invalid_argument("cache key is not a sha256 hex digest");
  return dir_ / key.substr(0, 2) / (key + ".json");
}

std::optional<CacheEntry> SummaryCache::get(const std::string& key) const {
  const fs::path path = path_for(key);
  std::error_code ec;
  if (!fs::exists(path, ec)) return std::nullopt;
  std::string raw;
  try {
    raw = read_file_bytes(path);
  } catch (const Error&) {
    return std::nullopt;
  }
  const json doc = json::parse(raw, nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("text") || !doc["text"].is_string()) {
    return std::nullopt;  // a corrupt entry is a miss and gets rewritten
  }
  CacheEntry entry;
  entry.text = doc["text"].get<std::string>();
  entry.model_id = doc.value("model_id", "");
  entry.created_at = doc.value("created_at", "");
  entry.prompt_tokens = doc.value("prompt_tokens", std::int64_t{0});
  entry.completion_tokens = doc.value("completion_tokens", std::int64_t{0});
  return entry;
}

void SummaryCache::put(const std::string& key, const CacheEntry& entry) const {
  const json doc = {{"text", entry.text},
                    {"model_id", entry.model_id},
                    {"created_at", entry.created_at},
                    {"prompt_tokens", entry.prompt_tokens},
                    {"completion_tokens", entry.completion_tokens}};
  write_file_atomic(path_for(key), doc.dump(1));
}

}  // namespace hiersum
