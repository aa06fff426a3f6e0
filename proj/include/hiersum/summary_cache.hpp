#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace hiersum {

struct CacheEntry {
  std::string text;
  std::string model_id;
  std::string created_at;
  std::int64_t prompt_tokens = 0;
  std::int64_t completion_tokens = 0;
};

/// Directory-backed, content-addressed store of completion outputs. Writes
/// are atomic (temp file + rename), so concurrent workers may share one.
class SummaryCache {
 public:
  explicit SummaryCache(std::filesystem::path dir);

  /// sha256 over every input that can change the completion.
  static std::string make_key(const std::string& model_id, const std::string& template_id,
                              const std::string& template_version, const std::string& grounding_digest,
                              const std::string& prompt_text);

  /// Keys must come from make_key (64 lowercase hex); anything else throws
  /// std::invalid_argument.
  std::optional<CacheEntry> get(const std::string& key) const;
  void put(const std::string& key, const CacheEntry& entry) const;

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path path_for(const std::string& key) const;

  std::filesystem::path dir_;
};

}  // namespace hiersum
