#pragma once

#include <atomic>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "hiersum/backend.hpp"
#include "hiersum/error.hpp"
#include "hiersum/text_util.hpp"

namespace hiersum::testing {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(HIERSUM_FIXTURES_DIR) / name;
}

inline std::filesystem::path test_data(const std::string& name) {
  return std::filesystem::path(HIERSUM_TEST_DATA_DIR) / name;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "t") {
    static std::atomic<int> counter{0};
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("hiersum-" + tag + "-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  write_file_atomic(path, text);
}

/// Replies from a script, in order; the last reply repeats once exhausted.
class ScriptedBackend : public Backend {
 public:
  explicit ScriptedBackend(std::vector<std::string> replies) : replies_(std::move(replies)) {}

  std::string model_id() const override { return "scripted"; }

  std::vector<ChatRequest> requests() const {
    std::lock_guard lock(mutex_);
    return requests_;
  }

  std::vector<Embedding> embeddings;  // returned verbatim by embed()

 protected:
  ChatResponse do_complete(const ChatRequest& request) override {
    std::lock_guard lock(mutex_);
    requests_.push_back(request);
    ChatResponse r;
    r.text = replies_.empty() ? "" : replies_[std::min(next_, replies_.size() - 1)];
    ++next_;
    r.model_id = "scripted";
    return r;
  }
  std::vector<Embedding> do_embed(const std::vector<std::string>&) override { return embeddings; }

 private:
  mutable std::mutex mutex_;
  std::vector<std::string> replies_;
  std::size_t next_ = 0;
  std::vector<ChatRequest> requests_;
};

/// The mock echo backend, except requests whose user text contains
/// `poison` fail with a retryable 500.
class FailingBackend : public MockBackend {
 public:
  explicit FailingBackend(std::string poison) : poison_(std::move(poison)) {}

  std::atomic<int> failures{0};

 protected:
  ChatResponse do_complete(const ChatRequest& request) override {
    if (request.user_text.find(poison_) != std::string::npos) {
      ++failures;
      throw BackendError("HTTP 500 from backend", 500, true);
    }
    return MockBackend::do_complete(request);
  }

 private:
  std::string poison_;
};

/// Byte-level snapshot of every regular file under a directory.
inline std::map<std::string, std::string> snapshot_tree(const std::filesystem::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) out[std::filesystem::relative(e.path(), root).generic_string()] = read_file_bytes(e.path());
  }
  return out;
}

}  // namespace hiersum::testing
