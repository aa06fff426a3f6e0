#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "hiersum/backend.hpp"
#include "hiersum/prompt_engine.hpp"
#include "hiersum/segmenter.hpp"
#include "hiersum/summaries.hpp"
#include "hiersum/summary_cache.hpp"

namespace hiersum {

enum class SummaryLevel { Segment = 0, File = 1, Package = 2, Repo = 3 };

std::string_view to_string(SummaryLevel level);
std::optional<SummaryLevel> parse_summary_level(std::string_view name);

struct PipelineOptions {
  PromptStyle style = PromptStyle::StructuredOneShot;
  GroundingContext grounding;
  int concurrency = 4;
  std::size_t max_prompt_chars = 96000;
  int segment_max_tokens = 512;
  int aggregate_max_tokens = 1024;
  SummaryLevel level = SummaryLevel::Repo;
};

struct Failure {
  std::string level;  // segment | file | package | repo
  std::string path;   // file path, package name or repo name
  std::string name;   // segment name, empty above segment level
  std::string message;
};

struct RunReport {
  std::string root;
  std::size_t files = 0;
  std::size_t packages = 0;
  std::map<std::string, std::size_t> segments_by_kind;
  std::size_t segment_summaries = 0;
  std::size_t file_summaries = 0;
  std::size_t package_summaries = 0;
  std::size_t repo_summaries = 0;
  std::vector<Failure> failures;
  std::vector<Diagnostic> diagnostics;
  std::vector<std::string> warnings;
  std::int64_t prompt_tokens = 0;
  std::int64_t completion_tokens = 0;

  // Run-specific; printed, never written into the output tree.
  std::uint64_t completion_requests = 0;
  std::uint64_t cache_hits = 0;
  double wall_time_ms = 0.0;

  bool partial() const { return !failures.empty() || !diagnostics.empty(); }
};

struct RunResult {
  RepoModel model;
  std::map<std::string, std::vector<SegmentSummary>> segment_summaries;  // by file path
  std::vector<FileSummary> file_summaries;                               // path order
  std::vector<PackageSummary> package_summaries;                         // name order
  std::optional<RepoSummary> repo_summary;
  RunReport report;
};

struct FileSections {
  std::string role;
  std::string key_functionality;
  std::string purpose;
};

/// Pulls Role / Key functionality / Purpose sections out of a model reply by
/// case-insensitive header matching at line starts (markdown decoration
/// ignored). nullopt unless all three are present and non-empty.
std::optional<FileSections> parse_file_sections(const std::string& text);

/// One level of the hierarchy at a time. Thread-safe: segment and file calls
/// may run concurrently from several workers.
class Summarizer {
 public:
  Summarizer(const PromptEngine& engine, Backend& backend, SummaryCache* cache, PipelineOptions options);

  SegmentSummary summarize_segment(const CodeSegment& segment);
  FileSummary summarize_file(const SourceFile& file, const FileHeader& header,
                             std::vector<SegmentSummary> segment_summaries);
  PackageSummary summarize_package(const std::string& package_name, const std::vector<FileSummary>& file_summaries);
  RepoSummary summarize_repo(const std::string& repo_name, const std::vector<PackageSummary>& package_summaries);

  std::vector<Failure> failures() const;
  std::vector<std::string> warnings() const;
  std::uint64_t cache_hits() const { return cache_hits_.load(); }
  std::int64_t prompt_tokens() const { return prompt_tokens_.load(); }
  std::int64_t completion_tokens() const { return completion_tokens_.load(); }

  const PipelineOptions& options() const { return options_; }

 private:
  struct Completion {
    CacheEntry entry;
    Provenance provenance;
  };

  Completion complete(const RenderedPrompt& prompt, const std::string& grounding_digest, int max_tokens);
  Completion fold(std::vector<std::string> items,
                  const std::function<RenderedPrompt(const std::vector<std::string>&)>& render_merge,
                  const std::string& grounding_digest, const std::string& where);

  void record_failure(Failure failure);
  void warn(std::string message);

  const PromptEngine& engine_;
  Backend& backend_;
  SummaryCache* cache_;
  PipelineOptions options_;
  std::string segment_grounding_digest_;

  mutable std::mutex mutex_;
  std::vector<Failure> failures_;
  std::vector<std::string> warnings_;
  std::atomic<std::uint64_t> cache_hits_{0};
  std::atomic<std::int64_t> prompt_tokens_{0};
  std::atomic<std::int64_t> completion_tokens_{0};
};

/// Segments the repository and summarizes every level up to options.level.
/// Throws ConfigError (before any backend call) when root is unusable.
RunResult run_full(const std::filesystem::path& root, const PromptEngine& engine, Backend& backend,
                   SummaryCache* cache, const PipelineOptions& options, const DiscoveryOptions& discovery = {});

/// Runs fn(0..n-1) on up to `workers` threads; rethrows the first exception.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

std::string repo_display_name(const std::filesystem::path& root);

}  // namespace hiersum
