#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hiersum/backend.hpp"
#include "hiersum/pipeline.hpp"
#include "hiersum/prompt_engine.hpp"

namespace hiersum::cli {

enum ExitCode : int { kExitOk = 0, kExitPartial = 1, kExitFatal = 2 };

struct RunConfig {
  std::filesystem::path repo;
  BackendConfig backend;
  PromptStyle prompt_style = PromptStyle::StructuredOneShot;
  std::optional<std::filesystem::path> grounding_domain;
  std::optional<std::filesystem::path> grounding_problem;
  bool builtin_grounding = false;
  int concurrency = 4;
  std::size_t max_prompt_chars = 96000;
  std::filesystem::path cache_dir = ".hiersum-cache";
  bool use_cache = true;
  std::filesystem::path out_dir = "hiersum-out";
  bool include_text = false;
  bool mock_mode = false;
  SummaryLevel level = SummaryLevel::Repo;
  bool markdown = false;
  std::optional<std::filesystem::path> prompts_dir;
  std::vector<std::string> excluded_dirs{"target", "build", ".git"};

  /// Grounding pair completeness, positive limits, model id outside mock mode.
  /// Throws ConfigError.
  void validate() const;
};

/// Values read from a `--config` YAML file, layered onto `base`. Throws
/// ConfigError on unreadable files, bad types or unknown style names.
RunConfig load_config_file(const std::filesystem::path& path, RunConfig base = {});

/// Command-line flags for `summarize`; every set value wins over the config file.
struct SummarizeFlags {
  std::string repo;
  std::optional<std::string> config;
  std::optional<std::string> backend_url;
  std::optional<std::string> model;
  std::optional<std::string> embedding_model;
  std::optional<double> timeout_s;
  std::optional<std::string> prompt_style;
  std::optional<std::string> grounding_domain;
  std::optional<std::string> grounding_problem;
  bool builtin_grounding = false;
  std::optional<int> concurrency;
  std::optional<std::size_t> max_prompt_chars;
  std::optional<std::string> cache_dir;
  bool no_cache = false;
  std::optional<std::string> out;
  bool mock = false;
  std::optional<std::string> level;
  std::optional<std::string> format;
  bool include_text = false;
  std::optional<std::string> prompts_dir;
  std::vector<std::string> exclude;
};

/// Config file (if any), then flags, then HIERSUM_API_KEY. Throws ConfigError.
RunConfig resolve_run_config(const SummarizeFlags& flags, const std::optional<std::string>& api_key);

/// Runs the pipeline for an already-resolved config. `backend`, when given,
/// replaces the one the config would build.
int cmd_summarize(const RunConfig& config, std::ostream& out, std::ostream& err, Backend* backend = nullptr);

/// Entry point. `backend` is a test seam used by summarize and evaluate.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, Backend* backend = nullptr);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace hiersum::cli
