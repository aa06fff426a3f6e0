#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "hiersum/pipeline.hpp"

namespace hiersum {

inline constexpr const char* kSchemaVersion = "1";

struct OutputOptions {
  bool markdown = false;  // also write .md mirrors
  bool include_text = false;
};

/// Writes segments/, files/, packages/, repo.json and report.json under
/// out_dir. Every document carries "schema_version": "1"; content depends
/// only on the run's inputs, so warm-cache reruns are byte-identical.
void write_output_tree(const std::filesystem::path& out_dir, const RunResult& result, const OutputOptions& options = {});

/// "com/acme/A.java" -> "com__acme__A.java"
std::string flatten_path(const std::string& repo_relative_path);
/// File name stem for a package document ("" -> "_default").
std::string package_file_stem(const std::string& package_name);

std::filesystem::path file_summary_path(const std::filesystem::path& out_dir, const std::string& repo_relative_path);

/// The stored full_text of a file summary, or nullopt when absent/unreadable.
std::optional<std::string> read_file_summary_text(const std::filesystem::path& out_dir,
                                                  const std::string& repo_relative_path);

}  // namespace hiersum
