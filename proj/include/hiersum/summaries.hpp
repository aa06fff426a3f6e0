#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hiersum/segmenter.hpp"

namespace hiersum {

/// Stands in for any summary whose completion failed. Coverage audits treat
/// it as mentioning nothing.
inline constexpr std::string_view kSummaryUnavailable = "[summary unavailable]";

struct Provenance {
  std::string model_id;
  std::string template_id;
  std::string template_version;
  std::string created_at;
};

struct SegmentSummary {
  std::string path;
  SegmentKind kind = SegmentKind::Function;
  std::string name;
  SourceSpan span;
  bool is_static = false;
  std::string text;
  Provenance provenance;
  bool failed = false;
};

struct FileSummary {
  std::string path;
  std::string role;
  std::string key_functionality;
  std::string purpose;
  std::string full_text;  // raw model output
  bool grounded = false;
  bool parse_warning = false;
  bool failed = false;
  Provenance provenance;
};

struct PackageSummary {
  std::string package_name;
  std::string text;
  std::vector<std::string> children;  // file paths
  Provenance provenance;
  bool failed = false;
};

struct RepoSummary {
  std::string root;
  std::string text;
  std::vector<std::string> children;  // package names
  Provenance provenance;
  bool failed = false;
};

}  // namespace hiersum
