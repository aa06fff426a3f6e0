#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hiersum/segmenter.hpp"

namespace hiersum {

struct CoverageOptions {
  /// Also accept the camelCase/snake_case split of a name as a phrase
  /// ("fillProductPrices" <-> "fill product prices").
  bool split_phrases = true;
};

struct CoverageEntry {
  std::string name;
  SegmentKind kind = SegmentKind::Function;
  SourceSpan span;
  bool covered = false;
};

struct FileCoverage {
  std::string path;
  bool summary_missing = false;
  std::vector<CoverageEntry> entries;
};

struct CoverageReport {
  std::vector<FileCoverage> files;
  std::size_t functions_total = 0;
  std::size_t functions_covered = 0;
  std::size_t variables_total = 0;
  std::size_t variables_covered = 0;

  /// 0/0 is 1.0: an empty repository is fully covered.
  double function_coverage() const;
  double variable_coverage() const;
};

/// Whether `summary` mentions `name`: as a whole identifier word, or (with
/// split_phrases) as the contiguous token phrase of its split form.
bool mentions(const std::string& summary, const std::string& name, const CoverageOptions& options = {});

/// Audits the Function and Variable segments of one file against its summary.
std::vector<CoverageEntry> coverage_audit(const std::string& file_summary_text, const std::vector<CodeSegment>& segments,
                                          const CoverageOptions& options = {});

using SummaryLookup = std::function<std::optional<std::string>(const std::string& repo_relative_path)>;

/// A file with no stored summary counts every audited segment as uncovered.
CoverageReport coverage_report(const RepoModel& model, const SummaryLookup& lookup, const CoverageOptions& options = {});

}  // namespace hiersum
