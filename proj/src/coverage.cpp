#include "hiersum/coverage.hpp"

#include <algorithm>
#include <unordered_set>

#include "hiersum/summaries.hpp"
#include "hiersum/tokenize.hpp"
#include "hiersum/text_util.hpp"

namespace hiersum {

namespace {

class SummaryIndex {
 public:
  explicit SummaryIndex(const std::string& summary) : tokens_(tokenize(summary)) {
    for (auto& w : identifier_words(summary)) words_.insert(std::move(w));
  }

  bool mentions(const std::string& name, const CoverageOptions& options) const {
    if (words_.count(to_lower_ascii(name))) return true;
    if (!options.split_phrases) return false;
    const auto phrase = tokenize(name);
    if (phrase.empty()) return false;
    return std::search(tokens_.begin(), tokens_.end(), phrase.begin(), phrase.end()) != tokens_.end();
  }

 private:
  std::vector<std::string> tokens_;
  std::unordered_set<std::string> words_;
};

bool audited(SegmentKind kind) { return kind == SegmentKind::Function || kind == SegmentKind::Variable; }

double fraction(std::size_t covered, std::size_t total) {
  return total == 0 ? 1.0 : static_cast<double>(covered) / static_cast<double>(total);
}

}  // namespace

double CoverageReport::function_coverage() const { return fraction(functions_covered, functions_total); }
double CoverageReport::variable_coverage() const { return fraction(variables_covered, variables_total); }

bool mentions(const std::string& summary, const std::string& name, const CoverageOptions& options) {
  return SummaryIndex(summary).mentions(name, options);
}

std::vector<CoverageEntry> coverage_audit(const std::string& file_summary_text, const std::vector<CodeSegment>& segments,
                                          const CoverageOptions& options) {
  // The failure placeholder covers nothing, even a member called `summary`.
  const bool placeholder = trim(file_summary_text) == kSummaryUnavailable;
  const SummaryIndex index(placeholder ? std::string() : file_summary_text);
  std::vector<CoverageEntry> out;
  for (const auto& seg : segments) {
    if (!audited(seg.kind)) continue;
    out.push_back({seg.name, seg.kind, seg.span, !placeholder && index.mentions(seg.name, options)});
  }
  return out;
}

CoverageReport coverage_report(const RepoModel& model, const SummaryLookup& lookup, const CoverageOptions& options) {
  CoverageReport report;
  for (const auto& entry : model.files) {
    FileCoverage fc;
    fc.path = entry.file.repo_relative_path;
    const std::optional<std::string> summary = lookup(fc.path);
    fc.summary_missing = !summary.has_value();
    fc.entries = coverage_audit(summary.value_or(""), entry.parsed.segments, options);
    for (const auto& e : fc.entries) {
      if (e.kind == SegmentKind::Function) {
        ++report.functions_total;
        report.functions_covered += e.covered;
      } else {
        ++report.variables_total;
        report.variables_covered += e.covered;
      }
    }
    report.files.push_back(std::move(fc));
  }
  return report;
}

}  // namespace hiersum
