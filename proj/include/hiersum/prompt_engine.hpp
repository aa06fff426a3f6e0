#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hiersum/segmenter.hpp"
#include "hiersum/summaries.hpp"

namespace hiersum {

enum class PromptStyle { Generic, Structured, StructuredOneShot };

std::string_view to_string(PromptStyle style);
/// Accepts "generic", "structured", "structured-1s".
std::optional<PromptStyle> parse_prompt_style(std::string_view name);

struct GroundingContext {
  std::string domain_description;
  std::string problem_context_description;

  bool grounded() const { return !domain_description.empty() && !problem_context_description.empty(); }
  bool empty() const { return domain_description.empty() && problem_context_description.empty(); }
  std::string digest() const;
};

struct RenderedPrompt {
  std::string system_text;
  std::string user_text;
  std::string template_id;
  std::string template_version;

  std::size_t size() const { return system_text.size() + user_text.size(); }
  friend bool operator==(const RenderedPrompt&, const RenderedPrompt&) = default;
};

/// Package, imports and primary type of a file, taken from its parse.
struct FileHeader {
  std::string package_name;
  std::vector<std::string> imports;
  std::string type_name;
  TypeKind type_kind = TypeKind::Class;

  static FileHeader from_parse(const SourceFile& file, const ParsedFile& parsed);
};

struct DescribedMember {
  std::string name;
  SegmentKind kind;
  SourceSpan span;
  bool is_static = false;
  std::string summary;
};

struct FileDescription {
  std::string path;
  std::string package_name;
  std::vector<std::string> imports;
  std::string type_name;
  TypeKind type_kind = TypeKind::Class;
  std::vector<DescribedMember> type_summaries;  // whole-type Interface/Enum segments
  std::vector<DescribedMember> member_field_summaries;
  std::vector<DescribedMember> constructor_summaries;
  std::vector<DescribedMember> function_summaries;
  std::string rendered_text;
};

enum class JudgeCriterion { Completeness, Conciseness, Correctness, Cohesiveness, DomainSpecificity };

inline constexpr JudgeCriterion kAllJudgeCriteria[] = {JudgeCriterion::Completeness, JudgeCriterion::Conciseness,
                                                       JudgeCriterion::Correctness, JudgeCriterion::Cohesiveness,
                                                       JudgeCriterion::DomainSpecificity};

std::string_view to_string(JudgeCriterion criterion);
std::string_view definition(JudgeCriterion criterion);

/// Raw template texts by name (file stem under prompts/).
class TemplateSet {
 public:
  /// The templates compiled into the library.
  static TemplateSet embedded();
  /// Embedded templates overlaid with every *.txt in `dir`.
  static TemplateSet from_directory(const std::filesystem::path& dir);

  const std::string& raw(const std::string& name) const;
  const std::map<std::string, std::string>& all() const { return texts_; }

 private:
  std::map<std::string, std::string> texts_;
};

const std::map<std::string, std::string>& embedded_templates();

/// Reads a grounding pair from two text files. Throws ConfigError on a
/// missing or empty file.
GroundingContext load_grounding(const std::filesystem::path& domain_file, const std::filesystem::path& problem_file);
GroundingContext builtin_grounding(const TemplateSet& templates);

/// All prompt rendering. Pure: same inputs, byte-identical outputs.
class PromptEngine {
 public:
  explicit PromptEngine(TemplateSet templates = TemplateSet::embedded());

  RenderedPrompt render_segment_prompt(const CodeSegment& segment, PromptStyle style) const;

  FileDescription build_file_description(const SourceFile& file, const FileHeader& header,
                                         const std::vector<SegmentSummary>& summaries) const;

  RenderedPrompt render_file_prompt(const FileDescription& description, const GroundingContext& grounding) const;
  RenderedPrompt render_file_merge_prompt(const std::string& path, const std::vector<std::string>& partials,
                                          const GroundingContext& grounding) const;

  /// Throws std::invalid_argument on an empty package.
  RenderedPrompt render_package_prompt(const std::string& package_name,
                                       const std::vector<FileSummary>& file_summaries) const;

  /// Throws std::invalid_argument on an empty list.
  RenderedPrompt render_repo_prompt(const std::string& repo_name,
                                    const std::vector<PackageSummary>& package_summaries) const;
  RenderedPrompt render_repo_merge_prompt(const std::string& repo_name, const std::vector<std::string>& partials) const;

  RenderedPrompt render_judge_prompt(const std::string& summary_text, const std::string& source_text,
                                     JudgeCriterion criterion) const;

  const TemplateSet& templates() const { return templates_; }

 private:
  TemplateSet templates_;
};

/// Display name used in prompts and output file names for a package.
std::string package_display_name(const std::string& package_name);

}  // namespace hiersum
