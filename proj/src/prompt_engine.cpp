#include "hiersum/prompt_engine.hpp"

#include <algorithm>
#include <stdexcept>

#include "hiersum/error.hpp"
#include "hiersum/text_util.hpp"

namespace hiersum {

namespace fs = std::filesystem;

std::string_view to_string(PromptStyle style) {
  switch (style) {
    case PromptStyle::Generic: return "generic";
    case PromptStyle::Structured: return "structured";
    case PromptStyle::StructuredOneShot: return "structured-1s";
  }
  return "generic";
}

std::optional<PromptStyle> parse_prompt_style(std::string_view name) {
  for (auto style : {PromptStyle::Generic, PromptStyle::Structured, PromptStyle::StructuredOneShot}) {
    if (to_string(style) == name) return style;
  }
  return std::nullopt;
}

std::string GroundingContext::digest() const {
  return sha256_hex(domain_description + '\0' + problem_context_description);
}

std::string_view to_string(JudgeCriterion criterion) {
  switch (criterion) {
    case JudgeCriterion::Completeness: return "completeness";
    case JudgeCriterion::Conciseness: return "conciseness";
    case JudgeCriterion::Correctness: return "correctness";
    case JudgeCriterion::Cohesiveness: return "cohesiveness";
    case JudgeCriterion::DomainSpecificity: return "domain_specificity";
  }
  return "completeness";
}

std::string_view definition(JudgeCriterion criterion) {
  switch (criterion) {
    case JudgeCriterion::Completeness: return "the summary should cover all aspects of the code";
    case JudgeCriterion::Conciseness: return "the summary should be concise";
    case JudgeCriterion::Correctness: return "the summary should not hallucinate";
    case JudgeCriterion::Cohesiveness: return "the summary should be cohesive";
    case JudgeCriterion::DomainSpecificity: return "the summary should reflect domain-specific terms and concepts";
  }
  return "";
}

std::string package_display_name(const std::string& package_name) {
  return package_name.empty() ? "(default package)" : package_name;
}

TemplateSet TemplateSet::embedded() {
  TemplateSet set;
  set.texts_ = embedded_templates();
  return set;
}

TemplateSet TemplateSet::from_directory(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw ConfigError("prompt directory not found: " + dir.string());
  TemplateSet set = embedded();
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() != ".txt") continue;
    set.texts_[entry.path().stem().string()] = read_file_bytes(entry.path());
  }
  return set;
}

const std::string& TemplateSet::raw(const std::string& name) const {
  auto it = texts_.find(name);
  if (it == texts_.end()) throw ConfigError("missing prompt template: " + name);
  return it->second;
}

GroundingContext load_grounding(const fs::path& domain_file, const fs::path& problem_file) {
  GroundingContext g;
  for (auto [path, dest] : {std::pair{&domain_file, &g.domain_description},
                            std::pair{&problem_file, &g.problem_context_description}}) {
    try {
      *dest = trim(read_file_bytes(*path));
    } catch (const Error&) {
      throw ConfigError("cannot read grounding file " + path->string());
    }
    if (dest->empty()) throw ConfigError("grounding file is empty: " + path->string());
  }
  return g;
}

GroundingContext builtin_grounding(const TemplateSet& templates) {
  return GroundingContext{trim(templates.raw("grounding_domain")), trim(templates.raw("grounding_problem"))};
}

namespace {

struct Sections {
  std::string system;
  std::string user;
};

std::string strip_final_newline(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

/// Templates carry optional `@@system` / `@@user` marker lines; text without
/// markers is all user text.
Sections split_sections(const std::string& raw) {
  Sections out;
  std::string* target = &out.user;
  for (const auto& line : split_lines(raw)) {
    if (line == "@@system") {
      target = &out.system;
      continue;
    }
    if (line == "@@user") {
      target = &out.user;
      continue;
    }
    target->append(line).push_back('\n');
  }
  out.system = strip_final_newline(std::move(out.system));
  out.user = strip_final_newline(std::move(out.user));
  return out;
}

/// Single pass: substituted values are never rescanned, so code containing
/// `{{` cannot inject placeholders.
std::string fill(const std::string& tpl, const std::map<std::string, std::string>& values) {
  std::string out;
  out.reserve(tpl.size());
  std::size_t pos = 0;
  while (pos < tpl.size()) {
    const auto open = tpl.find("{{", pos);
    if (open == std::string::npos) break;
    const auto close = tpl.find("}}", open + 2);
    if (close == std::string::npos) break;
    out.append(tpl, pos, open - pos);
    const std::string key = tpl.substr(open + 2, close - open - 2);
    if (auto it = values.find(key); it != values.end()) {
      out += it->second;
    } else {
      out.append(tpl, open, close + 2 - open);
    }
    pos = close + 2;
  }
  out.append(tpl, pos, std::string::npos);
  return out;
}

class VersionHasher {
 public:
  explicit VersionHasher(const TemplateSet& set) : set_(set) {}
  const std::string& use(const std::string& name) {
    const std::string& raw = set_.raw(name);
    material_ += name;
    material_.push_back('\0');
    material_ += raw;
    material_.push_back('\0');
    return raw;
  }
  void extra(std::string_view text) {
    material_.append(text);
    material_.push_back('\0');
  }
  std::string version() const { return sha256_hex(material_).substr(0, 16); }

 private:
  const TemplateSet& set_;
  std::string material_;
};

std::string grounding_block(const GroundingContext& g) {
  if (!g.grounded()) return {};
  return g.domain_description + "\n\n" + g.problem_context_description + "\n\n";
}

std::string partials_block(const std::vector<std::string>& partials) {
  std::string out;
  for (std::size_t i = 0; i < partials.size(); ++i) {
    if (i) out += "\n\n";
    out += "Part " + std::to_string(i + 1) + " of " + std::to_string(partials.size()) + ":\n" + partials[i];
  }
  return out;
}

bool member_less(const DescribedMember& a, const DescribedMember& b) {
  return std::tie(a.span.start_line, a.span.end_line, a.name) < std::tie(b.span.start_line, b.span.end_line, b.name);
}

void render_members(std::string& out, const std::string& title, const std::vector<DescribedMember>& members) {
  out += title + ":";
  if (members.empty()) {
    out += " (none)\n";
    return;
  }
  out += "\n";
  for (const auto& m : members) {
    out += "- ";
    if (m.kind == SegmentKind::Variable && m.is_static) out += "static ";
    if (m.kind == SegmentKind::Enum) out += "enum ";
    if (m.kind == SegmentKind::Interface) out += "interface ";
    out += m.name + " (lines " + std::to_string(m.span.start_line) + "-" + std::to_string(m.span.end_line) + "):\n";
    out += indent_lines(m.summary, "    ");
    out += "\n";
  }
}

}  // namespace

FileHeader FileHeader::from_parse(const SourceFile& file, const ParsedFile& parsed) {
  FileHeader h;
  h.package_name = parsed.package_name;
  h.imports = parsed.imports;
  if (!parsed.types.empty()) {
    // The primary type is the one the file is named after, else the first.
    const std::string stem = fs::path(file.repo_relative_path).stem().string();
    auto it = std::find_if(parsed.types.begin(), parsed.types.end(),
                           [&](const TypeDeclaration& t) { return t.name == stem; });
    const TypeDeclaration& primary = it != parsed.types.end() ? *it : parsed.types.front();
    h.type_name = primary.name;
    h.type_kind = primary.kind;
  } else {
    h.type_name = fs::path(file.repo_relative_path).stem().string();
  }
  return h;
}

PromptEngine::PromptEngine(TemplateSet templates) : templates_(std::move(templates)) {}

RenderedPrompt PromptEngine::render_segment_prompt(const CodeSegment& segment, PromptStyle style) const {
  if (segment.text.empty()) throw std::invalid_argument("segment text is empty: " + segment.name);
  VersionHasher hasher(templates_);
  RenderedPrompt p;
  Sections head;
  std::string body;
  switch (segment.kind) {
    case SegmentKind::Function: {
      head = split_sections(hasher.use("function_generic"));
      body = head.user;
      if (style != PromptStyle::Generic) body += "\n" + strip_final_newline(hasher.use("function_structured_fields"));
      if (style == PromptStyle::StructuredOneShot) {
        body += "\n\n" + strip_final_newline(hasher.use("function_one_shot_example"));
      }
      p.template_id = "segment/function/" + std::string(to_string(style));
      break;
    }
    case SegmentKind::Constructor: {
      head = split_sections(hasher.use("constructor"));
      const std::string example = strip_final_newline(hasher.use("constructor_one_shot_example"));
      body = fill(head.user, {{"one_shot_example", example}});
      p.template_id = "segment/constructor";
      break;
    }
    case SegmentKind::Variable: {
      head = split_sections(hasher.use("variable"));
      const std::string examples = strip_final_newline(hasher.use("variable_few_shot_examples"));
      body = fill(head.user, {{"few_shot_examples", examples}});
      p.template_id = "segment/variable";
      break;
    }
    case SegmentKind::Interface:
      head = split_sections(hasher.use("interface"));
      body = head.user;
      p.template_id = "segment/interface";
      break;
    case SegmentKind::Enum:
      head = split_sections(hasher.use("enum"));
      body = head.user;
      p.template_id = "segment/enum";
      break;
  }
  const std::string code = strip_final_newline(fill(hasher.use("code_block"), {{"code", segment.text}}));
  p.system_text = head.system;
  p.user_text = body + "\n\n" + code;
  p.template_version = hasher.version();
  return p;
}

FileDescription PromptEngine::build_file_description(const SourceFile& file, const FileHeader& header,
                                                     const std::vector<SegmentSummary>& summaries) const {
  FileDescription d;
  d.path = file.repo_relative_path;
  d.package_name = header.package_name;
  d.imports = header.imports;
  d.type_name = header.type_name;
  d.type_kind = header.type_kind;
  for (const auto& s : summaries) {
    DescribedMember m{s.name, s.kind, s.span, s.is_static, s.text};
    switch (s.kind) {
      case SegmentKind::Variable: d.member_field_summaries.push_back(std::move(m)); break;
      case SegmentKind::Constructor: d.constructor_summaries.push_back(std::move(m)); break;
      case SegmentKind::Function: d.function_summaries.push_back(std::move(m)); break;
      case SegmentKind::Enum:
      case SegmentKind::Interface: d.type_summaries.push_back(std::move(m)); break;
    }
  }
  for (auto* group : {&d.type_summaries, &d.member_field_summaries, &d.constructor_summaries, &d.function_summaries}) {
    std::sort(group->begin(), group->end(), member_less);
  }

  std::string& out = d.rendered_text;
  out += "File: " + d.path + "\n";
  out += "Package name: " + package_display_name(d.package_name) + "\n";
  out += "Import statements:";
  if (d.imports.empty()) {
    out += " (none)\n";
  } else {
    out += "\n";
    for (const auto& imp : d.imports) out += "- import " + imp + ";\n";
  }
  out += "Type name: " + std::string(to_string(d.type_kind)) + " " + d.type_name + "\n";
  if (!d.type_summaries.empty()) render_members(out, "Type summary", d.type_summaries);
  if (summaries.empty()) {
    out += "Members: (no members)\n";
  } else if (d.member_field_summaries.empty() && d.constructor_summaries.empty() && d.function_summaries.empty() &&
             (d.type_kind == TypeKind::Interface || d.type_kind == TypeKind::Enum ||
              d.type_kind == TypeKind::Annotation)) {
    // The whole-type summary above stands in for the member sections.
  } else {
    render_members(out, "Member fields", d.member_field_summaries);
    render_members(out, "Constructors", d.constructor_summaries);
    render_members(out, "Functions", d.function_summaries);
  }
  return d;
}

RenderedPrompt PromptEngine::render_file_prompt(const FileDescription& description,
                                                const GroundingContext& grounding) const {
  if (description.rendered_text.empty()) throw std::invalid_argument("file description is empty");
  VersionHasher hasher(templates_);
  const Sections s = split_sections(hasher.use("file"));
  RenderedPrompt p;
  p.system_text = s.system;
  p.user_text = fill(s.user, {{"grounding", grounding_block(grounding)},
                              {"description", strip_final_newline(description.rendered_text)}});
  p.template_id = grounding.grounded() ? "file/grounded" : "file/ungrounded";
  p.template_version = hasher.version();
  return p;
}

RenderedPrompt PromptEngine::render_file_merge_prompt(const std::string& path, const std::vector<std::string>& partials,
                                                      const GroundingContext& grounding) const {
  VersionHasher hasher(templates_);
  const Sections s = split_sections(hasher.use("file_merge"));
  RenderedPrompt p;
  p.system_text = s.system;
  p.user_text = fill(s.user, {{"grounding", grounding_block(grounding)},
                              {"path", path},
                              {"part_count", std::to_string(partials.size())},
                              {"partials", partials_block(partials)}});
  p.template_id = grounding.grounded() ? "file-merge/grounded" : "file-merge/ungrounded";
  p.template_version = hasher.version();
  return p;
}

RenderedPrompt PromptEngine::render_package_prompt(const std::string& package_name,
                                                   const std::vector<FileSummary>& file_summaries) const {
  if (file_summaries.empty()) throw std::invalid_argument("package has no file summaries: " + package_name);
  std::vector<const FileSummary*> ordered;
  for (const auto& f : file_summaries) ordered.push_back(&f);
  std::sort(ordered.begin(), ordered.end(), [](const FileSummary* a, const FileSummary* b) { return a->path < b->path; });

  std::string blocks;
  for (const FileSummary* f : ordered) {
    if (!blocks.empty()) blocks += "\n\n";
    blocks += "File: " + f->path + "\n";
    if (f->parse_warning || f->failed) {
      blocks += f->full_text;
    } else {
      blocks += "Role: " + f->role + "\nKey functionality: " + f->key_functionality + "\nPurpose: " + f->purpose;
    }
  }
  VersionHasher hasher(templates_);
  const Sections s = split_sections(hasher.use("package"));
  RenderedPrompt p;
  p.system_text = s.system;
  p.user_text = fill(s.user, {{"package_name", package_display_name(package_name)}, {"file_blocks", blocks}});
  p.template_id = "package";
  p.template_version = hasher.version();
  return p;
}

RenderedPrompt PromptEngine::render_repo_prompt(const std::string& repo_name,
                                                const std::vector<PackageSummary>& package_summaries) const {
  if (package_summaries.empty()) throw std::invalid_argument("repository has no package summaries");
  std::vector<const PackageSummary*> ordered;
  for (const auto& pkg : package_summaries) ordered.push_back(&pkg);
  std::sort(ordered.begin(), ordered.end(),
            [](const PackageSummary* a, const PackageSummary* b) { return a->package_name < b->package_name; });
  std::string blocks;
  for (const PackageSummary* pkg : ordered) {
    if (!blocks.empty()) blocks += "\n\n";
    blocks += "Package: " + package_display_name(pkg->package_name) + "\n" + pkg->text;
  }
  VersionHasher hasher(templates_);
  const Sections s = split_sections(hasher.use("repo"));
  RenderedPrompt p;
  p.system_text = s.system;
  p.user_text = fill(s.user, {{"repo_name", repo_name}, {"package_blocks", blocks}});
  p.template_id = "repo";
  p.template_version = hasher.version();
  return p;
}

RenderedPrompt PromptEngine::render_repo_merge_prompt(const std::string& repo_name,
                                                      const std::vector<std::string>& partials) const {
  VersionHasher hasher(templates_);
  const Sections s = split_sections(hasher.use("repo_merge"));
  RenderedPrompt p;
  p.system_text = s.system;
  p.user_text = fill(s.user, {{"repo_name", repo_name},
                              {"part_count", std::to_string(partials.size())},
                              {"partials", partials_block(partials)}});
  p.template_id = "repo-merge";
  p.template_version = hasher.version();
  return p;
}

RenderedPrompt PromptEngine::render_judge_prompt(const std::string& summary_text, const std::string& source_text,
                                                 JudgeCriterion criterion) const {
  if (summary_text.empty() || source_text.empty()) throw std::invalid_argument("judge needs a summary and a source");
  VersionHasher hasher(templates_);
  hasher.extra(definition(criterion));
  const Sections s = split_sections(hasher.use("judge"));
  RenderedPrompt p;
  p.system_text = s.system;
  p.user_text = fill(s.user, {{"criterion_name", std::string(to_string(criterion))},
                              {"criterion_definition", std::string(definition(criterion))},
                              {"source", source_text},
                              {"summary", summary_text}});
  p.template_id = "judge/" + std::string(to_string(criterion));
  p.template_version = hasher.version();
  return p;
}

}  // namespace hiersum
