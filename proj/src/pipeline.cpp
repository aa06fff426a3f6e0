#include "hiersum/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <thread>

#include "hiersum/error.hpp"
#include "hiersum/text_util.hpp"

namespace hiersum {

namespace fs = std::filesystem;

std::string_view to_string(SummaryLevel level) {
  switch (level) {
    case SummaryLevel::Segment: return "segment";
    case SummaryLevel::File: return "file";
    case SummaryLevel::Package: return "package";
    case SummaryLevel::Repo: return "repo";
  }
  return "repo";
}

std::optional<SummaryLevel> parse_summary_level(std::string_view name) {
  for (auto level : {SummaryLevel::Segment, SummaryLevel::File, SummaryLevel::Package, SummaryLevel::Repo}) {
    if (to_string(level) == name) return level;
  }
  return std::nullopt;
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  const std::size_t threads = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), 1, n);
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::string repo_display_name(const fs::path& root) {
  fs::path p = root.lexically_normal();
  std::string name = p.filename().string();
  if (name.empty() || name == ".") name = p.parent_path().filename().string();
  if (name.empty() || name == "." || name == "..") name = fs::absolute(root).lexically_normal().filename().string();
  return name.empty() ? "repository" : name;
}

// ---------------------------------------------------------------------------
// Section parsing

namespace {

enum class Section { None, Role, KeyFunctionality, Purpose };

/// Recognizes "Role:", "**Role**:", "## Key Functionality", "- 'Purpose':".
/// Returns the section and the remainder of the line after the header.
std::pair<Section, std::string> match_header(const std::string& line) {
  std::size_t i = 0;
  auto skip = [&](std::string_view chars) {
    while (i < line.size() && chars.find(line[i]) != std::string_view::npos) ++i;
  };
  skip(" \t#*->'\"`_");
  const std::string rest = to_lower_ascii(std::string_view(line).substr(i));
  static const std::pair<std::string_view, Section> kHeaders[] = {
      {"key functionality", Section::KeyFunctionality},
      {"key functionalities", Section::KeyFunctionality},
      {"role", Section::Role},
      {"purpose", Section::Purpose}};
  for (auto [word, section] : kHeaders) {
    if (rest.compare(0, word.size(), word) != 0) continue;
    i += word.size();
    skip("*'\"`_ \t");
    if (i == line.size()) return {section, {}};
    if (line[i] == ':') {
      ++i;
      skip("*'\"`_ \t");
      return {section, line.substr(i)};
    }
  }
  return {Section::None, {}};
}

}  // namespace

std::optional<FileSections> parse_file_sections(const std::string& text) {
  FileSections out;
  Section current = Section::None;
  auto target = [&](Section s) -> std::string* {
    switch (s) {
      case Section::Role: return &out.role;
      case Section::KeyFunctionality: return &out.key_functionality;
      case Section::Purpose: return &out.purpose;
      case Section::None: return nullptr;
    }
    return nullptr;
  };
  for (const auto& line : split_lines(text)) {
    auto [section, rest] = match_header(line);
    if (section != Section::None) {
      current = section;
      if (!rest.empty()) {
        std::string* t = target(current);
        if (!t->empty()) t->push_back('\n');
        t->append(rest);
      }
      continue;
    }
    if (std::string* t = target(current)) {
      if (!t->empty()) t->push_back('\n');
      t->append(line);
    }
  }
  out.role = trim(out.role);
  out.key_functionality = trim(out.key_functionality);
  out.purpose = trim(out.purpose);
  if (out.role.empty() || out.key_functionality.empty() || out.purpose.empty()) return std::nullopt;
  return out;
}

// ---------------------------------------------------------------------------
// Summarizer

Summarizer::Summarizer(const PromptEngine& engine, Backend& backend, SummaryCache* cache, PipelineOptions options)
    : engine_(engine),
      backend_(backend),
      cache_(cache),
      options_(std::move(options)),
      segment_grounding_digest_(GroundingContext{}.digest()) {
  if (options_.concurrency < 1) throw ConfigError("concurrency must be positive");
  if (options_.max_prompt_chars == 0) throw ConfigError("max_prompt_chars must be positive");
  if (!options_.grounding.empty() && !options_.grounding.grounded()) {
    throw ConfigError("grounding needs both a domain and a problem-context description");
  }
}

void Summarizer::record_failure(Failure failure) {
  std::lock_guard lock(mutex_);
  failures_.push_back(std::move(failure));
}

void Summarizer::warn(std::string message) {
  std::lock_guard lock(mutex_);
  warnings_.push_back(std::move(message));
}

std::vector<Failure> Summarizer::failures() const {
  std::lock_guard lock(mutex_);
  auto out = failures_;
  std::sort(out.begin(), out.end(), [](const Failure& a, const Failure& b) {
    return std::tie(a.level, a.path, a.name, a.message) < std::tie(b.level, b.path, b.name, b.message);
  });
  return out;
}

std::vector<std::string> Summarizer::warnings() const {
  std::lock_guard lock(mutex_);
  auto out = warnings_;
  std::sort(out.begin(), out.end());
  return out;
}

Summarizer::Completion Summarizer::complete(const RenderedPrompt& prompt, const std::string& grounding_digest,
                                            int max_tokens) {
  Completion out;
  out.provenance.template_id = prompt.template_id;
  out.provenance.template_version = prompt.template_version;
  const std::string key = SummaryCache::make_key(backend_.model_id(), prompt.template_id, prompt.template_version,
                                                 grounding_digest, prompt.system_text + '\0' + prompt.user_text);
  std::optional<CacheEntry> hit = cache_ ? cache_->get(key) : std::nullopt;
  if (hit) {
    cache_hits_.fetch_add(1);
    out.entry = std::move(*hit);
  } else {
    ChatRequest request{prompt.system_text, prompt.user_text, max_tokens, std::nullopt};
    ChatResponse response = backend_.complete(request);
    out.entry.text = std::move(response.text);
    out.entry.model_id = response.model_id.empty() ? backend_.model_id() : response.model_id;
    out.entry.created_at = utc_timestamp();
    out.entry.prompt_tokens = response.prompt_tokens;
    out.entry.completion_tokens = response.completion_tokens;
    if (cache_) cache_->put(key, out.entry);
  }
  prompt_tokens_.fetch_add(out.entry.prompt_tokens);
  completion_tokens_.fetch_add(out.entry.completion_tokens);
  out.provenance.model_id = out.entry.model_id;
  out.provenance.created_at = out.entry.created_at;
  return out;
}

Summarizer::Completion Summarizer::fold(std::vector<std::string> items,
                                        const std::function<RenderedPrompt(const std::vector<std::string>&)>& render_merge,
                                        const std::string& grounding_digest, const std::string& where) {
  const std::size_t budget = options_.max_prompt_chars;
  while (true) {
    RenderedPrompt all = render_merge(items);
    if (all.size() <= budget || items.size() == 1) {
      return complete(all, grounding_digest, options_.aggregate_max_tokens);
    }
    // Contiguous greedy packing keeps source order.
    std::vector<std::vector<std::string>> groups;
    for (auto& item : items) {
      if (!groups.empty()) {
        auto candidate = groups.back();
        candidate.push_back(item);
        if (render_merge(candidate).size() <= budget) {
          groups.back().push_back(std::move(item));
          continue;
        }
      }
      groups.push_back({std::move(item)});
    }
    if (groups.size() == items.size()) {
      // Packing cannot shrink the input any further; merge everything at once.
      std::vector<std::string> flat;
      for (auto& g : groups) flat.push_back(std::move(g.front()));
      warn(where + ": merge input exceeds the prompt budget; issued one oversize merge");
      return complete(render_merge(flat), grounding_digest, options_.aggregate_max_tokens);
    }
    std::vector<std::string> merged;
    merged.reserve(groups.size());
    for (auto& g : groups) {
      if (g.size() == 1) {
        merged.push_back(std::move(g.front()));
      } else {
        merged.push_back(complete(render_merge(g), grounding_digest, options_.aggregate_max_tokens).entry.text);
      }
    }
    items = std::move(merged);
  }
}

SegmentSummary Summarizer::summarize_segment(const CodeSegment& segment) {
  SegmentSummary out;
  out.path = segment.file;
  out.kind = segment.kind;
  out.name = segment.name;
  out.span = segment.span;
  out.is_static = segment.is_static;
  const RenderedPrompt prompt = engine_.render_segment_prompt(segment, options_.style);
  try {
    Completion c = complete(prompt, segment_grounding_digest_, options_.segment_max_tokens);
    out.text = std::move(c.entry.text);
    out.provenance = std::move(c.provenance);
    if (out.text.empty()) throw ProtocolError("model returned an empty summary");
  } catch (const Error& e) {
    out.failed = true;
    out.text = std::string(kSummaryUnavailable);
    out.provenance = Provenance{backend_.model_id(), prompt.template_id, prompt.template_version, ""};
    record_failure({"segment", segment.file, segment.name, e.what()});
  }
  return out;
}

FileSummary Summarizer::summarize_file(const SourceFile& file, const FileHeader& header,
                                       std::vector<SegmentSummary> segment_summaries) {
  std::stable_sort(segment_summaries.begin(), segment_summaries.end(),
                   [](const SegmentSummary& a, const SegmentSummary& b) {
                     return std::tie(a.span.start_line, a.span.end_line, a.name) <
                            std::tie(b.span.start_line, b.span.end_line, b.name);
                   });
  FileSummary out;
  out.path = file.repo_relative_path;
  out.grounded = options_.grounding.grounded();
  const std::string grounding_digest = options_.grounding.digest();

  const FileDescription description = engine_.build_file_description(file, header, segment_summaries);
  const RenderedPrompt whole = engine_.render_file_prompt(description, options_.grounding);
  try {
    Completion c;
    if (whole.size() <= options_.max_prompt_chars || segment_summaries.size() <= 1) {
      c = complete(whole, grounding_digest, options_.aggregate_max_tokens);
    } else {
      auto render_batch = [&](const std::vector<SegmentSummary>& batch) {
        return engine_.render_file_prompt(engine_.build_file_description(file, header, batch), options_.grounding);
      };
      std::vector<std::vector<SegmentSummary>> batches;
      for (const auto& s : segment_summaries) {
        if (!batches.empty()) {
          auto candidate = batches.back();
          candidate.push_back(s);
          if (render_batch(candidate).size() <= options_.max_prompt_chars) {
            batches.back().push_back(s);
            continue;
          }
        }
        batches.push_back({s});
      }
      std::vector<std::string> partials;
      partials.reserve(batches.size());
      for (const auto& batch : batches) {
        partials.push_back(complete(render_batch(batch), grounding_digest, options_.aggregate_max_tokens).entry.text);
      }
      c = fold(
          std::move(partials),
          [&](const std::vector<std::string>& parts) {
            return engine_.render_file_merge_prompt(file.repo_relative_path, parts, options_.grounding);
          },
          grounding_digest, file.repo_relative_path);
    }
    out.full_text = std::move(c.entry.text);
    out.provenance = std::move(c.provenance);
    if (out.full_text.empty()) throw ProtocolError("model returned an empty file summary");
  } catch (const Error& e) {
    out.failed = true;
    out.full_text = std::string(kSummaryUnavailable);
    out.provenance = Provenance{backend_.model_id(), whole.template_id, whole.template_version, ""};
    record_failure({"file", file.repo_relative_path, "", e.what()});
  }

  if (auto sections = parse_file_sections(out.full_text); sections && !out.failed) {
    out.role = std::move(sections->role);
    out.key_functionality = std::move(sections->key_functionality);
    out.purpose = std::move(sections->purpose);
  } else {
    out.parse_warning = !out.failed;
    out.role = out.key_functionality = out.purpose = out.full_text;
    if (!out.failed) warn(file.repo_relative_path + ": file summary lacks Role/Key functionality/Purpose sections");
  }
  return out;
}

PackageSummary Summarizer::summarize_package(const std::string& package_name,
                                             const std::vector<FileSummary>& file_summaries) {
  PackageSummary out;
  out.package_name = package_name;
  for (const auto& f : file_summaries) out.children.push_back(f.path);
  std::sort(out.children.begin(), out.children.end());
  const RenderedPrompt prompt = engine_.render_package_prompt(package_name, file_summaries);
  try {
    Completion c = complete(prompt, options_.grounding.digest(), options_.aggregate_max_tokens);
    out.text = std::move(c.entry.text);
    out.provenance = std::move(c.provenance);
    if (out.text.empty()) throw ProtocolError("model returned an empty package summary");
  } catch (const Error& e) {
    out.failed = true;
    out.text = std::string(kSummaryUnavailable);
    out.provenance = Provenance{backend_.model_id(), prompt.template_id, prompt.template_version, ""};
    record_failure({"package", package_display_name(package_name), "", e.what()});
  }
  return out;
}

RepoSummary Summarizer::summarize_repo(const std::string& repo_name,
                                       const std::vector<PackageSummary>& package_summaries) {
  RepoSummary out;
  out.root = repo_name;
  for (const auto& p : package_summaries) out.children.push_back(p.package_name);
  std::sort(out.children.begin(), out.children.end());
  const std::string grounding_digest = options_.grounding.digest();
  const RenderedPrompt whole = engine_.render_repo_prompt(repo_name, package_summaries);
  try {
    Completion c;
    if (whole.size() <= options_.max_prompt_chars || package_summaries.size() <= 1) {
      c = complete(whole, grounding_digest, options_.aggregate_max_tokens);
    } else {
      std::vector<PackageSummary> ordered = package_summaries;
      std::sort(ordered.begin(), ordered.end(),
                [](const PackageSummary& a, const PackageSummary& b) { return a.package_name < b.package_name; });
      std::vector<std::vector<PackageSummary>> batches;
      for (auto& p : ordered) {
        if (!batches.empty()) {
          auto candidate = batches.back();
          candidate.push_back(p);
          if (engine_.render_repo_prompt(repo_name, candidate).size() <= options_.max_prompt_chars) {
            batches.back().push_back(std::move(p));
            continue;
          }
        }
        batches.push_back({std::move(p)});
      }
      std::vector<std::string> partials;
      for (const auto& batch : batches) {
        partials.push_back(
            complete(engine_.render_repo_prompt(repo_name, batch), grounding_digest, options_.aggregate_max_tokens)
                .entry.text);
      }
      c = fold(
          std::move(partials),
          [&](const std::vector<std::string>& parts) { return engine_.render_repo_merge_prompt(repo_name, parts); },
          grounding_digest, repo_name);
    }
    out.text = std::move(c.entry.text);
    out.provenance = std::move(c.provenance);
    if (out.text.empty()) throw ProtocolError("model returned an empty repository summary");
  } catch (const Error& e) {
    out.failed = true;
    out.text = std::string(kSummaryUnavailable);
    out.provenance = Provenance{backend_.model_id(), whole.template_id, whole.template_version, ""};
    record_failure({"repo", repo_name, "", e.what()});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Whole run

RunResult run_full(const fs::path& root, const PromptEngine& engine, Backend& backend, SummaryCache* cache,
                   const PipelineOptions& options, const DiscoveryOptions& discovery) {
  const auto started = std::chrono::steady_clock::now();
  const std::uint64_t calls_before = backend.completion_calls();

  RunResult result;
  Summarizer summarizer(engine, backend, cache, options);  // validates options before any I/O
  result.model = build_repo_model(root, discovery);
  const RepoModel& model = result.model;
  RunReport& report = result.report;
  report.root = repo_display_name(root);
  report.files = model.files.size();
  report.packages = model.packages.size();
  for (auto kind : kAllSegmentKinds) report.segments_by_kind[std::string(to_string(kind))] = model.segment_count(kind);
  report.diagnostics = model.diagnostics;

  // Segment level: one flat work list across all files.
  struct SegmentRef {
    std::size_t file;
    std::size_t segment;
  };
  std::vector<SegmentRef> work;
  std::vector<std::vector<SegmentSummary>> per_file(model.files.size());
  for (std::size_t f = 0; f < model.files.size(); ++f) {
    per_file[f].resize(model.files[f].parsed.segments.size());
    for (std::size_t s = 0; s < model.files[f].parsed.segments.size(); ++s) work.push_back({f, s});
  }
  parallel_for(work.size(), options.concurrency, [&](std::size_t i) {
    const auto [f, s] = work[i];
    per_file[f][s] = summarizer.summarize_segment(model.files[f].parsed.segments[s]);
  });
  for (std::size_t f = 0; f < model.files.size(); ++f) {
    report.segment_summaries += per_file[f].size();
    result.segment_summaries[model.files[f].file.repo_relative_path] = per_file[f];
  }

  if (options.level >= SummaryLevel::File) {
    result.file_summaries.resize(model.files.size());
    parallel_for(model.files.size(), options.concurrency, [&](std::size_t f) {
      const FileEntry& entry = model.files[f];
      result.file_summaries[f] =
          summarizer.summarize_file(entry.file, FileHeader::from_parse(entry.file, entry.parsed), per_file[f]);
    });
    report.file_summaries = result.file_summaries.size();
  }

  if (options.level >= SummaryLevel::Package) {
    std::vector<const std::string*> names;
    for (const auto& [name, files] : model.packages) {
      if (!files.empty()) names.push_back(&name);
    }
    result.package_summaries.resize(names.size());
    parallel_for(names.size(), options.concurrency, [&](std::size_t p) {
      std::vector<FileSummary> members;
      for (const auto& fs_entry : model.packages.at(*names[p])) {
        auto it = std::find_if(result.file_summaries.begin(), result.file_summaries.end(),
                               [&](const FileSummary& s) { return s.path == fs_entry.repo_relative_path; });
        if (it != result.file_summaries.end()) members.push_back(*it);
      }
      result.package_summaries[p] = summarizer.summarize_package(*names[p], members);
    });
    report.package_summaries = result.package_summaries.size();
  }

  if (options.level >= SummaryLevel::Repo && !result.package_summaries.empty()) {
    result.repo_summary = summarizer.summarize_repo(report.root, result.package_summaries);
    report.repo_summaries = 1;
  }

  report.failures = summarizer.failures();
  report.warnings = summarizer.warnings();
  report.prompt_tokens = summarizer.prompt_tokens();
  report.completion_tokens = summarizer.completion_tokens();
  report.cache_hits = summarizer.cache_hits();
  report.completion_requests = backend.completion_calls() - calls_before;
  report.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return result;
}

}  // namespace hiersum
