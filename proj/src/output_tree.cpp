#include "hiersum/output_tree.hpp"

#include <nlohmann/json.hpp>

#include "hiersum/text_util.hpp"

namespace hiersum {

namespace fs = std::filesystem;
using nlohmann::json;

std::string flatten_path(const std::string& repo_relative_path) {
  std::string out;
  for (char c : repo_relative_path) {
    if (c == '/') {
      out += "__";
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::string package_file_stem(const std::string& package_name) {
  return package_name.empty() ? "_default" : package_name;
}

fs::path file_summary_path(const fs::path& out_dir, const std::string& repo_relative_path) {
  return out_dir / "files" / fs::path(repo_relative_path + ".json");
}

namespace {

json provenance_json(const Provenance& p) {
  return {{"model_id", p.model_id},
          {"template_id", p.template_id},
          {"template_version", p.template_version},
          {"created_at", p.created_at}};
}

json segment_json(const SegmentSummary& s) {
  return {{"path", s.path},
          {"kind", std::string(to_string(s.kind))},
          {"name", s.name},
          {"start_line", s.span.start_line},
          {"end_line", s.span.end_line},
          {"static", s.is_static},
          {"text", s.text},
          {"failed", s.failed},
          {"provenance", provenance_json(s.provenance)}};
}

void write_json(const fs::path& path, const json& doc) { write_file_atomic(path, doc.dump(2) + "\n"); }

void write_markdown(const fs::path& json_path, const std::string& markdown) {
  fs::path md = json_path;
  md.replace_extension(".md");
  write_file_atomic(md, markdown);
}

std::string segment_markdown(const std::string& path, const std::vector<SegmentSummary>& summaries) {
  std::string md = "# Segments of `" + path + "`\n";
  for (const auto& s : summaries) {
    md += "\n## " + std::string(to_string(s.kind)) + " `" + s.name + "` (lines " + std::to_string(s.span.start_line) +
          "-" + std::to_string(s.span.end_line) + ")\n\n" + s.text + "\n";
  }
  return md;
}

}  // namespace

void write_output_tree(const fs::path& out_dir, const RunResult& result, const OutputOptions& options) {
  fs::create_directories(out_dir);
  const RunReport& report = result.report;

  for (const auto& entry : result.model.files) {
    const std::string& path = entry.file.repo_relative_path;
    auto it = result.segment_summaries.find(path);
    if (it == result.segment_summaries.end()) continue;
    json list = json::array();
    for (std::size_t i = 0; i < it->second.size(); ++i) {
      json item = segment_json(it->second[i]);
      if (options.include_text && i < entry.parsed.segments.size()) item["code"] = entry.parsed.segments[i].text;
      list.push_back(std::move(item));
    }
    const fs::path target = out_dir / "segments" / (flatten_path(path) + ".json");
    write_json(target, {{"schema_version", kSchemaVersion},
                        {"path", path},
                        {"hash", entry.file.content_hash},
                        {"summaries", std::move(list)}});
    if (options.markdown) write_markdown(target, segment_markdown(path, it->second));
  }

  for (const auto& f : result.file_summaries) {
    const fs::path target = file_summary_path(out_dir, f.path);
    write_json(target, {{"schema_version", kSchemaVersion},
                        {"path", f.path},
                        {"role", f.role},
                        {"key_functionality", f.key_functionality},
                        {"purpose", f.purpose},
                        {"full_text", f.full_text},
                        {"grounded", f.grounded},
                        {"parse_warning", f.parse_warning},
                        {"failed", f.failed},
                        {"provenance", provenance_json(f.provenance)}});
    if (options.markdown) write_markdown(target, "# File `" + f.path + "`\n\n" + f.full_text + "\n");
  }

  for (const auto& p : result.package_summaries) {
    const fs::path target = out_dir / "packages" / (package_file_stem(p.package_name) + ".json");
    write_json(target, {{"schema_version", kSchemaVersion},
                        {"package", p.package_name},
                        {"text", p.text},
                        {"files", p.children},
                        {"failed", p.failed},
                        {"provenance", provenance_json(p.provenance)}});
    if (options.markdown) {
      write_markdown(target, "# Package `" + package_display_name(p.package_name) + "`\n\n" + p.text + "\n");
    }
  }

  if (result.repo_summary) {
    const RepoSummary& r = *result.repo_summary;
    const fs::path target = out_dir / "repo.json";
    write_json(target, {{"schema_version", kSchemaVersion},
                        {"root", r.root},
                        {"text", r.text},
                        {"packages", r.children},
                        {"failed", r.failed},
                        {"provenance", provenance_json(r.provenance)}});
    if (options.markdown) write_markdown(target, "# Repository `" + r.root + "`\n\n" + r.text + "\n");
  }

  json failures = json::array();
  for (const auto& f : report.failures) {
    failures.push_back({{"level", f.level}, {"path", f.path}, {"name", f.name}, {"message", f.message}});
  }
  json diagnostics = json::array();
  for (const auto& d : report.diagnostics) {
    diagnostics.push_back({{"path", d.path}, {"line", d.line}, {"message", d.message}});
  }
  write_json(out_dir / "report.json",
             {{"schema_version", kSchemaVersion},
              {"root", report.root},
              {"status", report.partial() ? "partial" : "ok"},
              {"counts",
               {{"files", report.files},
                {"packages", report.packages},
                {"segments", report.segments_by_kind},
                {"segment_summaries", report.segment_summaries},
                {"file_summaries", report.file_summaries},
                {"package_summaries", report.package_summaries},
                {"repo_summaries", report.repo_summaries}}},
              {"tokens", {{"prompt", report.prompt_tokens}, {"completion", report.completion_tokens}}},
              {"failures", std::move(failures)},
              {"diagnostics", std::move(diagnostics)},
              {"warnings", report.warnings}});
}

std::optional<std::string> read_file_summary_text(const fs::path& out_dir, const std::string& repo_relative_path) {
  std::string raw;
  try {
    raw = read_file_bytes(file_summary_path(out_dir, repo_relative_path));
  } catch (const std::exception&) {
    return std::nullopt;
  }
  const json doc = json::parse(raw, nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("full_text") || !doc["full_text"].is_string()) {
    return std::nullopt;
  }
  return doc["full_text"].get<std::string>();
}

}  // namespace hiersum
