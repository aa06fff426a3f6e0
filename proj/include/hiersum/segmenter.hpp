#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hiersum {

enum class SegmentKind { Function, Variable, Constructor, Enum, Interface };

inline constexpr SegmentKind kAllSegmentKinds[] = {SegmentKind::Function, SegmentKind::Variable,
                                                   SegmentKind::Constructor, SegmentKind::Enum,
                                                   SegmentKind::Interface};

std::string_view to_string(SegmentKind kind);
std::optional<SegmentKind> parse_segment_kind(std::string_view name);

struct SourceFile {
  std::string repo_relative_path;  // generic '/' separators, ends in .java
  std::string package_name;        // empty for the default package
  std::string content_hash;        // sha256 of the raw bytes
  std::size_t line_count = 1;
};

/// 1-based inclusive line range.
struct SourceSpan {
  int start_line = 1;
  int end_line = 1;

  bool contains(const SourceSpan& other) const {
    return start_line <= other.start_line && other.end_line <= end_line;
  }
  bool disjoint(const SourceSpan& other) const {
    return end_line < other.start_line || other.end_line < start_line;
  }
  /// Disjoint or nested (identical spans count as nested).
  bool compatible(const SourceSpan& other) const {
    return disjoint(other) || contains(other) || other.contains(*this);
  }
  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

struct CodeSegment {
  SegmentKind kind = SegmentKind::Function;
  std::string name;
  std::string file;  // SourceFile::repo_relative_path
  SourceSpan span;
  std::string text;  // verbatim lines of span, '\n'-joined
  std::string enclosing_type;
  bool is_static = false;
  std::vector<std::string> modifiers;
};

enum class TypeKind { Class, Interface, Enum, Record, Annotation };
std::string_view to_string(TypeKind kind);

struct TypeDeclaration {
  std::string name;
  TypeKind kind = TypeKind::Class;
  SourceSpan span;
};

struct Diagnostic {
  std::string path;
  int line = 0;  // 0 when not tied to a line
  std::string message;
};

struct ParsedFile {
  std::string package_name;
  std::vector<std::string> imports;  // e.g. "java.util.List", "static org.junit.Assert.*"
  std::vector<TypeDeclaration> types;  // top-level only, in source order
  std::vector<CodeSegment> segments;   // sorted by (start, end, name)
  std::vector<Diagnostic> diagnostics;
};

/// Decodes and splits raw file bytes; shared by discovery and the parser so
/// spans, line counts and segment text all agree.
struct LoadedSource {
  SourceFile file;
  std::string text;  // decoded UTF-8
  std::vector<std::string> lines;
};

struct DiscoveryOptions {
  std::vector<std::string> excluded_dirs{"target", "build", ".git"};
};

struct DiscoveryResult {
  std::vector<SourceFile> files;
  std::vector<Diagnostic> diagnostics;  // skipped (unreadable) files
};

/// Every .java file under root, sorted by repo-relative path. Throws
/// ConfigError when root is not a readable directory.
DiscoveryResult discover_sources(const std::filesystem::path& root, const DiscoveryOptions& options = {});

LoadedSource load_source(const std::filesystem::path& root, const std::string& repo_relative_path);
LoadedSource load_source_from_bytes(std::string repo_relative_path, std::string_view raw_bytes);

/// Segments one file. Never throws on bad Java: whatever the error-tolerant
/// parse recovers is returned together with diagnostics.
ParsedFile parse_and_segment(const SourceFile& file, std::string_view raw_text);

/// Convenience for tests and tools: decode + parse in one call.
ParsedFile parse_java(std::string_view raw_bytes, std::string path = "Input.java");

struct FileEntry {
  SourceFile file;
  ParsedFile parsed;
  std::vector<std::string> lines;
};

struct RepoModel {
  std::string root;
  std::map<std::string, std::vector<SourceFile>> packages;  // package -> files in path order
  std::vector<FileEntry> files;                             // path order
  std::vector<Diagnostic> diagnostics;                      // skipped files + per-file parse diagnostics

  const FileEntry* find(std::string_view path) const;
  std::size_t segment_count() const;
  std::size_t segment_count(SegmentKind kind) const;
};

RepoModel build_repo_model(const std::filesystem::path& root, const DiscoveryOptions& options = {});

}  // namespace hiersum
