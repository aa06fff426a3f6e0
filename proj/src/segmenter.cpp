#include "hiersum/segmenter.hpp"

#include <algorithm>
#include <array>
#include <system_error>
#include <unordered_map>
#include <unordered_set>

#include "hiersum/error.hpp"
#include "hiersum/java_lexer.hpp"
#include "hiersum/text_util.hpp"

namespace hiersum {

namespace fs = std::filesystem;
using java::Token;
using java::TokenKind;

std::string_view to_string(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::Function: return "Function";
    case SegmentKind::Variable: return "Variable";
    case SegmentKind::Constructor: return "Constructor";
    case SegmentKind::Enum: return "Enum";
    case SegmentKind::Interface: return "Interface";
  }
  return "Function";
}

std::optional<SegmentKind> parse_segment_kind(std::string_view name) {
  for (auto kind : kAllSegmentKinds) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

std::string_view to_string(TypeKind kind) {
  switch (kind) {
    case TypeKind::Class: return "class";
    case TypeKind::Interface: return "interface";
    case TypeKind::Enum: return "enum";
    case TypeKind::Record: return "record";
    case TypeKind::Annotation: return "annotation";
  }
  return "class";
}

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

const std::unordered_set<std::string_view>& modifier_keywords() {
  static const std::unordered_set<std::string_view> words = {
      "public",   "protected", "private",      "static",   "final",  "abstract", "native",
      "synchronized", "transient", "volatile", "strictfp", "default", "sealed"};
  return words;
}

/// Skips `@Name(.Name)*` and an optional argument list. Returns kNone when
/// `pos` is not an annotation use (including `@interface`).
std::size_t skip_annotation(const std::vector<Token>& tokens, const std::vector<std::size_t>& match,
                            std::size_t pos, std::size_t end) {
  if (pos + 1 >= end || !tokens[pos].is("@") || !tokens[pos + 1].is_identifier() ||
      tokens[pos + 1].text == "interface") {
    return kNone;
  }
  pos += 2;
  while (pos + 1 < end && tokens[pos].is(".") && tokens[pos + 1].is_identifier()) pos += 2;
  if (pos < end && tokens[pos].is("(")) {
    pos = match[pos] == kNone ? end : match[pos] + 1;
  }
  return pos;
}

std::string package_from_tokens(const std::vector<Token>& tokens, const std::vector<std::size_t>& match,
                                std::size_t* after) {
  std::size_t pos = 0;
  const std::size_t n = tokens.size();
  for (std::size_t next; (next = skip_annotation(tokens, match, pos, n)) != kNone;) pos = next;
  std::string name;
  if (pos < n && tokens[pos].is("package")) {
    ++pos;
    while (pos < n && !tokens[pos].is(";")) name += tokens[pos++].text;
    if (pos < n) ++pos;
    if (after) *after = pos;
  } else if (after) {
    *after = 0;
  }
  return name;
}

struct BracketMatch {
  std::vector<std::size_t> match;
  std::vector<Diagnostic> diagnostics;
};

BracketMatch match_brackets(const std::vector<Token>& tokens, const std::string& path) {
  BracketMatch result;
  result.match.assign(tokens.size(), kNone);
  std::vector<std::size_t> stack;
  auto opener_for = [](const std::string& closer) -> char {
    return closer == ")" ? '(' : closer == "]" ? '[' : '{';
  };
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& tok = tokens[i];
    if (tok.kind != TokenKind::Punct) continue;
    if (tok.text == "(" || tok.text == "[" || tok.text == "{") {
      stack.push_back(i);
    } else if (tok.text == ")" || tok.text == "]" || tok.text == "}") {
      const char want = opener_for(tok.text);
      auto it = std::find_if(stack.rbegin(), stack.rend(),
                             [&](std::size_t idx) { return tokens[idx].text[0] == want; });
      if (it == stack.rend()) {
        result.diagnostics.push_back({path, tok.line, "unmatched '" + tok.text + "'"});
        continue;
      }
      const std::size_t open = *it;
      // Openers above the match were never closed.
      for (auto jt = stack.rbegin(); jt != it; ++jt) {
        result.diagnostics.push_back({path, tokens[*jt].line, "unclosed '" + tokens[*jt].text + "'"});
      }
      stack.erase(std::prev(it.base()), stack.end());
      result.match[open] = i;
      result.match[i] = open;
    }
  }
  for (std::size_t idx : stack) {
    result.diagnostics.push_back({path, tokens[idx].line, "unclosed '" + tokens[idx].text + "'"});
  }
  return result;
}

class Parser {
 public:
  Parser(const SourceFile& file, const std::vector<std::string>& lines, const java::LexResult& lexed,
         ParsedFile& out)
      : file_(file), lines_(lines), tokens_(lexed.tokens), out_(out) {
    for (const auto& doc : lexed.doc_comments) {
      // Keep the last doc comment before each token.
      doc_before_[doc.after_token] = doc.line;
    }
    auto brackets = match_brackets(tokens_, file_.repo_relative_path);
    match_ = std::move(brackets.match);
    for (auto& d : brackets.diagnostics) out_.diagnostics.push_back(std::move(d));
  }

  void parse_compilation_unit() {
    const std::size_t n = tokens_.size();
    std::size_t pos = 0;
    out_.package_name = package_from_tokens(tokens_, match_, &pos);
    while (pos < n && tokens_[pos].is("import")) {
      ++pos;
      std::string name;
      if (pos < n && tokens_[pos].is("static")) {
        name = "static ";
        ++pos;
      }
      while (pos < n && !tokens_[pos].is(";")) name += tokens_[pos++].text;
      if (pos < n) ++pos;
      out_.imports.push_back(std::move(name));
    }
    while (pos < n) {
      if (tokens_[pos].is(";")) {
        ++pos;
        continue;
      }
      if (tokens_[pos].is("module") || (tokens_[pos].is("open") && pos + 1 < n && tokens_[pos + 1].is("module"))) {
        return;  // module-info.java declares no types
      }
      const std::size_t start = pos;
      Modifiers mods = parse_modifiers(pos, n);
      if (auto kind = type_keyword(pos, n)) {
        pos = parse_type(start, pos, n, *kind, mods, "", /*top_level=*/true);
      } else {
        diagnose(pos < n ? pos : start, "expected a type declaration");
        pos = recover(pos, n);
      }
    }
  }

 private:
  struct Modifiers {
    std::vector<std::string> words;
    bool is_static = false;
  };

  const Token& at(std::size_t i) const { return tokens_[i]; }

  void diagnose(std::size_t pos, const std::string& message) {
    const int line = pos < tokens_.size() ? tokens_[pos].line : static_cast<int>(lines_.size());
    std::string near;
    if (pos < tokens_.size()) near = " near '" + tokens_[pos].text + "'";
    out_.diagnostics.push_back({file_.repo_relative_path, line, message + near});
  }

  std::size_t after_match(std::size_t pos, std::size_t end) const {
    return match_[pos] == kNone || match_[pos] >= end ? end : match_[pos] + 1;
  }

  Modifiers parse_modifiers(std::size_t& pos, std::size_t end) {
    Modifiers mods;
    while (pos < end) {
      if (std::size_t next = skip_annotation(tokens_, match_, pos, end); next != kNone) {
        std::string name = "@";
        for (std::size_t i = pos + 1; i < next && !at(i).is("("); ++i) name += at(i).text;
        mods.words.push_back(std::move(name));
        pos = next;
        continue;
      }
      const Token& tok = at(pos);
      if (!tok.is_identifier()) break;
      if (tok.text == "non" && pos + 2 < end && at(pos + 1).is("-") && at(pos + 2).is("sealed")) {
        mods.words.emplace_back("non-sealed");
        pos += 3;
        continue;
      }
      if (!modifier_keywords().count(tok.text)) break;
      // `default` in a switch cannot appear here; in a member head it is a modifier.
      if (tok.text == "static") mods.is_static = true;
      mods.words.push_back(tok.text);
      ++pos;
    }
    return mods;
  }

  std::optional<TypeKind> type_keyword(std::size_t pos, std::size_t end) const {
    if (pos >= end) return std::nullopt;
    const Token& tok = at(pos);
    if (tok.is("class")) return TypeKind::Class;
    if (tok.is("interface")) return TypeKind::Interface;
    if (tok.is("enum") && pos + 1 < end && at(pos + 1).is_identifier()) return TypeKind::Enum;
    if (tok.is("@") && pos + 1 < end && at(pos + 1).is("interface")) return TypeKind::Annotation;
    if (tok.is("record") && pos + 2 < end && at(pos + 1).is_identifier() &&
        (at(pos + 2).is("(") || at(pos + 2).is("<"))) {
      return TypeKind::Record;
    }
    return std::nullopt;
  }

  /// First line of a declaration whose first token (annotation, modifier or
  /// keyword) is `start`: an attached doc comment wins if it does not share a
  /// line with the previous token.
  int head_line(std::size_t start) const {
    int line = at(start).line;
    if (auto it = doc_before_.find(start); it != doc_before_.end()) {
      const int prev_end = start == 0 ? 0 : at(start - 1).end_line;
      if (it->second > prev_end) line = it->second;
    }
    return line;
  }

  void emit(SegmentKind kind, std::string name, std::size_t start, std::size_t last,
            const std::string& enclosing, const Modifiers& mods) {
    CodeSegment seg;
    seg.kind = kind;
    seg.name = std::move(name);
    seg.file = file_.repo_relative_path;
    seg.span = SourceSpan{head_line(start), at(last).end_line};
    seg.text = join_lines(lines_, seg.span.start_line, seg.span.end_line);
    seg.enclosing_type = enclosing;
    seg.is_static = mods.is_static;
    seg.modifiers = mods.words;
    out_.segments.push_back(std::move(seg));
  }

  /// Skip to just past the next `;` at depth 0, or past the next balanced
  /// block if one starts first.
  std::size_t recover(std::size_t pos, std::size_t end) const {
    while (pos < end) {
      const Token& tok = at(pos);
      if (tok.is(";")) return pos + 1;
      if (tok.is("{")) return after_match(pos, end);
      if (tok.is("(") || tok.is("[")) {
        pos = after_match(pos, end);
        continue;
      }
      ++pos;
    }
    return end;
  }

  /// `pos` at '<'. Returns the index after the matching '>' or kNone.
  std::size_t skip_angles(std::size_t pos, std::size_t end) const {
    int depth = 0;
    while (pos < end) {
      const Token& tok = at(pos);
      if (tok.is("<")) {
        ++depth;
      } else if (tok.is(">")) {
        if (--depth == 0) return pos + 1;
      } else if (tok.is("(") || tok.is("[")) {
        pos = after_match(pos, end);
        continue;
      } else if (tok.is(";") || tok.is("{") || tok.is("}") || tok.is("=")) {
        return kNone;
      }
      ++pos;
    }
    return kNone;
  }

  /// A type reference: annotations, qualified name, type arguments, dims.
  std::size_t skip_type(std::size_t pos, std::size_t end) const {
    for (std::size_t next; pos < end && (next = skip_annotation(tokens_, match_, pos, end)) != kNone;) pos = next;
    if (pos >= end || !at(pos).is_identifier()) return kNone;
    ++pos;
    while (pos < end) {
      if (at(pos).is("<")) {
        pos = skip_angles(pos, end);
        if (pos == kNone) return kNone;
      } else if (at(pos).is(".") && pos + 1 < end && at(pos + 1).is_identifier()) {
        pos += 2;
      } else if (at(pos).is(".") && pos + 1 < end && at(pos + 1).is("@")) {
        ++pos;
        pos = skip_annotation(tokens_, match_, pos, end);
        if (pos == kNone) return kNone;
      } else if (at(pos).is("[") && pos + 1 < end && at(pos + 1).is("]")) {
        pos += 2;
      } else if (at(pos).is(".") && pos + 2 < end && at(pos + 1).is(".") && at(pos + 2).is(".")) {
        pos += 3;
      } else if (at(pos).is("@")) {
        std::size_t next = skip_annotation(tokens_, match_, pos, end);
        if (next == kNone) break;
        pos = next;
      } else {
        break;
      }
    }
    return pos;
  }

  /// Parses a type declaration whose keyword is at `pos`; returns the index
  /// after its body.
  std::size_t parse_type(std::size_t start, std::size_t pos, std::size_t end, TypeKind kind, const Modifiers& mods,
                         const std::string& enclosing, bool top_level) {
    pos += (kind == TypeKind::Annotation) ? 2 : 1;
    if (pos >= end || !at(pos).is_identifier()) {
      diagnose(pos, "expected a type name");
      return recover(pos, end);
    }
    const std::string name = at(pos).text;
    ++pos;
    while (pos < end && !at(pos).is("{")) {
      if (at(pos).is(";") || at(pos).is("}")) {
        diagnose(pos, "expected '{' to open the body of " + name);
        return pos + 1;
      }
      pos = (at(pos).is("(") || at(pos).is("[")) ? after_match(pos, end) : pos + 1;
    }
    if (pos >= end) {
      diagnose(start, "missing body for " + name);
      return end;
    }
    const std::size_t open = pos;
    std::size_t close = match_[open];
    const bool closed = close != kNone && close < end;
    if (!closed) close = end - 1;  // recover to the end of the enclosing range

    if (top_level) {
      out_.types.push_back(TypeDeclaration{name, kind, SourceSpan{head_line(start), at(close).end_line}});
    }
    switch (kind) {
      case TypeKind::Enum:
        emit(SegmentKind::Enum, name, start, close, top_level ? name : enclosing, mods);
        break;
      case TypeKind::Interface:
      case TypeKind::Annotation:
        emit(SegmentKind::Interface, name, start, close, top_level ? name : enclosing, mods);
        break;
      case TypeKind::Class:
      case TypeKind::Record:
        if (top_level) parse_class_body(open + 1, close, name, kind == TypeKind::Record);
        break;
    }
    return closed ? close + 1 : end;
  }

  void parse_class_body(std::size_t pos, std::size_t end, const std::string& class_name, bool is_record) {
    while (pos < end) {
      if (at(pos).is(";")) {
        ++pos;
        continue;
      }
      const std::size_t start = pos;
      Modifiers mods = parse_modifiers(pos, end);
      if (pos >= end) {
        diagnose(start, "dangling modifiers");
        break;
      }
      if (at(pos).is("{")) {  // instance or static initializer
        pos = after_match(pos, end);
        continue;
      }
      if (auto kind = type_keyword(pos, end)) {
        pos = parse_type(start, pos, end, *kind, mods, class_name, /*top_level=*/false);
        continue;
      }
      if (at(pos).is("<")) {  // generic method or constructor
        pos = skip_angles(pos, end);
        if (pos == kNone) {
          diagnose(start, "malformed type parameters");
          pos = recover(start, end);
          continue;
        }
      }
      const bool named_like_class = at(pos).is_identifier() && at(pos).text == class_name && pos + 1 < end;
      if (named_like_class && (at(pos + 1).is("(") || (is_record && at(pos + 1).is("{")))) {
        std::size_t last = finish_callable(pos + 1, end);
        if (last == kNone) {
          diagnose(pos, "malformed constructor");
          pos = recover(pos, end);
          continue;
        }
        emit(SegmentKind::Constructor, class_name, start, last, class_name, mods);
        pos = last + 1;
        continue;
      }
      std::size_t after_type = skip_type(pos, end);
      if (after_type == kNone || after_type >= end || !at(after_type).is_identifier()) {
        diagnose(after_type == kNone || after_type >= end ? pos : after_type, "unexpected token in class body");
        pos = recover(pos, end);
        continue;
      }
      const std::size_t name_pos = after_type;
      if (name_pos + 1 < end && at(name_pos + 1).is("(")) {
        std::size_t last = finish_callable(name_pos + 1, end);
        if (last == kNone) {
          diagnose(name_pos, "malformed method");
          pos = recover(pos, end);
          continue;
        }
        emit(SegmentKind::Function, at(name_pos).text, start, last, class_name, mods);
        pos = last + 1;
        continue;
      }
      pos = parse_fields(start, name_pos, end, class_name, mods);
    }
  }

  /// `pos` at the parameter list '(' (or a compact-constructor '{'). Returns
  /// the index of the token that ends the declaration ('}' or ';').
  std::size_t finish_callable(std::size_t pos, std::size_t end) const {
    if (at(pos).is("(")) {
      if (match_[pos] == kNone || match_[pos] >= end) return kNone;
      pos = match_[pos] + 1;
    }
    bool default_value = false;
    while (pos < end) {
      const Token& tok = at(pos);
      if (tok.is(";")) return pos;
      if (tok.is("{")) {
        if (match_[pos] == kNone || match_[pos] >= end) return kNone;
        if (!default_value) return match_[pos];
        pos = match_[pos] + 1;
        continue;
      }
      if (tok.is("}")) return kNone;
      if (tok.is("default")) default_value = true;
      pos = (tok.is("(") || tok.is("[")) ? after_match(pos, end) : pos + 1;
    }
    return kNone;
  }

  /// `name_pos` at the first declarator name. Emits one Variable per name,
  /// all sharing the statement's span.
  std::size_t parse_fields(std::size_t start, std::size_t name_pos, std::size_t end, const std::string& class_name,
                           const Modifiers& mods) {
    std::vector<std::string> names;
    std::size_t pos = name_pos;
    while (true) {
      if (pos >= end || !at(pos).is_identifier()) {
        diagnose(pos, "expected a field name");
        return recover(pos, end);
      }
      names.push_back(at(pos).text);
      ++pos;
      while (pos + 1 < end && at(pos).is("[") && at(pos + 1).is("]")) pos += 2;
      if (pos < end && at(pos).is("=")) pos = skip_initializer(pos + 1, end);
      if (pos >= end) {
        diagnose(start, "unterminated field declaration");
        return end;
      }
      if (at(pos).is(",")) {
        ++pos;
        continue;
      }
      if (at(pos).is(";")) break;
      diagnose(pos, "expected ';' after field declaration");
      return recover(pos, end);
    }
    for (auto& name : names) emit(SegmentKind::Variable, std::move(name), start, pos, class_name, mods);
    return pos + 1;
  }

  /// Stops at ',' or ';' at depth 0. Type arguments after `new` and in
  /// explicit generic calls (`Foo.<A, B>bar()`) are skipped whole so their
  /// commas are not mistaken for declarator separators.
  std::size_t skip_initializer(std::size_t pos, std::size_t end) const {
    while (pos < end) {
      const Token& tok = at(pos);
      if (tok.is(",") || tok.is(";") || tok.is("}")) return pos;
      if (tok.is("(") || tok.is("[") || tok.is("{")) {
        pos = after_match(pos, end);
        continue;
      }
      if (tok.is("new")) {
        ++pos;
        std::size_t next = skip_type(pos, end);
        if (next != kNone) pos = next;
        continue;
      }
      if ((tok.is(".") || tok.is(":")) && pos + 1 < end && at(pos + 1).is("<")) {
        std::size_t next = skip_angles(pos + 1, end);
        pos = next == kNone ? pos + 1 : next;
        continue;
      }
      ++pos;
    }
    return pos;
  }

  const SourceFile& file_;
  const std::vector<std::string>& lines_;
  const std::vector<Token>& tokens_;
  ParsedFile& out_;
  std::vector<std::size_t> match_;
  std::unordered_map<std::size_t, int> doc_before_;
};

bool segment_less(const CodeSegment& a, const CodeSegment& b) {
  return std::tie(a.span.start_line, a.span.end_line, a.name) < std::tie(b.span.start_line, b.span.end_line, b.name);
}

struct DiscoveredPaths {
  std::vector<std::string> paths;
  std::vector<Diagnostic> diagnostics;
};

DiscoveredPaths discover_paths(const fs::path& root, const DiscoveryOptions& options) {
  std::error_code ec;
  if (!fs::exists(root, ec) || !fs::is_directory(root, ec)) {
    throw ConfigError("repository root is not a directory: " + root.string());
  }
  DiscoveredPaths out;
  const std::unordered_set<std::string> excluded(options.excluded_dirs.begin(), options.excluded_dirs.end());
  fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
  if (ec) throw ConfigError("cannot read repository root " + root.string() + ": " + ec.message());
  for (const fs::recursive_directory_iterator end; it != end; it.increment(ec)) {
    if (ec) {
      out.diagnostics.push_back({it->path().lexically_relative(root).generic_string(), 0,
                                 "skipped: " + ec.message()});
      ec.clear();
      continue;
    }
    const auto& entry = *it;
    std::error_code type_ec;
    if (entry.is_directory(type_ec)) {
      if (excluded.count(entry.path().filename().string())) it.disable_recursion_pending();
      continue;
    }
    if (entry.path().extension() != ".java" || !entry.is_regular_file(type_ec)) continue;
    out.paths.push_back(entry.path().lexically_relative(root).generic_string());
  }
  std::sort(out.paths.begin(), out.paths.end());
  return out;
}

}  // namespace

LoadedSource load_source_from_bytes(std::string repo_relative_path, std::string_view raw_bytes) {
  LoadedSource loaded;
  loaded.file.repo_relative_path = std::move(repo_relative_path);
  loaded.file.content_hash = sha256_hex(raw_bytes);
  loaded.text = decode_utf8_lossy(raw_bytes);
  loaded.lines = split_lines(loaded.text);
  loaded.file.line_count = loaded.lines.size();
  const auto lexed = java::lex(loaded.text);
  const auto brackets = match_brackets(lexed.tokens, loaded.file.repo_relative_path);
  loaded.file.package_name = package_from_tokens(lexed.tokens, brackets.match, nullptr);
  return loaded;
}

LoadedSource load_source(const fs::path& root, const std::string& repo_relative_path) {
  return load_source_from_bytes(repo_relative_path, read_file_bytes(root / fs::path(repo_relative_path)));
}

ParsedFile parse_and_segment(const SourceFile& file, std::string_view raw_text) {
  ParsedFile out;
  const std::string text = decode_utf8_lossy(raw_text);
  const std::vector<std::string> lines = split_lines(text);
  const java::LexResult lexed = java::lex(text);
  for (const auto& err : lexed.errors) out.diagnostics.push_back({file.repo_relative_path, err.line, err.message});
  if (lexed.tokens.empty() && !lexed.errors.empty()) {
    out.diagnostics.push_back({file.repo_relative_path, 0, "nothing recoverable; file kept at file level only"});
    return out;
  }
  Parser parser(file, lines, lexed, out);
  parser.parse_compilation_unit();
  std::stable_sort(out.segments.begin(), out.segments.end(), segment_less);
  std::stable_sort(out.diagnostics.begin(), out.diagnostics.end(),
                   [](const Diagnostic& a, const Diagnostic& b) { return a.line < b.line; });
  return out;
}

ParsedFile parse_java(std::string_view raw_bytes, std::string path) {
  LoadedSource loaded = load_source_from_bytes(std::move(path), raw_bytes);
  return parse_and_segment(loaded.file, loaded.text);
}

DiscoveryResult discover_sources(const fs::path& root, const DiscoveryOptions& options) {
  DiscoveredPaths found = discover_paths(root, options);
  DiscoveryResult result;
  result.diagnostics = std::move(found.diagnostics);
  for (const auto& path : found.paths) {
    try {
      result.files.push_back(load_source(root, path).file);
    } catch (const Error& e) {
      result.diagnostics.push_back({path, 0, std::string("skipped: ") + e.what()});
    }
  }
  return result;
}

const FileEntry* RepoModel::find(std::string_view path) const {
  auto it = std::lower_bound(files.begin(), files.end(), path,
                             [](const FileEntry& e, std::string_view p) { return e.file.repo_relative_path < p; });
  return it != files.end() && it->file.repo_relative_path == path ? &*it : nullptr;
}

std::size_t RepoModel::segment_count() const {
  std::size_t total = 0;
  for (const auto& entry : files) total += entry.parsed.segments.size();
  return total;
}

std::size_t RepoModel::segment_count(SegmentKind kind) const {
  std::size_t total = 0;
  for (const auto& entry : files) {
    total += static_cast<std::size_t>(std::count_if(entry.parsed.segments.begin(), entry.parsed.segments.end(),
                                                    [&](const CodeSegment& s) { return s.kind == kind; }));
  }
  return total;
}

RepoModel build_repo_model(const fs::path& root, const DiscoveryOptions& options) {
  DiscoveredPaths found = discover_paths(root, options);
  RepoModel model;
  model.root = root.string();
  model.diagnostics = std::move(found.diagnostics);
  for (const auto& path : found.paths) {
    LoadedSource loaded;
    try {
      loaded = load_source(root, path);
    } catch (const Error& e) {
      model.diagnostics.push_back({path, 0, std::string("skipped: ") + e.what()});
      continue;
    }
    FileEntry entry;
    entry.parsed = parse_and_segment(loaded.file, loaded.text);
    entry.file = std::move(loaded.file);
    entry.lines = std::move(loaded.lines);
    for (const auto& d : entry.parsed.diagnostics) model.diagnostics.push_back(d);
    model.packages[entry.file.package_name].push_back(entry.file);
    model.files.push_back(std::move(entry));
  }
  return model;
}

}  // namespace hiersum
