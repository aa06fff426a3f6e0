#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hiersum::java {

enum class TokenKind { Identifier, Number, String, Char, Punct };

/// Identifiers include keywords; punctuation is always a single character so
/// that `>>` in nested generics needs no re-splitting.
struct Token {
  TokenKind kind;
  std::string text;
  int line;      // 1-based
  int end_line;  // differs from line only for text blocks

  bool is(std::string_view s) const { return text == s && kind != TokenKind::String && kind != TokenKind::Char; }
  bool is_identifier() const { return kind == TokenKind::Identifier; }
};

struct DocComment {
  int line;
  int end_line;
  std::size_t after_token;  // number of tokens lexed before the comment
};

struct LexError {
  int line;
  std::string message;
};

struct LexResult {
  std::vector<Token> tokens;
  std::vector<DocComment> doc_comments;
  std::vector<LexError> errors;
};

/// Error tolerant: an unterminated literal or comment is reported and lexing
/// stops there, keeping every token produced so far.
LexResult lex(std::string_view source);

}  // namespace hiersum::java
