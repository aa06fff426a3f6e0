#include "hiersum/java_lexer.hpp"

namespace hiersum::java {

namespace {

bool ident_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' || c >= 0x80;
}

bool ident_part(unsigned char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

bool digit(unsigned char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  LexResult run() {
    while (pos_ < src_.size()) {
      const unsigned char c = peek();
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (c == '\r') {
        // CRLF counts once; a lone CR is a terminator on its own.
        if (peek(1) != '\n') ++line_;
        ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\f') {
        ++pos_;
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && peek() != '\n' && peek() != '\r') ++pos_;
      } else if (c == '/' && peek(1) == '*') {
        if (!block_comment()) break;
      } else if (c == '"' && peek(1) == '"' && peek(2) == '"') {
        if (!text_block()) break;
      } else if (c == '"' || c == '\'') {
        if (!quoted(static_cast<char>(c))) break;
      } else if (digit(c) || (c == '.' && digit(peek(1)))) {
        number();
      } else if (ident_start(c)) {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && ident_part(peek())) ++pos_;
        push(TokenKind::Identifier, start, line_);
      } else {
        push(TokenKind::Punct, pos_, line_, 1);
        ++pos_;
      }
    }
    return std::move(result_);
  }

 private:
  unsigned char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? static_cast<unsigned char>(src_[pos_ + ahead]) : 0;
  }

  void push(TokenKind kind, std::size_t start, int start_line, std::size_t len = std::string_view::npos) {
    if (len == std::string_view::npos) len = pos_ - start;
    result_.tokens.push_back(Token{kind, std::string(src_.substr(start, len)), start_line, line_});
  }

  void advance_over_newline() {
    if (peek() == '\r' && peek(1) == '\n') ++pos_;
    ++line_;
    ++pos_;
  }

  bool block_comment() {
    const int start_line = line_;
    const bool doc = peek(2) == '*' && peek(3) != '/';
    pos_ += 2;
    while (pos_ < src_.size()) {
      if (peek() == '*' && peek(1) == '/') {
        pos_ += 2;
        if (doc) result_.doc_comments.push_back(DocComment{start_line, line_, result_.tokens.size()});
        return true;
      }
      if (peek() == '\n' || peek() == '\r') {
        advance_over_newline();
      } else {
        ++pos_;
      }
    }
    result_.errors.push_back(LexError{start_line, "unterminated comment"});
    return false;
  }

  bool text_block() {
    const int start_line = line_;
    const std::size_t start = pos_;
    pos_ += 3;
    while (pos_ < src_.size()) {
      if (peek() == '\\') {
        pos_ += 2;
        continue;
      }
      if (peek() == '"' && peek(1) == '"' && peek(2) == '"') {
        pos_ += 3;
        push(TokenKind::String, start, start_line);
        return true;
      }
      if (peek() == '\n' || peek() == '\r') {
        advance_over_newline();
      } else {
        ++pos_;
      }
    }
    result_.errors.push_back(LexError{start_line, "unterminated text block"});
    return false;
  }

  bool quoted(char quote) {
    const std::size_t start = pos_;
    ++pos_;
    while (pos_ < src_.size()) {
      const unsigned char c = peek();
      if (c == '\\') {
        pos_ += 2;
      } else if (c == static_cast<unsigned char>(quote)) {
        ++pos_;
        push(quote == '"' ? TokenKind::String : TokenKind::Char, start, line_);
        return true;
      } else if (c == '\n' || c == '\r') {
        break;
      } else {
        ++pos_;
      }
    }
    result_.errors.push_back(
        LexError{line_, quote == '"' ? "unterminated string literal" : "unterminated character literal"});
    return false;
  }

  void number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size()) {
      const unsigned char c = peek();
      if (ident_part(c) || c == '.') {
        ++pos_;
      } else if ((c == '+' || c == '-') && pos_ > start) {
        // Exponent sign: 1e-5, 0x1p+3.
        const unsigned char prev = static_cast<unsigned char>(src_[pos_ - 1]);
        const bool hex = pos_ - start > 1 && (src_[start + 1] == 'x' || src_[start + 1] == 'X');
        if ((!hex && (prev == 'e' || prev == 'E')) || (hex && (prev == 'p' || prev == 'P'))) {
          ++pos_;
        } else {
          break;
        }
      } else {
        break;
      }
    }
    push(TokenKind::Number, start, line_);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  LexResult result_;
};

}  // namespace

LexResult lex(std::string_view source) { return Lexer(source).run(); }

}  // namespace hiersum::java
