#include "hiersum/tokenize.hpp"

namespace hiersum {

namespace {

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alnum(char c) { return is_lower(c) || is_upper(c) || is_digit(c); }
char lower(char c) { return is_upper(c) ? static_cast<char>(c - 'A' + 'a') : c; }

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  char prev = '\0';
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for (char c : text) {
    if (!is_alnum(c)) {
      flush();
      prev = '\0';
      continue;
    }
    if (!current.empty()) {
      const bool camel = is_lower(prev) && is_upper(c);
      const bool digit_edge = is_digit(prev) != is_digit(c);
      if (camel || digit_edge) flush();
    }
    current.push_back(lower(c));
    prev = c;
  }
  flush();
  return tokens;
}

std::vector<std::string> identifier_words(std::string_view text) {
  std::vector<std::string> words;
  std::string current;
  for (char c : text) {
    if (is_alnum(c) || c == '_' || c == '$') {
      current.push_back(lower(c));
    } else if (!current.empty()) {
      words.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

}  // namespace hiersum
