#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hiersum {

/// The one tokenizer shared by ROUGE-L, BLEU, the coverage phrase rule and
/// the mock embedding. Tokens are maximal ASCII alphanumeric runs, further
/// split at lower->upper case transitions and letter<->digit transitions,
/// then lowercased. Everything else (including non-ASCII bytes) separates.
///
///   "fillProductPrices v2" -> {"fill", "product", "prices", "v", "2"}
std::vector<std::string> tokenize(std::string_view text);

/// Identifier-shaped words ([A-Za-z0-9_$]+), lowercased, no case splitting.
/// Used for whole-name matching.
std::vector<std::string> identifier_words(std::string_view text);

}  // namespace hiersum
