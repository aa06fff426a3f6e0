#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hiersum/backend.hpp"

namespace hiersum {

struct RougeL {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// LCS-based ROUGE-L over tokenize() output. A zero denominator zeroes the
/// corresponding component; f1 is 0 when precision + recall is 0.
RougeL rouge_l(std::string_view candidate, std::string_view reference);
RougeL rouge_l_tokens(const std::vector<std::string>& candidate, const std::vector<std::string>& reference);

/// Sentence-level BLEU-4 on a 0..100 scale. Unigram precision is unsmoothed;
/// for n = 2..4 the modified precision is (matches + 1) / (candidate n-grams + 1).
/// Brevity penalty exp(1 - r/c) when c < r. An empty candidate, or one with no
/// matching unigram, scores 0.
double bleu(std::string_view candidate, std::string_view reference);
double bleu_tokens(const std::vector<std::string>& candidate, const std::vector<std::string>& reference);

/// Throws hiersum::Error when either vector has zero norm or sizes differ.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

/// Cosine of the backend's embeddings of a and b (one batched request).
double semantic_similarity(const std::string& a, const std::string& b, Backend& backend);

struct MetricScores {
  std::optional<RougeL> rouge;
  std::optional<double> bleu;
  std::optional<double> semantic_similarity;
};

}  // namespace hiersum
