#include "hiersum/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "hiersum/error.hpp"
#include "hiersum/tokenize.hpp"

namespace hiersum {

namespace {

std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

using NgramCounts = std::unordered_map<std::string, std::size_t>;

NgramCounts count_ngrams(const std::vector<std::string>& tokens, std::size_t n) {
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key;
    for (std::size_t k = 0; k < n; ++k) {
      if (k) key.push_back('\x1f');
      key += tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

}  // namespace

RougeL rouge_l_tokens(const std::vector<std::string>& candidate, const std::vector<std::string>& reference) {
  const double lcs = static_cast<double>(lcs_length(candidate, reference));
  RougeL r;
  r.precision = candidate.empty() ? 0.0 : lcs / static_cast<double>(candidate.size());
  r.recall = reference.empty() ? 0.0 : lcs / static_cast<double>(reference.size());
  r.f1 = (r.precision + r.recall) == 0.0 ? 0.0 : 2.0 * r.precision * r.recall / (r.precision + r.recall);
  return r;
}

RougeL rouge_l(std::string_view candidate, std::string_view reference) {
  return rouge_l_tokens(tokenize(candidate), tokenize(reference));
}

double bleu_tokens(const std::vector<std::string>& candidate, const std::vector<std::string>& reference) {
  const std::size_t c = candidate.size();
  const std::size_t r = reference.size();
  if (c == 0) return 0.0;
  double log_sum = 0.0;
  for (std::size_t n = 1; n <= 4; ++n) {
    const NgramCounts cand = count_ngrams(candidate, n);
    const NgramCounts ref = count_ngrams(reference, n);
    std::size_t matches = 0;
    for (const auto& [gram, count] : cand) {
      auto it = ref.find(gram);
      if (it != ref.end()) matches += std::min(count, it->second);
    }
    const std::size_t total = c >= n ? c - n + 1 : 0;
    double p;
    if (n == 1) {
      if (matches == 0) return 0.0;
      p = static_cast<double>(matches) / static_cast<double>(total);
    } else {
      p = static_cast<double>(matches + 1) / static_cast<double>(total + 1);
    }
    log_sum += std::log(p);
  }
  const double bp = c < r ? std::exp(1.0 - static_cast<double>(r) / static_cast<double>(c)) : 1.0;
  return 100.0 * bp * std::exp(log_sum / 4.0);
}

double bleu(std::string_view candidate, std::string_view reference) {
  return bleu_tokens(tokenize(candidate), tokenize(reference));
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error("cannot compare embeddings of different dimensions");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) throw Error("degenerate (zero-norm) embedding");
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

double semantic_similarity(const std::string& a, const std::string& b, Backend& backend) {
  const auto vectors = backend.embed({a, b});
  return cosine_similarity(vectors[0], vectors[1]);
}

}  // namespace hiersum
