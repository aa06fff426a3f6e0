#include <doctest.h>

#include <cmath>
#include <nlohmann/json.hpp>
#include <random>

#include "hiersum/error.hpp"
#include "hiersum/metrics.hpp"
#include "hiersum/tokenize.hpp"
#include "support/test_support.hpp"

using namespace hiersum;
using hiersum::testing::ScriptedBackend;
using nlohmann::json;

namespace {

// Longest common subsequence by enumerating every subsequence of the
// shorter list. Exponential, only for short inputs.
std::size_t brute_force_lcs(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  const auto& shorter = a.size() <= b.size() ? a : b;
  const auto& longer = a.size() <= b.size() ? b : a;
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << shorter.size()); ++mask) {
    std::size_t j = 0, len = 0;
    bool ok = true;
    for (std::size_t i = 0; i < shorter.size() && ok; ++i) {
      if (!(mask & (1u << i))) continue;
      while (j < longer.size() && longer[j] != shorter[i]) ++j;
      if (j == longer.size()) ok = false;
      else {
        ++j;
        ++len;
      }
    }
    if (ok) best = std::max(best, len);
  }
  return best;
}

std::string random_sentence(std::mt19937& rng, int max_words) {
  static const char* words[] = {"the", "cat", "sat", "on", "mat", "billing", "invoice", "getPlaces",
                                "user_id", "SIM2", "a", "of", "HTTPServer", "plan", ",", ".", "(x)"};
  std::uniform_int_distribution<int> len(0, max_words);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(std::size(words)) - 1);
  std::string s;
  for (int i = len(rng); i > 0; --i) {
    if (!s.empty()) s += ' ';
    s += words[pick(rng)];
  }
  return s;
}

}  // namespace

TEST_CASE("tokenizer") {
  CHECK(tokenize("fillProductPrices") == std::vector<std::string>{"fill", "product", "prices"});
  CHECK(tokenize("user_id SIM2card") == std::vector<std::string>{"user", "id", "sim", "2", "card"});
  CHECK(tokenize("HTTPServer") == std::vector<std::string>{"httpserver"});
  CHECK(tokenize("  ,. ").empty());
  CHECK(tokenize("caf\xC3\xA9 ok") == std::vector<std::string>{"caf", "ok"});
  CHECK(identifier_words("call getPlaces() now") == std::vector<std::string>{"call", "getplaces", "now"});
}

TEST_CASE("rouge_l examples") {
  const RougeL same = rouge_l("the cat sat", "the cat sat");
  CHECK(same.precision == 1.0);
  CHECK(same.recall == 1.0);
  CHECK(same.f1 == 1.0);

  const RougeL sub = rouge_l("the cat sat", "the cat sat on the mat");
  CHECK(sub.precision == 1.0);
  CHECK(sub.recall == 0.5);
  CHECK(sub.f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  const RougeL none = rouge_l("alpha beta", "gamma delta");
  CHECK(none.precision == 0.0);
  CHECK(none.recall == 0.0);
  CHECK(none.f1 == 0.0);

  const RougeL empty = rouge_l("", "");
  CHECK(empty.f1 == 0.0);
  CHECK(rouge_l("", "a b").recall == 0.0);
}

TEST_CASE("LCS agrees with brute force") {
  std::mt19937 rng(11);
  for (int i = 0; i < 300; ++i) {
    const auto a = tokenize(random_sentence(rng, 9));
    const auto b = tokenize(random_sentence(rng, 12));
    if (a.size() > 12) continue;
    const RougeL r = rouge_l_tokens(a, b);
    const double lcs = static_cast<double>(brute_force_lcs(a, b));
    CHECK(r.precision == doctest::Approx(a.empty() ? 0.0 : lcs / a.size()).epsilon(1e-12));
    CHECK(r.recall == doctest::Approx(b.empty() ? 0.0 : lcs / b.size()).epsilon(1e-12));
  }
}

TEST_CASE("bleu examples") {
  CHECK(bleu("", "the cat") == 0.0);
  CHECK(bleu("dog", "the cat") == 0.0);
  CHECK(bleu("the cat sat on the mat", "the cat sat on the mat") == doctest::Approx(100.0).epsilon(1e-12));
  // 2 tokens against 6: p1 = 1, p2 = 2/2, p3 = 1/1, p4 = 1/1, BP = exp(1 - 3).
  CHECK(bleu("the cat", "the cat sat on the mat") == doctest::Approx(100.0 * std::exp(-2.0)).epsilon(1e-12));
  CHECK(bleu("the cat", "the cat sat on the mat") == doctest::Approx(13.5335283237).epsilon(1e-9));
}

TEST_CASE("metrics match the frozen oracle corpus") {
  const json corpus = json::parse(read_file_bytes(hiersum::testing::test_data("metric_oracle.json")));
  REQUIRE(corpus.size() == 50);
  for (const auto& item : corpus) {
    INFO(item["id"].get<std::string>());
    const std::string c = item["candidate"], r = item["reference"];
    const RougeL rl = rouge_l(c, r);
    CHECK(std::abs(rl.precision - item["rouge_l_precision"].get<double>()) <= 1e-6);
    CHECK(std::abs(rl.recall - item["rouge_l_recall"].get<double>()) <= 1e-6);
    CHECK(std::abs(rl.f1 - item["rouge_l_f1"].get<double>()) <= 1e-6);
    CHECK(std::abs(bleu(c, r) - item["bleu"].get<double>()) <= 1e-4);
  }
}

TEST_CASE("metric properties over random pairs") {
  std::mt19937 rng(2024);
  for (int i = 0; i < 1500; ++i) {
    const std::string a = random_sentence(rng, 14);
    const std::string b = random_sentence(rng, 14);
    const RougeL ab = rouge_l(a, b);
    const RougeL ba = rouge_l(b, a);
    CHECK(ab.precision == ba.recall);
    CHECK(ab.recall == ba.precision);
    for (double v : {ab.precision, ab.recall, ab.f1}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
    if (ab.precision > 0 && ab.recall > 0) {
      CHECK(ab.f1 <= std::max(ab.precision, ab.recall) + 1e-12);
      CHECK(ab.f1 >= std::min(ab.precision, ab.recall) - 1e-12);
    } else {
      CHECK(ab.f1 == 0.0);
    }
    const double s = bleu(a, b);
    CHECK(s >= 0.0);
    CHECK(s <= 100.0 + 1e-9);
    if (!tokenize(b).empty()) CHECK(bleu(b, b) >= s - 1e-9);
  }
}

TEST_CASE("cosine similarity") {
  const std::vector<double> x{1, 0}, y{0, 1}, z{2, 0};
  CHECK(cosine_similarity(x, y) == 0.0);
  CHECK(cosine_similarity(x, z) == doctest::Approx(1.0));
  CHECK(cosine_similarity(x, std::vector<double>{-1, 0}) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(cosine_similarity(x, std::vector<double>{0, 0}), Error);
  CHECK_THROWS_AS(cosine_similarity(x, std::vector<double>{1, 0, 0}), Error);
}

TEST_CASE("semantic similarity through backends") {
  MockBackend mock;
  CHECK(semantic_similarity("the billing invoice", "the billing invoice", mock) == doctest::Approx(1.0).epsilon(1e-6));

  // Two texts sharing half their tokens: recompute the mock's hashed
  // bag-of-tokens cosine by hand.
  const std::string a = "alpha beta gamma delta", b = "alpha beta epsilon zeta";
  auto bag = [](const std::string& text) {
    std::vector<double> v(MockBackend::kEmbeddingDim, 0.0);
    for (const auto& t : tokenize(text)) {
      std::uint32_t h = 2166136261u;
      for (unsigned char c : t) {
        h ^= c;
        h *= 16777619u;
      }
      v[h % MockBackend::kEmbeddingDim] += 1.0;
    }
    return v;
  };
  const auto va = bag(a), vb = bag(b);
  double dot = 0, na = 0, nb = 0;
  for (int i = 0; i < MockBackend::kEmbeddingDim; ++i) {
    dot += va[i] * vb[i];
    na += va[i] * va[i];
    nb += vb[i] * vb[i];
  }
  CHECK(semantic_similarity(a, b, mock) == doctest::Approx(dot / std::sqrt(na * nb)).epsilon(1e-12));
  CHECK(mock.embedding_calls() == 2);

  ScriptedBackend injected({});
  injected.embeddings = {{1.0, 0.0}, {0.0, 1.0}};
  CHECK(semantic_similarity("a", "b", injected) == 0.0);
  injected.embeddings = {{1.0, 0.0}, {0.0, 0.0}};
  CHECK_THROWS_AS(semantic_similarity("a", "b", injected), Error);
  CHECK_THROWS_AS(semantic_similarity("", "b", mock), std::invalid_argument);
}
