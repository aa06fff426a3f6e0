#include "hiersum/judge.hpp"

#include <algorithm>
#include <stdexcept>

#include "hiersum/text_util.hpp"

namespace hiersum {

std::optional<int> parse_judge_score(const std::string& reply) {
  const auto lines = split_lines(reply);
  auto it = std::find_if(lines.rbegin(), lines.rend(), [](const std::string& l) { return !trim(l).empty(); });
  if (it == lines.rend()) return std::nullopt;
  std::string line = trim(*it);
  // Tolerate markdown emphasis around the line, nothing else.
  while (!line.empty() && (line.front() == '*' || line.front() == '`')) line.erase(line.begin());
  while (!line.empty() && (line.back() == '*' || line.back() == '`')) line.pop_back();
  constexpr std::string_view kPrefix = "SCORE:";
  if (line.compare(0, kPrefix.size(), kPrefix) != 0) return std::nullopt;
  const std::string value = trim(std::string_view(line).substr(kPrefix.size()));
  if (value.size() != 1 || value[0] < '1' || value[0] > '5') return std::nullopt;
  return value[0] - '0';
}

JudgeScores judge(const std::string& summary, const std::string& source, Backend& backend, const PromptEngine& engine,
                  int samples, int max_output_tokens) {
  if (samples < 1) throw std::invalid_argument("judge needs at least one sample");
  JudgeScores out;
  out.samples_used = samples;
  for (auto criterion : kAllJudgeCriteria) {
    const RenderedPrompt prompt = engine.render_judge_prompt(summary, source, criterion);
    const ChatRequest request{prompt.system_text, prompt.user_text, max_output_tokens, std::nullopt};
    int total = 0;
    int valid = 0;
    for (int s = 0; s < samples; ++s) {
      std::optional<int> score;
      for (int attempt = 0; attempt < 2 && !score; ++attempt) {
        score = parse_judge_score(backend.complete(request).text);
        if (!score) ++out.warnings;
      }
      if (score) {
        total += *score;
        ++valid;
      }
    }
    out.valid_samples[criterion] = valid;
    out.scores[criterion] =
        valid == 0 ? std::nullopt : std::optional<double>(static_cast<double>(total) / valid / 5.0);
  }
  return out;
}

}  // namespace hiersum
