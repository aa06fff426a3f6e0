#pragma once

#include <map>
#include <optional>
#include <string>

#include "hiersum/backend.hpp"
#include "hiersum/prompt_engine.hpp"

namespace hiersum {

struct JudgeScores {
  /// mean(n / 5) over valid samples; nullopt when every sample was dropped.
  std::map<JudgeCriterion, std::optional<double>> scores;
  std::map<JudgeCriterion, int> valid_samples;
  int samples_used = 0;
  int warnings = 0;
};

/// The integer from a final line of the form `SCORE: <n>`, n in 1..5.
std::optional<int> parse_judge_score(const std::string& reply);

/// For each criterion, issues `samples` completions. An unparseable reply is
/// retried once and then dropped (counted in warnings).
JudgeScores judge(const std::string& summary, const std::string& source, Backend& backend, const PromptEngine& engine,
                  int samples = 1, int max_output_tokens = 256);

}  // namespace hiersum
