#include <doctest.h>

#include "hiersum/judge.hpp"
#include "support/test_support.hpp"

using namespace hiersum;
using hiersum::testing::ScriptedBackend;

TEST_CASE("score line parsing") {
  CHECK(parse_judge_score("Reasoning here.\nSCORE: 4") == 4);
  CHECK(parse_judge_score("SCORE: 1\n\n  ") == 1);
  CHECK(parse_judge_score("**SCORE: 5**") == 5);
  CHECK(parse_judge_score("SCORE:3") == 3);
  CHECK_FALSE(parse_judge_score("SCORE: 6").has_value());
  CHECK_FALSE(parse_judge_score("SCORE: 0").has_value());
  CHECK_FALSE(parse_judge_score("SCORE: 4.5").has_value());
  CHECK_FALSE(parse_judge_score("SCORE: 4\nbut actually more text").has_value());
  CHECK_FALSE(parse_judge_score("score: 4").has_value());
  CHECK_FALSE(parse_judge_score("").has_value());
}

TEST_CASE("constant top score") {
  const PromptEngine engine;
  ScriptedBackend backend({"SCORE: 5"});
  const JudgeScores s = judge("summary", "source", backend, engine, 1);
  CHECK(s.samples_used == 1);
  CHECK(s.warnings == 0);
  REQUIRE(s.scores.size() == 5);
  for (const auto& [criterion, value] : s.scores) {
    REQUIRE(value.has_value());
    CHECK(*value == 1.0);
  }
  CHECK(backend.completion_calls() == 5);
}

TEST_CASE("samples are averaged") {
  const PromptEngine engine;
  std::vector<std::string> script;
  for (int i = 0; i < 5; ++i) {
    script.push_back("SCORE: 3");
    script.push_back("SCORE: 4");
  }
  ScriptedBackend backend(script);
  const JudgeScores s = judge("summary", "source", backend, engine, 2);
  for (const auto& [criterion, value] : s.scores) {
    REQUIRE(value.has_value());
    CHECK(*value == doctest::Approx(0.7));
  }
  CHECK(s.samples_used == 2);
}

TEST_CASE("garbage replies leave criteria missing") {
  const PromptEngine engine;
  ScriptedBackend backend({"I refuse to score."});
  const JudgeScores s = judge("summary", "source", backend, engine, 2);
  for (const auto& [criterion, value] : s.scores) CHECK_FALSE(value.has_value());
  CHECK(s.warnings == 5 * 2 * 2);
  // Each sample is tried twice.
  CHECK(backend.completion_calls() == 5 * 2 * 2);
}

TEST_CASE("one retry rescues a sample") {
  const PromptEngine engine;
  std::vector<std::string> script;
  for (int i = 0; i < 5; ++i) {
    script.push_back("no score");
    script.push_back("SCORE: 2");
  }
  ScriptedBackend backend(script);
  const JudgeScores s = judge("summary", "source", backend, engine, 1);
  for (const auto& [criterion, value] : s.scores) {
    REQUIRE(value.has_value());
    CHECK(*value == doctest::Approx(0.4));
  }
  CHECK(s.warnings == 5);
}

TEST_CASE("judge prompts go to the backend per criterion") {
  const PromptEngine engine;
  ScriptedBackend backend({"SCORE: 3"});
  judge("my summary", "class A {}", backend, engine, 1);
  const auto reqs = backend.requests();
  REQUIRE(reqs.size() == 5);
  for (std::size_t i = 0; i < reqs.size(); ++i) {
    CHECK(reqs[i].user_text.find(std::string(definition(kAllJudgeCriteria[i]))) != std::string::npos);
    CHECK(reqs[i].user_text.find("my summary") != std::string::npos);
  }
}

TEST_CASE("judge preconditions") {
  const PromptEngine engine;
  ScriptedBackend backend({"SCORE: 3"});
  CHECK_THROWS_AS(judge("s", "src", backend, engine, 0), std::invalid_argument);
}
