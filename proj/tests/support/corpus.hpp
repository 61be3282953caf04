#pragma once

// Scripted fixtures shared by the architecture, CLI and acceptance suites.
//
// Trigger registration order matters: entries are scanned first to last, so
// more specific contexts (judge rubric, aggregator systems) come before the
// generic worker triggers whose text can also appear inside later prompts.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "parity/core/types.hpp"
#include "parity/provider/scripted.hpp"

namespace test_support {

inline constexpr const char* kTwoStepPlanJson =
    R"({"steps":[{"id":1,"name":"Find author","instruction":"Identify the author."},)"
    R"({"id":2,"name":"Verify","instruction":"Verify the finding."}]})";

inline constexpr const char* kTwoTaskJson =
    R"({"tasks":[{"id":1,"name":"Find A","instruction":"Find fact A.","deliverable":"Fact A"},)"
    R"({"id":2,"name":"Find B","instruction":"Find fact B.","deliverable":"Fact B"}]})";

// Fixed single-question scenario used for the prompt-fidelity goldens.
inline const parity::Question& golden_question() {
  static const parity::Question question{
      "gq", "Who wrote the book about the valley?", "Jane Austen", 4,
      parity::DatasetTag::custom, ""};
  return question;
}

inline void register_golden_scenario(parity::provider::ScriptedBackend& backend) {
  using V = std::vector<std::string>;
  backend.register_reply(V{"===Task==="}, "", "{Explanation: ok, Decision: TRUE}");
  backend.register_reply(V{"multiple perspectives"}, "sasl think words", "SAS-L answer");
  backend.register_reply(V{"You are a careful planner"}, "", kTwoStepPlanJson);
  backend.register_reply(V{"Read step outputs"}, "", "Jane Austen");
  backend.register_reply(V{"You are responsible for Step 1:"}, "s1 think",
                         "Author candidate: Jane Austen");
  backend.register_reply(V{"You are responsible for Step 2:"}, "s2 think",
                         "Verified: Jane Austen");
  backend.register_reply(V{"independent subtasks"}, "", kTwoTaskJson);
  backend.register_reply(V{"You are a reducer"}, "", "Jane Austen");
  backend.register_reply(V{"Instruction: Find fact A."}, "t1 think", "fact-A-answer");
  backend.register_reply(V{"Instruction: Find fact B."}, "t2 think", "fact-B-answer");
  backend.register_reply(V{"Read the worker outputs"}, "", "Jane Austen");
  backend.register_reply(V{"Role: Solver"}, "r1 think", "sol-ans");
  backend.register_reply(V{"Role: Fact Extractor"}, "r2 think", "facts-ans");
  backend.register_reply(V{"Role: Skeptic"}, "r3 think", "skeptic-ans");
  backend.register_reply(V{"Role: Second Solver"}, "r4 think", "second-ans");
  backend.register_reply(V{"two candidate answers"}, "", "Improved Both");
  backend.register_reply(V{"You are a debater"}, "deb think", "Answer Alpha");
  backend.register_reply(V{"You are a critic"}, "crit think", "Improved Both");
  backend.register_reply(V{"multiple candidate answers"}, "", "cand-ans");
  backend.register_reply(V{"Solve the question independently"}, "cand think", "cand-ans");
  backend.register_reply(V{"Think step by step, then answer"}, "sas think words", "Jane Austen");
}

// ---------------------------------------------------------------------------
// 20-question corpus. Verdicts are wired so a SAS-vs-Sequential join lands in
// all four buckets: q00..q02 MR/SW, q03..q06 SR/MW, q07..q12 BR, q13..q19 BW.

inline std::string corpus_tag(int i) {
  char tag[8];
  std::snprintf(tag, sizeof(tag), "%02d", i);
  return tag;
}

inline bool corpus_sas_correct(int i) { return i >= 3 && i <= 12; }
inline bool corpus_seq_correct(int i) { return i <= 2 || (i >= 7 && i <= 12); }
inline bool corpus_other_correct(int i) { return i % 2 == 0; }

inline std::vector<parity::Question> corpus_questions() {
  std::vector<parity::Question> questions;
  for (int i = 0; i < 20; ++i) {
    const std::string tag = corpus_tag(i);
    parity::Question question;
    question.id = "q" + tag;
    question.text = "Scripted question " + tag + " about topic [q" + tag + "]?";
    question.gold = "gold-" + tag;
    question.hops = 4;
    question.dataset = parity::DatasetTag::musique;
    questions.push_back(question);
  }
  return questions;
}

struct ScriptEntry {
  std::vector<std::string> trigger;
  std::string think;
  std::string answer;
};

inline std::vector<ScriptEntry> corpus_script() {
  std::vector<ScriptEntry> entries;
  const auto verdict = [](bool correct) {
    return correct ? std::string("{Explanation: present, Decision: TRUE}")
                   : std::string("{Explanation: absent, Decision: FALSE}");
  };

  for (int i = 0; i < 20; ++i) {
    const std::string tag = corpus_tag(i);
    const std::string marker = "[q" + tag + "]";
    const std::string gold = "gold-" + tag;

    // judge verdicts, most specific triggers first
    entries.push_back({{"===Task===", "Predicted Answer: sas-final-" + tag}, "",
                       verdict(corpus_sas_correct(i))});
    entries.push_back({{"===Task===", "Predicted Answer: seq-final-" + tag}, "",
                       verdict(corpus_seq_correct(i))});
    for (const char* system : {"sasl", "sub", "roles", "deb", "ens"})
      entries.push_back({{"===Task===", "Predicted Answer: " + std::string(system) +
                                            "-final-" + tag},
                         "",
                         verdict(corpus_other_correct(i))});

    // gold lands in the thinking on a fixed cadence so the diagnostics see
    // both extraction failures and clean misses
    const std::string sas_think =
        i % 3 == 0 ? "thinking mentions " + gold + " early" : "thinking stays vague";
    const std::string seq_think =
        i % 4 == 0 ? "steps surface " + gold + " somewhere" : "steps wander off";

    entries.push_back({{"multiple perspectives", marker}, "long analysis words here",
                       "sasl-final-" + tag});
    entries.push_back({{"You are a careful planner", marker}, "", kTwoStepPlanJson});
    entries.push_back({{"Read step outputs", marker}, "", "seq-final-" + tag});
    entries.push_back(
        {{"You are responsible for Step 1:", marker}, seq_think, "seq-s1-" + tag});
    entries.push_back(
        {{"You are responsible for Step 2:", marker}, "more step words", "seq-s2-" + tag});
    entries.push_back({{"independent subtasks", marker}, "", kTwoTaskJson});
    entries.push_back({{"You are a reducer", marker}, "", "sub-final-" + tag});
    entries.push_back({{"Instruction: Find fact A.", marker}, "w1 w2", "sub-t1-" + tag});
    entries.push_back({{"Instruction: Find fact B.", marker}, "w3 w4", "sub-t2-" + tag});
    entries.push_back({{"Read the worker outputs", marker}, "", "roles-final-" + tag});
    entries.push_back({{"Role: Solver", marker}, "solver words", "roles-sol-" + tag});
    entries.push_back({{"Role: Fact Extractor", marker}, "extractor words",
                       "roles-facts-" + tag});
    entries.push_back({{"Role: Skeptic", marker}, "skeptic words", "roles-skep-" + tag});
    entries.push_back({{"Role: Second Solver", marker}, "second words", "roles-sec-" + tag});
    entries.push_back({{"two candidate answers", marker}, "", "deb-final-" + tag});
    entries.push_back({{"You are a debater", marker}, "debater words", "deb-ans-" + tag});
    entries.push_back({{"You are a critic", "deb-ans-" + tag}, "critic words",
                       "deb-improved-" + tag});
    entries.push_back({{"multiple candidate answers", marker}, "", "ens-final-" + tag});
    entries.push_back({{"Solve the question independently", marker}, "candidate words",
                       "ens-cand-" + tag});
    entries.push_back({{"Think step by step, then answer", marker}, sas_think,
                       "sas-final-" + tag});
  }
  // judge catch-all keeps unparseable verdicts out of the corpus runs
  entries.push_back({{"===Task==="}, "", "{Explanation: fallback, Decision: FALSE}"});
  return entries;
}

inline void register_corpus(parity::provider::ScriptedBackend& backend) {
  for (const ScriptEntry& entry : corpus_script())
    backend.register_reply(entry.trigger, entry.think, entry.answer);
}

// Writes questions.jsonl + script.jsonl for CLI-level runs; returns the two
// paths.
inline std::pair<std::string, std::string> write_corpus_files(
    const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::string questions_path = (dir / "questions.jsonl").string();
  {
    std::ofstream out(questions_path, std::ios::binary);
    for (const parity::Question& question : corpus_questions()) {
      const nlohmann::json record = {{"id", question.id},
                                     {"question", question.text},
                                     {"answer", question.gold},
                                     {"hops", question.hops},
                                     {"dataset", "musique"}};
      out << record.dump() << '\n';
    }
  }
  const std::string script_path = (dir / "script.jsonl").string();
  {
    std::ofstream out(script_path, std::ios::binary);
    for (const ScriptEntry& entry : corpus_script()) {
      const nlohmann::json record = {
          {"trigger", entry.trigger}, {"think", entry.think}, {"answer", entry.answer}};
      out << record.dump() << '\n';
    }
  }
  return {questions_path, script_path};
}

}  // namespace test_support
