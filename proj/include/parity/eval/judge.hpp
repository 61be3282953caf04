#pragma once

#include <string>
#include <vector>

#include "parity/arch/prompts.hpp"
#include "parity/core/types.hpp"
#include "parity/provider/backend.hpp"

namespace parity::eval {

struct JudgedRecord {
  std::string question_id;
  Architecture architecture = Architecture::sas;
  std::string final_answer;
  std::string gold;
  bool correct = false;
  std::string judge_raw;
  std::string trace_ref;
  // Set when the judge reply had no parseable Decision; the item counts as
  // incorrect.
  bool unparseable_verdict = false;
};

// System prompt plus the rubric user prompt with the three slots filled.
// Values are inserted literally, no escaping.
std::vector<provider::Message> build_judge_prompt(
    const std::string& question_text, const std::string& predicted, const std::string& gold,
    const arch::PromptSet& prompts = arch::default_prompts());

// Case-insensitive scan for the last "Decision" followed within 20 characters
// by TRUE or FALSE. Throws UnparseableVerdict when no occurrence qualifies.
bool parse_judge_decision(const std::string& text);

// One judge call at temperature 0 with thinking disabled. Judge tokens never
// enter the trace's budget accounting.
JudgedRecord judge(const Question& question, const Trace& trace, provider::Backend& backend,
                   const arch::PromptSet& prompts = arch::default_prompts());

}  // namespace parity::eval
