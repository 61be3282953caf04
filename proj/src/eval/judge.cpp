#include "parity/eval/judge.hpp"

#include <cctype>

#include "parity/core/errors.hpp"

namespace parity::eval {

namespace {

std::string to_lower(const std::string& text) {
  std::string out = text;
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::vector<provider::Message> build_judge_prompt(const std::string& question_text,
                                                  const std::string& predicted,
                                                  const std::string& gold,
                                                  const arch::PromptSet& prompts) {
  const std::string user = arch::substitute(prompts.judge_user,
                                            {
                                                {"<question>", question_text},
                                                {"<LLM_response>", predicted},
                                                {"<ground_truth_answer>", gold},
                                            });
  return {{provider::MessageRole::system, prompts.judge_system},
          {provider::MessageRole::user, user}};
}

bool parse_judge_decision(const std::string& text) {
  static constexpr std::string_view kKeyword = "decision";
  static constexpr size_t kWindow = 20;
  const std::string lower = to_lower(text);
  for (size_t pos = lower.rfind(kKeyword); pos != std::string::npos;
       pos = (pos == 0 ? std::string::npos : lower.rfind(kKeyword, pos - 1))) {
    const size_t window_start = pos + kKeyword.size();
    const std::string window = lower.substr(window_start, kWindow);
    const size_t true_at = window.find("true");
    const size_t false_at = window.find("false");
    if (true_at == std::string::npos && false_at == std::string::npos) continue;
    if (true_at == std::string::npos) return false;
    if (false_at == std::string::npos) return true;
    return true_at < false_at;
  }
  throw UnparseableVerdict("no Decision token in judge reply");
}

JudgedRecord judge(const Question& question, const Trace& trace, provider::Backend& backend,
                   const arch::PromptSet& prompts) {
  provider::ChatRequest request;
  request.messages = build_judge_prompt(question.text, trace.final_answer, question.gold, prompts);
  request.budget.requested = backend.supports_thought_disable() ? 0 : backend.provider_min();
  request.budget.provider_min = backend.provider_min();
  request.temperature = 0.0;

  const provider::ChatResponse response = backend.complete_chat(request);

  JudgedRecord record;
  record.question_id = question.id;
  record.architecture = trace.architecture;
  record.final_answer = trace.final_answer;
  record.gold = question.gold;
  record.judge_raw = response.answer_text;
  record.trace_ref = to_string(trace.architecture) + "/" + question.id;
  try {
    record.correct = parse_judge_decision(response.answer_text);
  } catch (const UnparseableVerdict&) {
    record.correct = false;
    record.unparseable_verdict = true;
  }
  return record;
}

}  // namespace parity::eval
