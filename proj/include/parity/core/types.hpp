#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "parity/core/text.hpp"

namespace parity {

enum class DatasetTag { frames, musique, custom };

std::string to_string(DatasetTag tag);
DatasetTag dataset_tag_from_string(const std::string& name);

// One benchmark item.
struct Question {
  std::string id;
  std::string text;
  std::string gold;
  int hops = 1;
  DatasetTag dataset = DatasetTag::custom;
  // Original wording when this question is a paraphrase; empty otherwise.
  std::string paraphrased_from;
};

// Throws std::invalid_argument on empty id/text/gold or hops < 1.
void validate(const Question& question);

// Requested per-call thinking cap plus the smallest budget the backend honors.
struct ThinkingBudget {
  Tokens requested = 0;
  Tokens provider_min = 0;

  // What is actually transmitted: raised to provider_min when a positive
  // request undershoots it; zero stays zero (thinking disabled).
  Tokens effective_request() const {
    return requested > 0 ? std::max(requested, provider_min) : 0;
  }
};

// Three parallel token accountings for one call's thinking segment.
struct TokenAccount {
  Tokens api_reported = 0;
  std::int64_t visible_words = 0;
  Tokens assumed = 0;
};

// Builds a consistent account from the think text; enforces the
// visible_words/assumed invariant at construction.
TokenAccount token_account_for(std::string_view think_text, Tokens api_reported);

enum class CorruptionMethod { none, del, mask, substitute, distract };

std::string to_string(CorruptionMethod method);
CorruptionMethod corruption_method_from_string(const std::string& name);

struct CorruptionMeta {
  CorruptionMethod method = CorruptionMethod::none;
  double level = 0.0;  // alpha for rate operators, every_n or k otherwise
  std::int64_t seed = 0;
  std::int64_t call_index = 0;
  std::int64_t affected_count = 0;
};

// Record of one model invocation.
struct AgentCall {
  std::string role;
  std::string system_prompt;
  std::string user_prompt;
  std::string think_text;
  std::string corrupted_think;  // set only when this call ran degraded
  std::string answer_text;
  ThinkingBudget budget;
  TokenAccount account;
  double temperature = 0.0;
  bool budget_neutral = false;
  std::vector<std::string> warnings;
  std::optional<CorruptionMeta> corruption;
};

void validate(const AgentCall& call);

enum class Architecture {
  sas,
  sas_long,
  sequential,
  subtask_parallel,
  parallel_roles,
  debate,
  ensemble,
};

std::string to_string(Architecture architecture);
Architecture architecture_from_string(const std::string& name);
// Short labels used in report tables.
std::string table_label(Architecture architecture);

// Full record of one architecture run on one question.
struct Trace {
  Architecture architecture = Architecture::sas;
  std::string question_id;
  std::vector<AgentCall> calls;
  std::string final_answer;
  Tokens total_requested = 0;
  Tokens total_api_reported = 0;
  Tokens total_assumed = 0;
  std::optional<CorruptionMeta> corruption;
  std::optional<bool> judged_correct;
  bool plan_fallback_used = false;
};

// Computes the trace totals from its calls, sets final_answer to the last
// call's answer and validates every invariant. All runners finish through
// here.
Trace finalize_trace(Architecture architecture, std::string question_id,
                     std::vector<AgentCall> calls, bool plan_fallback_used = false);

void validate(const Trace& trace);

// Sum of requested thinking budgets over non-neutral calls; must equal the
// matched budget B.
Tokens matched_budget(const Trace& trace);

// All calls' think texts joined with newlines, in call order.
std::string concatenated_think_text(const Trace& trace);

}  // namespace parity
