#pragma once

#include <json.hpp>

#include "parity/core/types.hpp"
#include "parity/degrade/corrupt.hpp"
#include "parity/eval/judge.hpp"

// JSON bindings for the domain types persisted in run records.

namespace parity {

inline void to_json(nlohmann::json& j, const ThinkingBudget& budget) {
  j = {{"requested", budget.requested}, {"provider_min", budget.provider_min}};
}

inline void from_json(const nlohmann::json& j, ThinkingBudget& budget) {
  budget.requested = j.value("requested", Tokens{0});
  budget.provider_min = j.value("provider_min", Tokens{0});
}

inline void to_json(nlohmann::json& j, const TokenAccount& account) {
  j = {{"api_reported", account.api_reported},
       {"visible_words", account.visible_words},
       {"assumed_tokens", account.assumed}};
}

inline void from_json(const nlohmann::json& j, TokenAccount& account) {
  account.api_reported = j.value("api_reported", Tokens{0});
  account.visible_words = j.value("visible_words", std::int64_t{0});
  account.assumed = j.value("assumed_tokens", Tokens{0});
}

inline void to_json(nlohmann::json& j, const CorruptionMeta& meta) {
  j = {{"method", to_string(meta.method)},
       {"level", meta.level},
       {"seed", meta.seed},
       {"call_index", meta.call_index},
       {"affected_count", meta.affected_count}};
}

inline void from_json(const nlohmann::json& j, CorruptionMeta& meta) {
  meta.method = corruption_method_from_string(j.value("method", "none"));
  meta.level = j.value("level", 0.0);
  meta.seed = j.value("seed", std::int64_t{0});
  meta.call_index = j.value("call_index", std::int64_t{0});
  meta.affected_count = j.value("affected_count", std::int64_t{0});
}

inline void to_json(nlohmann::json& j, const AgentCall& call) {
  j = {{"role", call.role},
       {"system_prompt", call.system_prompt},
       {"user_prompt", call.user_prompt},
       {"think_text", call.think_text},
       {"answer_text", call.answer_text},
       {"budget", call.budget},
       {"account", call.account},
       {"temperature", call.temperature},
       {"budget_neutral", call.budget_neutral}};
  if (!call.corrupted_think.empty()) j["corrupted_think"] = call.corrupted_think;
  if (!call.warnings.empty()) j["warnings"] = call.warnings;
  if (call.corruption) j["corruption"] = *call.corruption;
}

inline void from_json(const nlohmann::json& j, AgentCall& call) {
  call.role = j.value("role", "");
  call.system_prompt = j.value("system_prompt", "");
  call.user_prompt = j.value("user_prompt", "");
  call.think_text = j.value("think_text", "");
  call.corrupted_think = j.value("corrupted_think", "");
  call.answer_text = j.value("answer_text", "");
  if (j.contains("budget")) call.budget = j["budget"].get<ThinkingBudget>();
  if (j.contains("account")) call.account = j["account"].get<TokenAccount>();
  call.temperature = j.value("temperature", 0.0);
  call.budget_neutral = j.value("budget_neutral", false);
  if (j.contains("warnings")) call.warnings = j["warnings"].get<std::vector<std::string>>();
  if (j.contains("corruption")) call.corruption = j["corruption"].get<CorruptionMeta>();
}

inline void to_json(nlohmann::json& j, const Trace& trace) {
  j = {{"architecture", to_string(trace.architecture)},
       {"question_id", trace.question_id},
       {"calls", trace.calls},
       {"final_answer", trace.final_answer},
       {"total_requested", trace.total_requested},
       {"total_api_reported", trace.total_api_reported},
       {"total_assumed", trace.total_assumed},
       {"plan_fallback_used", trace.plan_fallback_used}};
  if (trace.corruption) j["corruption"] = *trace.corruption;
  if (trace.judged_correct) j["judged_correct"] = *trace.judged_correct;
}

inline void from_json(const nlohmann::json& j, Trace& trace) {
  trace.architecture = architecture_from_string(j.at("architecture").get<std::string>());
  trace.question_id = j.value("question_id", "");
  trace.calls = j.value("calls", std::vector<AgentCall>{});
  trace.final_answer = j.value("final_answer", "");
  trace.total_requested = j.value("total_requested", Tokens{0});
  trace.total_api_reported = j.value("total_api_reported", Tokens{0});
  trace.total_assumed = j.value("total_assumed", Tokens{0});
  trace.plan_fallback_used = j.value("plan_fallback_used", false);
  if (j.contains("corruption")) trace.corruption = j["corruption"].get<CorruptionMeta>();
  if (j.contains("judged_correct")) trace.judged_correct = j["judged_correct"].get<bool>();
}

inline void to_json(nlohmann::json& j, const Question& question) {
  j = {{"id", question.id},
       {"question", question.text},
       {"answer", question.gold},
       {"hops", question.hops},
       {"dataset", to_string(question.dataset)}};
  if (!question.paraphrased_from.empty()) j["paraphrased_from"] = question.paraphrased_from;
}

}  // namespace parity

namespace parity::eval {

inline void to_json(nlohmann::json& j, const JudgedRecord& record) {
  j = {{"question_id", record.question_id},
       {"architecture", to_string(record.architecture)},
       {"final_answer", record.final_answer},
       {"gold", record.gold},
       {"correct", record.correct},
       {"judge_raw", record.judge_raw},
       {"trace_ref", record.trace_ref},
       {"unparseable_verdict", record.unparseable_verdict}};
}

inline void from_json(const nlohmann::json& j, JudgedRecord& record) {
  record.question_id = j.value("question_id", "");
  record.architecture = architecture_from_string(j.at("architecture").get<std::string>());
  record.final_answer = j.value("final_answer", "");
  record.gold = j.value("gold", "");
  record.correct = j.value("correct", false);
  record.judge_raw = j.value("judge_raw", "");
  record.trace_ref = j.value("trace_ref", "");
  record.unparseable_verdict = j.value("unparseable_verdict", false);
}

}  // namespace parity::eval
