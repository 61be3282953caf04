#include "parity/core/types.hpp"

#include <stdexcept>

namespace parity {

std::string to_string(DatasetTag tag) {
  switch (tag) {
    case DatasetTag::frames: return "frames";
    case DatasetTag::musique: return "musique";
    case DatasetTag::custom: return "custom";
  }
  throw std::logic_error("unknown dataset tag");
}

DatasetTag dataset_tag_from_string(const std::string& name) {
  if (name == "frames") return DatasetTag::frames;
  if (name == "musique") return DatasetTag::musique;
  if (name == "custom") return DatasetTag::custom;
  throw std::invalid_argument("unknown dataset tag: " + name);
}

void validate(const Question& question) {
  if (question.id.empty()) throw std::invalid_argument("question id must be nonempty");
  if (question.text.empty())
    throw std::invalid_argument("question text must be nonempty (id " + question.id + ")");
  if (question.gold.empty())
    throw std::invalid_argument("question gold must be nonempty (id " + question.id + ")");
  if (question.hops < 1)
    throw std::invalid_argument("question hops must be >= 1 (id " + question.id + ")");
}

TokenAccount token_account_for(std::string_view think_text, Tokens api_reported) {
  if (api_reported < 0) throw std::invalid_argument("api_reported must be >= 0");
  TokenAccount account;
  account.visible_words = visible_word_count(think_text);
  account.assumed = assumed_tokens(account.visible_words);
  account.api_reported = api_reported;
  return account;
}

std::string to_string(CorruptionMethod method) {
  switch (method) {
    case CorruptionMethod::none: return "none";
    case CorruptionMethod::del: return "delete";
    case CorruptionMethod::mask: return "mask";
    case CorruptionMethod::substitute: return "substitute";
    case CorruptionMethod::distract: return "distract";
  }
  throw std::logic_error("unknown corruption method");
}

CorruptionMethod corruption_method_from_string(const std::string& name) {
  if (name == "none") return CorruptionMethod::none;
  if (name == "delete") return CorruptionMethod::del;
  if (name == "mask") return CorruptionMethod::mask;
  if (name == "substitute") return CorruptionMethod::substitute;
  if (name == "distract") return CorruptionMethod::distract;
  throw std::invalid_argument("unknown corruption method: " + name);
}

void validate(const AgentCall& call) {
  if (call.role.empty()) throw std::invalid_argument("agent call role must be nonempty");
  if (call.temperature < 0.0 || call.temperature > 1.0)
    throw std::invalid_argument("temperature must be in [0,1]");
  if (call.budget.requested < 0) throw std::invalid_argument("requested budget must be >= 0");
  if (call.account.api_reported < 0 || call.account.visible_words < 0 ||
      call.account.assumed < 0)
    throw std::invalid_argument("token account fields must be >= 0");
  if (call.account.visible_words != visible_word_count(call.think_text))
    throw std::invalid_argument("account.visible_words inconsistent with think_text");
  if (call.account.assumed != assumed_tokens(call.account.visible_words))
    throw std::invalid_argument("account.assumed inconsistent with visible_words");
  if (call.corruption && call.corruption->method == CorruptionMethod::none &&
      call.corruption->affected_count != 0)
    throw std::invalid_argument("corruption method none implies affected_count 0");
}

std::string to_string(Architecture architecture) {
  switch (architecture) {
    case Architecture::sas: return "sas";
    case Architecture::sas_long: return "sas_long";
    case Architecture::sequential: return "sequential";
    case Architecture::subtask_parallel: return "subtask_parallel";
    case Architecture::parallel_roles: return "parallel_roles";
    case Architecture::debate: return "debate";
    case Architecture::ensemble: return "ensemble";
  }
  throw std::logic_error("unknown architecture");
}

Architecture architecture_from_string(const std::string& name) {
  if (name == "sas") return Architecture::sas;
  if (name == "sas_long") return Architecture::sas_long;
  if (name == "sequential") return Architecture::sequential;
  if (name == "subtask_parallel") return Architecture::subtask_parallel;
  if (name == "parallel_roles") return Architecture::parallel_roles;
  if (name == "debate") return Architecture::debate;
  if (name == "ensemble") return Architecture::ensemble;
  throw std::invalid_argument("unknown architecture: " + name);
}

std::string table_label(Architecture architecture) {
  switch (architecture) {
    case Architecture::sas: return "SAS";
    case Architecture::sas_long: return "SAS-L";
    case Architecture::sequential: return "Seq";
    case Architecture::subtask_parallel: return "Sub";
    case Architecture::parallel_roles: return "Roles";
    case Architecture::debate: return "Deb";
    case Architecture::ensemble: return "Ens";
  }
  throw std::logic_error("unknown architecture");
}

Trace finalize_trace(Architecture architecture, std::string question_id,
                     std::vector<AgentCall> calls, bool plan_fallback_used) {
  Trace trace;
  trace.architecture = architecture;
  trace.question_id = std::move(question_id);
  trace.calls = std::move(calls);
  trace.plan_fallback_used = plan_fallback_used;
  for (const AgentCall& call : trace.calls) {
    trace.total_requested += call.budget.requested;
    trace.total_api_reported += call.account.api_reported;
    trace.total_assumed += call.account.assumed;
    if (call.corruption && !trace.corruption) trace.corruption = call.corruption;
  }
  if (!trace.calls.empty()) trace.final_answer = trace.calls.back().answer_text;
  validate(trace);
  return trace;
}

void validate(const Trace& trace) {
  if (trace.calls.empty()) throw std::invalid_argument("trace must contain at least one call");
  Tokens requested = 0, api = 0, assumed = 0;
  for (const AgentCall& call : trace.calls) {
    validate(call);
    requested += call.budget.requested;
    api += call.account.api_reported;
    assumed += call.account.assumed;
  }
  if (requested != trace.total_requested || api != trace.total_api_reported ||
      assumed != trace.total_assumed)
    throw std::invalid_argument("trace totals do not match the sums over calls");
  if (trace.final_answer != trace.calls.back().answer_text)
    throw std::invalid_argument("final_answer must be the final call's answer_text");
}

Tokens matched_budget(const Trace& trace) {
  Tokens total = 0;
  for (const AgentCall& call : trace.calls)
    if (!call.budget_neutral) total += call.budget.requested;
  return total;
}

std::string concatenated_think_text(const Trace& trace) {
  std::string out;
  for (const AgentCall& call : trace.calls) {
    if (call.think_text.empty()) continue;
    if (!out.empty()) out += '\n';
    out += call.think_text;
  }
  return out;
}

}  // namespace parity
