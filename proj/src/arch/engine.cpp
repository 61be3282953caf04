#include "parity/arch/engine.hpp"

#include <future>

#include "parity/core/text.hpp"

namespace parity::arch {

Tokens CallEngine::neutral_budget() const {
  return backend_->supports_thought_disable() ? 0 : backend_->provider_min();
}

std::string CallEngine::render_prelude(std::string_view system_prompt,
                                       std::string_view user_prompt) {
  std::string prelude;
  prelude.reserve(system_prompt.size() + user_prompt.size() + 16);
  prelude += system_prompt;
  prelude += "\n\n";
  prelude += user_prompt;
  prelude += "\n\n";
  prelude += kThinkOpenTag;
  prelude += '\n';
  return prelude;
}

bool CallEngine::degradation_applies(const CallSpec& spec) const {
  return options_.degradation.has_value() && !spec.budget_neutral;
}

AgentCall CallEngine::run(const CallSpec& spec) {
  const std::int64_t index = degradation_applies(spec) ? corruption_counter_++ : -1;
  return run_with_index(spec, index);
}

std::vector<AgentCall> CallEngine::run_parallel(const std::vector<CallSpec>& specs) {
  // Corruption indices are fixed before dispatch so results are independent
  // of completion order.
  std::vector<std::future<AgentCall>> futures;
  futures.reserve(specs.size());
  for (const CallSpec& spec : specs) {
    const std::int64_t index = degradation_applies(spec) ? corruption_counter_++ : -1;
    futures.push_back(std::async(std::launch::async,
                                 [this, spec, index] { return run_with_index(spec, index); }));
  }
  std::vector<AgentCall> calls;
  calls.reserve(specs.size());
  for (auto& future : futures) calls.push_back(future.get());
  return calls;
}

AgentCall CallEngine::run_with_index(const CallSpec& spec, std::int64_t corruption_index) {
  ThinkingBudget budget;
  budget.requested = spec.budget_neutral ? neutral_budget() : spec.requested;
  budget.provider_min = backend_->provider_min();

  AgentCall call = corruption_index >= 0 ? run_degraded(spec, budget, corruption_index)
                                         : run_plain(spec, budget);
  if (!spec.budget_neutral && budget.requested > 0 && budget.requested < budget.provider_min)
    call.warnings.push_back("requested budget " + std::to_string(budget.requested) +
                            " raised to provider minimum " +
                            std::to_string(budget.provider_min));
  return call;
}

AgentCall CallEngine::run_plain(const CallSpec& spec, ThinkingBudget budget) {
  provider::ChatRequest request;
  if (!spec.system_prompt.empty())
    request.messages.push_back({provider::MessageRole::system, spec.system_prompt});
  request.messages.push_back({provider::MessageRole::user, spec.user_prompt});
  request.budget = budget;
  request.temperature = spec.temperature;
  request.max_answer_tokens = options_.max_answer_tokens;

  const provider::ChatResponse response = backend_->complete_chat(request);

  AgentCall call;
  call.role = spec.role;
  call.system_prompt = spec.system_prompt;
  call.user_prompt = spec.user_prompt;
  call.think_text = response.think_text;
  call.answer_text = extract_after_think(response.answer_text);
  call.budget = budget;
  call.account = token_account_for(call.think_text, response.account.api_reported);
  call.temperature = spec.temperature;
  call.budget_neutral = spec.budget_neutral;
  return call;
}

AgentCall CallEngine::run_degraded(const CallSpec& spec, ThinkingBudget budget,
                                   std::int64_t corruption_index) {
  const std::string prelude = render_prelude(spec.system_prompt, spec.user_prompt);

  provider::ContinuationRequest think_request;
  think_request.prelude = prelude;
  think_request.cap = budget.effective_request();
  think_request.stop_at_close_tag = true;
  const provider::ContinuationResult think = backend_->complete_continuation(think_request);

  const degrade::CorruptionResult corrupted =
      degrade::corrupt(think.text, *options_.degradation, corruption_index);

  provider::ContinuationRequest answer_request;
  answer_request.prelude = prelude + corrupted.text + "\n" + std::string(kThinkCloseTag) + "\n";
  answer_request.cap = options_.max_answer_tokens;
  answer_request.stop_at_close_tag = false;
  const provider::ContinuationResult answer = backend_->complete_continuation(answer_request);

  AgentCall call;
  call.role = spec.role;
  call.system_prompt = spec.system_prompt;
  call.user_prompt = spec.user_prompt;
  call.think_text = think.text;
  call.corrupted_think = corrupted.text;
  call.answer_text = extract_after_think(answer.text);
  call.budget = budget;
  call.account = token_account_for(call.think_text, think.account.api_reported);
  call.temperature = spec.temperature;
  call.budget_neutral = spec.budget_neutral;
  call.corruption = corrupted.meta;
  return call;
}

}  // namespace parity::arch
