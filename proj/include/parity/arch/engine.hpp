#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "parity/core/types.hpp"
#include "parity/degrade/corrupt.hpp"
#include "parity/provider/backend.hpp"

namespace parity::arch {

struct EngineOptions {
  Tokens max_answer_tokens = 256;
  std::optional<degrade::CorruptionSpec> degradation;
};

// Issues the model calls for one question run and turns responses into
// AgentCall records. When a corruption spec is set, every budgeted call runs
// the two-phase think-corrupt-answer workflow; the corruption call counter is
// owned here, one engine per question, so indices are assigned in recorded
// call order no matter how execution interleaves.
class CallEngine {
 public:
  struct CallSpec {
    std::string role;
    std::string system_prompt;
    std::string user_prompt;
    Tokens requested = 0;  // ignored for budget-neutral calls
    bool budget_neutral = false;
    double temperature = 0.0;
  };

  CallEngine(provider::Backend& backend, EngineOptions options)
      : backend_(&backend), options_(std::move(options)) {}

  AgentCall run(const CallSpec& spec);

  // Dispatches the calls concurrently and returns results in input order.
  std::vector<AgentCall> run_parallel(const std::vector<CallSpec>& specs);

  // What planner/aggregator/judge calls request: zero when the backend can
  // disable thinking, else the provider minimum.
  Tokens neutral_budget() const;

  // Prompt serialization used by the continuation workflow; ends inside an
  // open think segment.
  static std::string render_prelude(std::string_view system_prompt,
                                    std::string_view user_prompt);

 private:
  AgentCall run_with_index(const CallSpec& spec, std::int64_t corruption_index);
  AgentCall run_plain(const CallSpec& spec, ThinkingBudget budget);
  AgentCall run_degraded(const CallSpec& spec, ThinkingBudget budget,
                         std::int64_t corruption_index);
  bool degradation_applies(const CallSpec& spec) const;

  provider::Backend* backend_;
  EngineOptions options_;
  std::int64_t corruption_counter_ = 0;
};

}  // namespace parity::arch
