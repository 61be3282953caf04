#pragma once

#include <optional>

#include "parity/arch/prompts.hpp"
#include "parity/core/types.hpp"
#include "parity/degrade/corrupt.hpp"
#include "parity/provider/backend.hpp"

namespace parity::arch {

struct RunOptions {
  Tokens max_answer_tokens = 256;
  int max_steps = 4;
  int max_tasks = 4;
  int ensemble_n = 4;
  std::optional<degrade::CorruptionSpec> degradation;
  const PromptSet* prompts = nullptr;  // defaults when null
};

// The seven systems under test. Each produces one Trace; worker-level
// requested budgets always sum to the matched budget B, while planner,
// aggregator and judge calls run budget-neutral. Errors carry the question id.
Trace run_sas(const Question& question, Tokens budget, provider::Backend& backend,
              const RunOptions& options = {});
Trace run_sas_long(const Question& question, Tokens budget, provider::Backend& backend,
                   const RunOptions& options = {});
Trace run_sequential(const Question& question, Tokens budget, provider::Backend& backend,
                     const RunOptions& options = {});
Trace run_subtask_parallel(const Question& question, Tokens budget, provider::Backend& backend,
                           const RunOptions& options = {});
Trace run_parallel_roles(const Question& question, Tokens budget, provider::Backend& backend,
                         const RunOptions& options = {});
Trace run_debate(const Question& question, Tokens budget, provider::Backend& backend,
                 const RunOptions& options = {});
Trace run_ensemble(const Question& question, Tokens budget, int n, provider::Backend& backend,
                   const RunOptions& options = {});

Trace run_architecture(Architecture architecture, const Question& question, Tokens budget,
                       provider::Backend& backend, const RunOptions& options = {});

}  // namespace parity::arch
