#include "parity/degrade/workflow.hpp"

#include "parity/arch/runner.hpp"

namespace parity::degrade {

Trace degraded_answer_workflow(const Question& question, Tokens budget,
                               const CorruptionSpec& spec, provider::Backend& backend,
                               const WorkflowOptions& options) {
  arch::RunOptions run_options;
  run_options.max_answer_tokens = options.max_answer_tokens;
  run_options.degradation = spec;
  return arch::run_sas(question, budget, backend, run_options);
}

}  // namespace parity::degrade
