#pragma once

#include "parity/core/types.hpp"
#include "parity/degrade/corrupt.hpp"
#include "parity/provider/backend.hpp"

namespace parity::degrade {

struct WorkflowOptions {
  Tokens max_answer_tokens = 256;
};

// Two-phase single-pass workflow: generate think text capped at the budget,
// corrupt it, rebuild the context with the corrupted reasoning and generate
// the final answer from it. The trace records the clean think text, the
// corrupted think text and the corruption metadata. Requires a backend with
// raw-prefix continuation support.
Trace degraded_answer_workflow(const Question& question, Tokens budget,
                               const CorruptionSpec& spec, provider::Backend& backend,
                               const WorkflowOptions& options = {});

}  // namespace parity::degrade
