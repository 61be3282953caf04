#pragma once

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace parity::arch {

// Every prompt and user template the pipelines send, as shipped text. Each
// field can be overridden by a file of the same name (plus .txt) in a prompts
// directory.
struct PromptSet {
  std::string sas_system;
  std::string sas_long_prefix;
  std::string seq_planner_system;
  std::string seq_step_system;
  std::string seq_step_user;
  std::string seq_aggregator_system;
  std::string seq_aggregator_user;
  std::string sub_planner_system;
  std::string sub_worker_system;
  std::string sub_worker_user;
  std::string sub_aggregator_system;
  std::string sub_aggregator_user;
  std::string roles_worker_system;
  std::string roles_worker_user;
  std::string roles_aggregator_system;
  std::string roles_aggregator_user;
  std::string debate_debater_system;
  std::string debate_critic_system;
  std::string debate_critique_user;
  std::string debate_aggregator_system;
  std::string debate_aggregator_user;
  std::string ensemble_candidate_system;
  std::string ensemble_aggregator_system;
  std::string ensemble_aggregator_user;
  std::string judge_system;
  std::string judge_user;
  std::string deep_paraphrase_system;
};

const PromptSet& default_prompts();

// Starts from the defaults and replaces any field whose override file exists
// in the directory. Missing directory is an error; missing files are fine.
PromptSet load_prompts(const std::string& dir);

// Single-pass placeholder substitution: each placeholder occurrence is
// replaced once, left to right, and replacement text is never rescanned (a
// value containing another placeholder is inserted literally).
std::string substitute(
    std::string_view text,
    const std::vector<std::pair<std::string_view, std::string_view>>& slots);

enum class RoleName { solver, fact_extractor, skeptic, second_solver };

struct RoleSpec {
  RoleName name;
  std::string display;
  std::string instructions;
};

// The four parallel roles, in their fixed order.
const std::array<RoleSpec, 4>& default_roles();

}  // namespace parity::arch
