#include "parity/arch/prompts.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace parity::arch {

namespace {

#include "parity/arch/prompt_texts.inc"

// Project-authored rewrite instruction; overridable like every other prompt.
inline constexpr const char* kDeepParaphraseSystem =
    R"__(You are a rewriting assistant. Completely rephrase the question you are given.

Hard rules:
- Preserve the exact meaning of the question.
- The answer to the rewritten question must stay identical to the answer to the original.
- Preserve the multi-hop structure: every intermediate fact needed to answer the original must still be needed.
- Aim for low lexical overlap with the original wording.
- Return ONLY the rewritten question, with no commentary.)__";

PromptSet make_defaults() {
  PromptSet prompts;
  prompts.sas_system = kSasSystem;
  prompts.sas_long_prefix = kSasLongPrefix;
  prompts.seq_planner_system = kSeqPlannerSystem;
  prompts.seq_step_system = kSeqStepSystem;
  prompts.seq_step_user = kSeqStepUser;
  prompts.seq_aggregator_system = kSeqAggregatorSystem;
  prompts.seq_aggregator_user = kSeqAggregatorUser;
  prompts.sub_planner_system = kSubPlannerSystem;
  prompts.sub_worker_system = kSubWorkerSystem;
  prompts.sub_worker_user = kSubWorkerUser;
  prompts.sub_aggregator_system = kSubAggregatorSystem;
  prompts.sub_aggregator_user = kSubAggregatorUser;
  prompts.roles_worker_system = kRolesWorkerSystem;
  prompts.roles_worker_user = kRolesWorkerUser;
  prompts.roles_aggregator_system = kRolesAggregatorSystem;
  prompts.roles_aggregator_user = kRolesAggregatorUser;
  prompts.debate_debater_system = kDebateDebaterSystem;
  prompts.debate_critic_system = kDebateCriticSystem;
  prompts.debate_critique_user = kDebateCritiqueUser;
  prompts.debate_aggregator_system = kDebateAggregatorSystem;
  prompts.debate_aggregator_user = kDebateAggregatorUser;
  prompts.ensemble_candidate_system = kEnsembleCandidateSystem;
  prompts.ensemble_aggregator_system = kEnsembleAggregatorSystem;
  prompts.ensemble_aggregator_user = kEnsembleAggregatorUser;
  prompts.judge_system = kJudgeSystem;
  prompts.judge_user = kJudgeUser;
  prompts.deep_paraphrase_system = kDeepParaphraseSystem;
  return prompts;
}

std::vector<std::pair<const char*, std::string PromptSet::*>> field_table() {
  return {
      {"sas_system", &PromptSet::sas_system},
      {"sas_long_prefix", &PromptSet::sas_long_prefix},
      {"seq_planner_system", &PromptSet::seq_planner_system},
      {"seq_step_system", &PromptSet::seq_step_system},
      {"seq_step_user", &PromptSet::seq_step_user},
      {"seq_aggregator_system", &PromptSet::seq_aggregator_system},
      {"seq_aggregator_user", &PromptSet::seq_aggregator_user},
      {"sub_planner_system", &PromptSet::sub_planner_system},
      {"sub_worker_system", &PromptSet::sub_worker_system},
      {"sub_worker_user", &PromptSet::sub_worker_user},
      {"sub_aggregator_system", &PromptSet::sub_aggregator_system},
      {"sub_aggregator_user", &PromptSet::sub_aggregator_user},
      {"roles_worker_system", &PromptSet::roles_worker_system},
      {"roles_worker_user", &PromptSet::roles_worker_user},
      {"roles_aggregator_system", &PromptSet::roles_aggregator_system},
      {"roles_aggregator_user", &PromptSet::roles_aggregator_user},
      {"debate_debater_system", &PromptSet::debate_debater_system},
      {"debate_critic_system", &PromptSet::debate_critic_system},
      {"debate_critique_user", &PromptSet::debate_critique_user},
      {"debate_aggregator_system", &PromptSet::debate_aggregator_system},
      {"debate_aggregator_user", &PromptSet::debate_aggregator_user},
      {"ensemble_candidate_system", &PromptSet::ensemble_candidate_system},
      {"ensemble_aggregator_system", &PromptSet::ensemble_aggregator_system},
      {"ensemble_aggregator_user", &PromptSet::ensemble_aggregator_user},
      {"judge_system", &PromptSet::judge_system},
      {"judge_user", &PromptSet::judge_user},
      {"deep_paraphrase_system", &PromptSet::deep_paraphrase_system},
  };
}

}  // namespace

const PromptSet& default_prompts() {
  static const PromptSet defaults = make_defaults();
  return defaults;
}

PromptSet load_prompts(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw std::invalid_argument("prompts directory not found: " + dir);
  PromptSet prompts = default_prompts();
  for (const auto& [name, member] : field_table()) {
    const fs::path path = fs::path(dir) / (std::string(name) + ".txt");
    if (!fs::exists(path)) continue;
    std::ifstream in(path, std::ios::binary);
    std::ostringstream contents;
    contents << in.rdbuf();
    prompts.*member = contents.str();
  }
  return prompts;
}

std::string substitute(
    std::string_view text,
    const std::vector<std::pair<std::string_view, std::string_view>>& slots) {
  std::string out;
  out.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    bool matched = false;
    for (const auto& [key, value] : slots) {
      if (!key.empty() && text.compare(i, key.size(), key) == 0) {
        out += value;
        i += key.size();
        matched = true;
        break;
      }
    }
    if (!matched) {
      out += text[i];
      ++i;
    }
  }
  return out;
}

const std::array<RoleSpec, 4>& default_roles() {
  static const std::array<RoleSpec, 4> roles = {{
      {RoleName::solver, "Solver", "Attempt to answer the question directly."},
      {RoleName::fact_extractor, "Fact Extractor",
       "Identify the key entities, constraints, and intermediate facts needed to answer the "
       "question."},
      {RoleName::skeptic, "Skeptic",
       "Highlight possible pitfalls or alternative interpretations of the question."},
      {RoleName::second_solver, "Second Solver",
       "Independently attempt to answer the question directly."},
  }};
  return roles;
}

}  // namespace parity::arch
