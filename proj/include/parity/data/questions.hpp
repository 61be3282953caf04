#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "parity/arch/prompts.hpp"
#include "parity/core/types.hpp"
#include "parity/provider/backend.hpp"

namespace parity::data {

// Loads a line-delimited question file ({"id","question","answer","hops"?,
// "dataset"?} per line). Records with hops below min_hops are dropped when
// the filter is set; input order is preserved. Parse failures are collected
// and reported with their line numbers; duplicate ids are an error.
std::vector<Question> load_questions(const std::string& path,
                                     std::optional<int> min_hops = std::nullopt);

void write_questions(const std::string& path, const std::vector<Question>& questions);

// One ordered pattern -> replacement rule. Patterns are ECMAScript regexes;
// each rule rewrites its first match.
struct ParaphraseRule {
  std::string pattern;
  std::string replacement;
};

// The shipped rule table (only the published swap pairs).
const std::vector<ParaphraseRule>& default_light_rules();

// Loads a two-column (tab-separated) rule table.
std::vector<ParaphraseRule> load_light_rules(const std::string& path);

std::string light_paraphrase(const std::string& question_text);
std::string light_paraphrase(const std::string& question_text,
                             const std::vector<ParaphraseRule>& rules);

struct DeepParaphraseResult {
  Question question;
  // Set when the backend call failed and the original text was passed
  // through unchanged.
  bool fallback = false;
};

// One backend rewrite call. Gold and hops are copied unchanged, the id gains
// a ".deep" suffix and the original text is retained as provenance.
DeepParaphraseResult deep_paraphrase(const Question& question, provider::Backend& backend,
                                     const arch::PromptSet& prompts = arch::default_prompts());

}  // namespace parity::data
