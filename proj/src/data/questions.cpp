#include "parity/data/questions.hpp"

#include <fstream>
#include <regex>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "parity/core/text.hpp"

namespace parity::data {

std::vector<Question> load_questions(const std::string& path, std::optional<int> min_hops) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);

  std::vector<Question> questions;
  std::set<std::string> seen_ids;
  std::vector<std::string> failures;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    try {
      const nlohmann::json record = nlohmann::json::parse(line);
      Question question;
      question.id = record.at("id").get<std::string>();
      question.text = record.at("question").get<std::string>();
      question.gold = record.at("answer").get<std::string>();
      question.hops = record.value("hops", 1);
      question.dataset = dataset_tag_from_string(record.value("dataset", "custom"));
      question.paraphrased_from = record.value("paraphrased_from", "");
      validate(question);
      if (!seen_ids.insert(question.id).second)
        throw std::runtime_error("duplicate question id " + question.id);
      if (min_hops && question.hops < *min_hops) continue;
      questions.push_back(std::move(question));
    } catch (const std::exception& e) {
      failures.push_back("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!failures.empty()) {
    std::string detail = path + ": " + std::to_string(failures.size()) + " bad record(s):";
    for (const std::string& failure : failures) detail += "\n  " + failure;
    throw std::runtime_error(detail);
  }
  return questions;
}

void write_questions(const std::string& path, const std::vector<Question>& questions) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const Question& question : questions) {
    nlohmann::json record = {
        {"id", question.id},
        {"question", question.text},
        {"answer", question.gold},
        {"hops", question.hops},
        {"dataset", to_string(question.dataset)},
    };
    if (!question.paraphrased_from.empty())
      record["paraphrased_from"] = question.paraphrased_from;
    out << record.dump() << '\n';
  }
}

const std::vector<ParaphraseRule>& default_light_rules() {
  static const std::vector<ParaphraseRule> rules = {
      {"When was", "At what time was"},
      {"founded", "established"},
  };
  return rules;
}

std::vector<ParaphraseRule> load_light_rules(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<ParaphraseRule> rules;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty() || line[0] == '#') continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected <pattern>\\t<replacement>");
    rules.push_back({line.substr(0, tab), line.substr(tab + 1)});
  }
  return rules;
}

std::string light_paraphrase(const std::string& question_text) {
  return light_paraphrase(question_text, default_light_rules());
}

std::string light_paraphrase(const std::string& question_text,
                             const std::vector<ParaphraseRule>& rules) {
  std::string text = question_text;
  for (const ParaphraseRule& rule : rules) {
    const std::regex pattern(rule.pattern);
    text = std::regex_replace(text, pattern, rule.replacement,
                              std::regex_constants::format_first_only);
  }
  return text;
}

DeepParaphraseResult deep_paraphrase(const Question& question, provider::Backend& backend,
                                     const arch::PromptSet& prompts) {
  validate(question);
  DeepParaphraseResult result;
  result.question = question;
  result.question.id = question.id + ".deep";
  result.question.paraphrased_from = question.text;

  provider::ChatRequest request;
  request.messages = {{provider::MessageRole::system, prompts.deep_paraphrase_system},
                      {provider::MessageRole::user, question.text}};
  request.budget.requested = backend.supports_thought_disable() ? 0 : backend.provider_min();
  request.budget.provider_min = backend.provider_min();
  request.temperature = 0.0;

  try {
    const provider::ChatResponse response = backend.complete_chat(request);
    const std::string rewritten = trim(response.answer_text);
    if (rewritten.empty()) throw ProtocolError("empty paraphrase");
    result.question.text = rewritten;
  } catch (const std::exception&) {
    result.fallback = true;  // original text passes through unchanged
  }
  return result;
}

}  // namespace parity::data
