#include "parity/cli/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "parity/core/hash.hpp"
#include "parity/provider/gemini.hpp"
#include "parity/provider/openai.hpp"
#include "parity/provider/scripted.hpp"

namespace parity::cli {

std::string to_string(ParaphraseMode mode) {
  switch (mode) {
    case ParaphraseMode::none: return "none";
    case ParaphraseMode::light: return "light";
    case ParaphraseMode::deep: return "deep";
  }
  throw std::logic_error("unknown paraphrase mode");
}

ParaphraseMode paraphrase_mode_from_string(const std::string& name) {
  if (name == "none") return ParaphraseMode::none;
  if (name == "light") return ParaphraseMode::light;
  if (name == "deep") return ParaphraseMode::deep;
  throw std::invalid_argument("unknown paraphrase mode: " + name);
}

namespace {

DegradationConfig degradation_from_json(const nlohmann::json& j) {
  DegradationConfig config;
  config.method = corruption_method_from_string(j.at("method").get<std::string>());
  config.alpha = j.value("alpha", 0.0);
  if (j.contains("every_n")) config.every_n = j["every_n"].get<std::int64_t>();
  config.mask_token = j.value("mask_token", "[MASK]");
  config.vocab_file = j.value("vocab_file", "");
  config.k = j.value("k", std::int64_t{0});
  config.pool_file = j.value("pool_file", "");
  if (j.contains("base_seed")) config.base_seed = j["base_seed"].get<std::int64_t>();
  return config;
}

nlohmann::json degradation_to_json(const DegradationConfig& config) {
  nlohmann::json j = {{"method", to_string(config.method)},
                      {"alpha", config.alpha},
                      {"mask_token", config.mask_token},
                      {"vocab_file", config.vocab_file},
                      {"k", config.k},
                      {"pool_file", config.pool_file}};
  if (config.every_n) j["every_n"] = *config.every_n;
  if (config.base_seed) j["base_seed"] = *config.base_seed;
  return j;
}

nlohmann::json config_to_json(const ExperimentConfig& config, bool semantic_only) {
  nlohmann::json dataset = {{"path", config.dataset.path}};
  if (config.dataset.min_hops) dataset["min_hops"] = *config.dataset.min_hops;

  nlohmann::json architectures = nlohmann::json::array();
  for (Architecture architecture : config.architectures)
    architectures.push_back(to_string(architecture));

  nlohmann::json backend = {{"kind", config.backend.kind},
                            {"model", config.backend.model},
                            {"base_url", config.backend.base_url},
                            {"script_path", config.backend.script_path},
                            {"default_answer", config.backend.default_answer},
                            {"chat_path", config.backend.chat_path},
                            {"completions_path", config.backend.completions_path},
                            {"provider_min", config.backend.provider_min},
                            {"can_disable_thinking", config.backend.can_disable_thinking}};

  nlohmann::json j = {
      {"dataset", std::move(dataset)},
      {"architectures", std::move(architectures)},
      {"budgets", config.budgets},
      {"backend", std::move(backend)},
      {"ensemble_n", config.ensemble_n},
      {"paraphrase", to_string(config.paraphrase)},
      {"seed", config.seed},
      {"bootstrap",
       {{"iterations", config.bootstrap.iterations}, {"level", config.bootstrap.level}}},
      {"max_answer_tokens", config.max_answer_tokens},
      {"max_steps", config.max_steps},
      {"max_tasks", config.max_tasks},
      {"prompts_dir", config.prompts_dir},
      {"light_rules_file", config.light_rules_file},
  };
  if (config.degradation) j["degradation"] = degradation_to_json(*config.degradation);
  if (!semantic_only) {
    j["backend"]["api_key_env"] = config.backend.api_key_env;
    j["backend"]["max_retries"] = config.backend.max_retries;
    j["concurrency"] = config.concurrency;
    j["output_dir"] = config.output_dir;
  }
  return j;
}

}  // namespace

ExperimentConfig config_from_json_text(const std::string& text, const std::string& origin) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(origin + ": " + e.what());
  }

  ExperimentConfig config;
  try {
    const nlohmann::json& dataset = j.at("dataset");
    config.dataset.path = dataset.at("path").get<std::string>();
    if (dataset.contains("min_hops")) config.dataset.min_hops = dataset["min_hops"].get<int>();

    for (const nlohmann::json& name : j.at("architectures"))
      config.architectures.push_back(architecture_from_string(name.get<std::string>()));
    config.budgets = j.at("budgets").get<std::vector<Tokens>>();

    if (j.contains("backend")) {
      const nlohmann::json& backend = j["backend"];
      config.backend.kind = backend.value("kind", "scripted");
      config.backend.model = backend.value("model", config.backend.kind);
      config.backend.base_url = backend.value("base_url", "");
      config.backend.api_key_env = backend.value("api_key_env", "");
      config.backend.script_path = backend.value("script_path", "");
      config.backend.default_answer = backend.value("default_answer", "UNKNOWN");
      config.backend.chat_path = backend.value("chat_path", "/v1/chat/completions");
      config.backend.completions_path = backend.value("completions_path", "/v1/completions");
      config.backend.provider_min = backend.value("provider_min", Tokens{0});
      config.backend.can_disable_thinking = backend.value("can_disable_thinking", true);
      config.backend.max_retries = backend.value("max_retries", 3);
    }

    config.ensemble_n = j.value("ensemble_n", 4);
    if (j.contains("degradation") && !j["degradation"].is_null())
      config.degradation = degradation_from_json(j["degradation"]);
    config.paraphrase = paraphrase_mode_from_string(j.value("paraphrase", "none"));
    config.seed = j.value("seed", std::int64_t{0});
    config.concurrency = j.value("concurrency", 1);
    if (j.contains("bootstrap")) {
      config.bootstrap.iterations = j["bootstrap"].value("iterations", 10000);
      config.bootstrap.level = j["bootstrap"].value("level", 0.95);
    }
    config.max_answer_tokens = j.value("max_answer_tokens", Tokens{256});
    config.max_steps = j.value("max_steps", 4);
    config.max_tasks = j.value("max_tasks", 4);
    config.prompts_dir = j.value("prompts_dir", "");
    config.light_rules_file = j.value("light_rules_file", "");
    config.output_dir = j.value("output_dir", "runs/default");
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(origin + ": " + e.what());
  }

  validate(config);
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return config_from_json_text(text.str(), path);
}

void validate(const ExperimentConfig& config) {
  if (config.dataset.path.empty()) throw std::invalid_argument("dataset.path is required");
  if (config.architectures.empty())
    throw std::invalid_argument("at least one architecture is required");
  if (config.budgets.empty()) throw std::invalid_argument("budgets must be nonempty");
  for (Tokens budget : config.budgets)
    if (budget <= 0) throw std::invalid_argument("budgets must be positive");
  {
    std::set<std::string> seen;
    for (Architecture architecture : config.architectures)
      if (!seen.insert(to_string(architecture)).second)
        throw std::invalid_argument("duplicate architecture " + to_string(architecture));
  }
  if (config.backend.kind != "scripted" && config.backend.kind != "openai" &&
      config.backend.kind != "gemini")
    throw std::invalid_argument("unknown backend kind: " + config.backend.kind);
  if (config.backend.kind != "scripted" && config.backend.base_url.empty())
    throw std::invalid_argument(config.backend.kind + " backend needs base_url");
  if (config.ensemble_n < 2) throw std::invalid_argument("ensemble_n must be >= 2");
  if (config.concurrency < 1) throw std::invalid_argument("concurrency must be >= 1");
  if (config.bootstrap.iterations < 1)
    throw std::invalid_argument("bootstrap.iterations must be >= 1");
  if (config.bootstrap.level <= 0.0 || config.bootstrap.level >= 1.0)
    throw std::invalid_argument("bootstrap.level must be in (0,1)");
  if (config.max_answer_tokens <= 0)
    throw std::invalid_argument("max_answer_tokens must be positive");
  if (config.max_steps < 1 || config.max_tasks < 1)
    throw std::invalid_argument("max_steps and max_tasks must be >= 1");
  if (config.degradation) {
    const DegradationConfig& degradation = *config.degradation;
    if (degradation.method == CorruptionMethod::none)
      throw std::invalid_argument("degradation.method must name an operator");
    if (degradation.method == CorruptionMethod::substitute && degradation.vocab_file.empty())
      throw std::invalid_argument("substitute degradation needs vocab_file");
    if (degradation.method == CorruptionMethod::distract && degradation.pool_file.empty())
      throw std::invalid_argument("distract degradation needs pool_file");
  }
}

std::string config_hash(const ExperimentConfig& config) {
  return to_hex(fnv1a64(config_to_json(config, /*semantic_only=*/true).dump()));
}

std::string config_to_json_text(const ExperimentConfig& config) {
  return config_to_json(config, /*semantic_only=*/false).dump(2) + "\n";
}

std::unique_ptr<provider::Backend> make_backend(const BackendConfig& config) {
  std::string api_key;
  if (!config.api_key_env.empty()) {
    const char* value = std::getenv(config.api_key_env.c_str());
    if (value == nullptr)
      throw std::invalid_argument("environment variable " + config.api_key_env + " is not set");
    api_key = value;
  }

  if (config.kind == "scripted") {
    provider::ScriptedBackend::Options options;
    options.id = config.model;
    options.default_answer = config.default_answer;
    options.provider_min = config.provider_min;
    options.can_disable_thinking = config.can_disable_thinking;
    auto backend = std::make_unique<provider::ScriptedBackend>(std::move(options));
    if (!config.script_path.empty()) backend->load_script(config.script_path);
    return backend;
  }
  if (config.kind == "openai") {
    provider::OpenAiBackend::Options options;
    options.base_url = config.base_url;
    options.model = config.model;
    options.api_key = api_key;
    options.chat_path = config.chat_path;
    options.completions_path = config.completions_path;
    options.provider_min = config.provider_min;
    options.can_disable_thinking = config.can_disable_thinking;
    options.retry.max_retries = config.max_retries;
    return std::make_unique<provider::OpenAiBackend>(std::move(options));
  }
  if (config.kind == "gemini") {
    provider::GeminiBackend::Options options;
    options.base_url = config.base_url;
    options.model = config.model;
    options.api_key = api_key;
    options.provider_min = config.provider_min;
    options.can_disable_thinking = config.can_disable_thinking;
    options.retry.max_retries = config.max_retries;
    return std::make_unique<provider::GeminiBackend>(std::move(options));
  }
  throw std::invalid_argument("unknown backend kind: " + config.kind);
}

degrade::CorruptionSpec make_corruption_spec(const DegradationConfig& config,
                                             std::int64_t default_seed) {
  degrade::CorruptionSpec spec;
  spec.method = config.method;
  spec.alpha = config.alpha;
  spec.every_n = config.every_n;
  spec.mask_token = config.mask_token;
  spec.k = config.k;
  spec.base_seed = config.base_seed.value_or(default_seed);
  if (!config.vocab_file.empty()) spec.vocab = degrade::load_line_file(config.vocab_file);
  if (!config.pool_file.empty()) spec.pool = degrade::load_line_file(config.pool_file);
  degrade::validate(spec);
  return spec;
}

}  // namespace parity::cli
