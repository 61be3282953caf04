#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "parity/core/types.hpp"
#include "parity/degrade/corrupt.hpp"
#include "parity/provider/backend.hpp"

namespace parity::cli {

struct DatasetConfig {
  std::string path;
  std::optional<int> min_hops;
};

struct BackendConfig {
  std::string kind = "scripted";  // scripted | openai | gemini
  std::string model = "scripted";
  std::string base_url;
  std::string api_key_env;  // credentials come from the environment, never the file
  std::string script_path;  // scripted replies (JSONL)
  std::string default_answer = "UNKNOWN";
  std::string chat_path = "/v1/chat/completions";
  std::string completions_path = "/v1/completions";
  Tokens provider_min = 0;
  bool can_disable_thinking = true;
  int max_retries = 3;  // transport retries for the HTTP backends
};

struct DegradationConfig {
  CorruptionMethod method = CorruptionMethod::del;
  double alpha = 0.0;
  std::optional<std::int64_t> every_n;
  std::string mask_token = "[MASK]";
  std::string vocab_file;
  std::int64_t k = 0;
  std::string pool_file;
  std::optional<std::int64_t> base_seed;  // defaults to the experiment seed
};

struct BootstrapConfig {
  int iterations = 10000;
  double level = 0.95;
};

enum class ParaphraseMode { none, light, deep };

std::string to_string(ParaphraseMode mode);
ParaphraseMode paraphrase_mode_from_string(const std::string& name);

struct ExperimentConfig {
  DatasetConfig dataset;
  std::vector<Architecture> architectures;
  std::vector<Tokens> budgets;
  BackendConfig backend;
  int ensemble_n = 4;
  std::optional<DegradationConfig> degradation;
  ParaphraseMode paraphrase = ParaphraseMode::none;
  std::int64_t seed = 0;
  int concurrency = 1;
  BootstrapConfig bootstrap;
  Tokens max_answer_tokens = 256;
  int max_steps = 4;
  int max_tasks = 4;
  std::string prompts_dir;
  std::string light_rules_file;
  std::string output_dir = "runs/default";
};

ExperimentConfig load_config(const std::string& path);
ExperimentConfig config_from_json_text(const std::string& text, const std::string& origin);
void validate(const ExperimentConfig& config);

// Hex hash over the semantically meaningful fields. output_dir, concurrency
// and credential plumbing do not participate.
std::string config_hash(const ExperimentConfig& config);

// Canonical JSON of the full config (for the run directory's config.json).
std::string config_to_json_text(const ExperimentConfig& config);

// Builds the configured backend; API keys are read from the named
// environment variable.
std::unique_ptr<provider::Backend> make_backend(const BackendConfig& config);

// Materializes the runtime corruption spec (loads vocab/pool files).
degrade::CorruptionSpec make_corruption_spec(const DegradationConfig& config,
                                             std::int64_t default_seed);

}  // namespace parity::cli
