#pragma once

#include <string>
#include <vector>

#include "parity/cli/config.hpp"
#include "parity/core/types.hpp"
#include "parity/eval/judge.hpp"

namespace parity::cli {

// One line of runs.jsonl.
struct RunRecord {
  std::string question_id;
  Architecture architecture = Architecture::sas;
  Tokens budget = 0;
  std::string config_hash;
  std::string dataset;
  std::string model;
  Trace trace;
  eval::JudgedRecord judged;
  std::string started_at;
  std::string finished_at;

  std::string key() const;
};

std::string record_key(const std::string& question_id, Architecture architecture, Tokens budget,
                       const std::string& config_hash);

std::vector<RunRecord> load_run_records(const std::string& run_dir);

struct RunResult {
  std::string run_dir;
  std::int64_t completed = 0;         // records written this invocation
  std::int64_t skipped_existing = 0;  // keys already present (resumed)
  std::int64_t failed = 0;            // per-question failures, logged and skipped
  std::vector<std::string> errors;
};

// Executes architectures x budgets x questions against the configured
// backend, judging each trace with the same backend, and appends one record
// per task to <output_dir>/runs.jsonl. Rerunning with the same config skips
// keys that already exist; a run directory never mixes config hashes.
RunResult run_experiment(const ExperimentConfig& config);

}  // namespace parity::cli
