#include "parity/cli/experiment.hpp"

#include <atomic>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "parity/arch/runner.hpp"
#include "parity/cli/serialize.hpp"
#include "parity/data/questions.hpp"

namespace parity::cli {

namespace fs = std::filesystem;

namespace {

std::string iso8601_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t seconds = std::chrono::system_clock::to_time_t(now);
  std::tm utc{};
  gmtime_r(&seconds, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

nlohmann::json record_to_json(const RunRecord& record) {
  return {{"question_id", record.question_id},
          {"architecture", to_string(record.architecture)},
          {"budget", record.budget},
          {"config_hash", record.config_hash},
          {"dataset", record.dataset},
          {"model", record.model},
          {"trace", record.trace},
          {"judged", record.judged},
          {"started_at", record.started_at},
          {"finished_at", record.finished_at}};
}

RunRecord record_from_json(const nlohmann::json& j) {
  RunRecord record;
  record.question_id = j.at("question_id").get<std::string>();
  record.architecture = architecture_from_string(j.at("architecture").get<std::string>());
  record.budget = j.at("budget").get<Tokens>();
  record.config_hash = j.value("config_hash", "");
  record.dataset = j.value("dataset", "custom");
  record.model = j.value("model", "");
  record.trace = j.at("trace").get<Trace>();
  record.judged = j.at("judged").get<eval::JudgedRecord>();
  record.started_at = j.value("started_at", "");
  record.finished_at = j.value("finished_at", "");
  return record;
}

// Appends lines to runs.jsonl through one mutex so concurrent workers never
// interleave partial lines; each line is flushed so interrupted runs resume
// cleanly.
class RecordWriter {
 public:
  explicit RecordWriter(const fs::path& path)
      : out_(path, std::ios::binary | std::ios::app) {
    if (!out_) throw std::runtime_error("cannot open " + path.string());
  }

  void append(const RunRecord& record) {
    std::lock_guard lock(mutex_);
    out_ << record_to_json(record).dump() << '\n';
    out_.flush();
  }

 private:
  std::mutex mutex_;
  std::ofstream out_;
};

struct TaskSpec {
  Question question;
  Architecture architecture = Architecture::sas;
  Tokens budget = 0;
};

}  // namespace

std::string record_key(const std::string& question_id, Architecture architecture, Tokens budget,
                       const std::string& config_hash) {
  return to_string(architecture) + "|" + std::to_string(budget) + "|" + question_id + "|" +
         config_hash;
}

std::string RunRecord::key() const {
  return record_key(question_id, architecture, budget, config_hash);
}

std::vector<RunRecord> load_run_records(const std::string& run_dir) {
  const fs::path path = fs::path(run_dir) / "runs.jsonl";
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<RunRecord> records;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      records.push_back(record_from_json(nlohmann::json::parse(line)));
    } catch (const std::exception& e) {
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return records;
}

RunResult run_experiment(const ExperimentConfig& config) {
  validate(config);
  const std::string hash = config_hash(config);

  std::vector<Question> questions = data::load_questions(config.dataset.path,
                                                         config.dataset.min_hops);
  if (questions.empty()) throw std::invalid_argument("no questions after loading/filtering");

  std::unique_ptr<provider::Backend> backend = make_backend(config.backend);
  backend->set_concurrency_limit(config.concurrency);

  arch::PromptSet prompts = config.prompts_dir.empty() ? arch::default_prompts()
                                                       : arch::load_prompts(config.prompts_dir);

  if (config.paraphrase == ParaphraseMode::light) {
    const std::vector<data::ParaphraseRule> rules =
        config.light_rules_file.empty() ? data::default_light_rules()
                                        : data::load_light_rules(config.light_rules_file);
    for (Question& question : questions)
      question.text = data::light_paraphrase(question.text, rules);
  } else if (config.paraphrase == ParaphraseMode::deep) {
    for (Question& question : questions) {
      const data::DeepParaphraseResult result =
          data::deep_paraphrase(question, *backend, prompts);
      question = result.question;
    }
  }

  arch::RunOptions run_options;
  run_options.max_answer_tokens = config.max_answer_tokens;
  run_options.max_steps = config.max_steps;
  run_options.max_tasks = config.max_tasks;
  run_options.ensemble_n = config.ensemble_n;
  run_options.prompts = &prompts;
  if (config.degradation)
    run_options.degradation = make_corruption_spec(*config.degradation, config.seed);

  const fs::path run_dir(config.output_dir);
  fs::create_directories(run_dir);

  // A run directory is bound to one config hash; refusing mismatches keeps
  // budgets and architectures from silently mixing.
  const fs::path config_path = run_dir / "config.json";
  if (fs::exists(config_path)) {
    std::ifstream existing(config_path);
    std::ostringstream text;
    text << existing.rdbuf();
    const ExperimentConfig previous =
        config_from_json_text(text.str(), config_path.string());
    if (config_hash(previous) != hash)
      throw std::invalid_argument(config_path.string() +
                                  " belongs to a different configuration; refusing to mix runs");
  } else {
    std::ofstream out(config_path, std::ios::binary);
    out << config_to_json_text(config);
  }

  std::set<std::string> existing_keys;
  const fs::path records_path = run_dir / "runs.jsonl";
  if (fs::exists(records_path))
    for (const RunRecord& record : load_run_records(config.output_dir))
      existing_keys.insert(record.key());

  RunResult result;
  result.run_dir = config.output_dir;

  std::vector<TaskSpec> tasks;
  for (Architecture architecture : config.architectures)
    for (Tokens budget : config.budgets)
      for (const Question& question : questions) {
        if (existing_keys.count(record_key(question.id, architecture, budget, hash))) {
          ++result.skipped_existing;
          continue;
        }
        tasks.push_back({question, architecture, budget});
      }

  RecordWriter writer(records_path);
  std::mutex result_mutex;
  std::atomic<size_t> next_task{0};

  const auto worker = [&] {
    while (true) {
      const size_t index = next_task.fetch_add(1);
      if (index >= tasks.size()) return;
      const TaskSpec& task = tasks[index];
      RunRecord record;
      record.started_at = iso8601_now();
      try {
        Trace trace =
            arch::run_architecture(task.architecture, task.question, task.budget, *backend,
                                   run_options);
        eval::JudgedRecord judged = eval::judge(task.question, trace, *backend, prompts);
        judged.trace_ref = record_key(task.question.id, task.architecture, task.budget, hash);
        trace.judged_correct = judged.correct;

        record.question_id = task.question.id;
        record.architecture = task.architecture;
        record.budget = task.budget;
        record.config_hash = hash;
        record.dataset = to_string(task.question.dataset);
        record.model = backend->id();
        record.trace = std::move(trace);
        record.judged = std::move(judged);
        record.finished_at = iso8601_now();
        writer.append(record);
        std::lock_guard lock(result_mutex);
        ++result.completed;
      } catch (const std::exception& e) {
        std::lock_guard lock(result_mutex);
        ++result.failed;
        result.errors.push_back(record_key(task.question.id, task.architecture, task.budget,
                                           hash) +
                                ": " + e.what());
      }
    }
  };

  std::vector<std::thread> pool;
  const int workers = std::max(1, std::min<int>(config.concurrency,
                                                static_cast<int>(tasks.size())));
  pool.reserve(static_cast<size_t>(workers));
  for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
  for (std::thread& thread : pool) thread.join();

  if (!result.errors.empty()) {
    std::ofstream errors(run_dir / "errors.log", std::ios::app);
    for (const std::string& error : result.errors) errors << error << '\n';
  }
  return result;
}

}  // namespace parity::cli
