#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "parity/cli/config.hpp"
#include "parity/cli/experiment.hpp"
#include "parity/cli/report.hpp"
#include "parity/cli/serialize.hpp"
#include "parity/data/questions.hpp"
#include "parity/degrade/corrupt.hpp"
#include "parity/info/discrete.hpp"

namespace fs = std::filesystem;
using namespace parity;

namespace {

int cmd_run(const std::string& config_path, const std::string& out_override) {
  cli::ExperimentConfig config = cli::load_config(config_path);
  if (!out_override.empty()) config.output_dir = out_override;
  const cli::RunResult result = cli::run_experiment(config);
  std::cout << "run directory: " << result.run_dir << "\n"
            << "completed:     " << result.completed << "\n"
            << "skipped:       " << result.skipped_existing << " (already present)\n"
            << "failed:        " << result.failed << "\n";
  for (const std::string& error : result.errors) std::cerr << "error: " << error << "\n";
  return result.failed == 0 ? 0 : 1;
}

int cmd_summarize(const std::vector<std::string>& run_dirs, const std::string& out_dir,
                  int iterations, double level, std::uint64_t seed) {
  cli::SummarizeOptions options;
  options.bootstrap_iterations = iterations;
  options.bootstrap_level = level;
  options.seed = seed;
  const cli::SummaryPaths paths = cli::summarize(run_dirs, out_dir, options);
  std::cout << "wrote " << paths.csv << "\nwrote " << paths.text << "\n";
  if (!paths.versions_csv.empty()) std::cout << "wrote " << paths.versions_csv << "\n";
  return 0;
}

int cmd_diagnose(const std::string& sas_dir, const std::string& mas_dir,
                 const std::string& sas_arch, const std::string& mas_arch, Tokens budget,
                 const std::string& out_dir) {
  const std::vector<cli::RunRecord> sas_records = cli::load_run_records(sas_dir);
  const std::vector<cli::RunRecord> mas_records =
      mas_dir == sas_dir ? sas_records : cli::load_run_records(mas_dir);
  const eval::BucketReport report = cli::diagnose_records(
      cli::filter_records(sas_records, architecture_from_string(sas_arch), budget),
      cli::filter_records(mas_records, architecture_from_string(mas_arch), budget));
  fs::create_directories(out_dir);
  const std::string csv = (fs::path(out_dir) / "buckets.csv").string();
  const std::string text = (fs::path(out_dir) / "buckets.txt").string();
  cli::write_bucket_report(report, csv, text);
  std::cout << cli::render_bucket_table(report);
  std::cout << "wrote " << csv << "\nwrote " << text << "\n";
  return 0;
}

int cmd_paraphrase(const std::string& mode, const std::string& in_path,
                   const std::string& out_path, const std::string& rules_path,
                   const std::string& config_path) {
  std::vector<Question> questions = data::load_questions(in_path);
  if (mode == "light") {
    const std::vector<data::ParaphraseRule> rules =
        rules_path.empty() ? data::default_light_rules() : data::load_light_rules(rules_path);
    for (Question& question : questions)
      question.text = data::light_paraphrase(question.text, rules);
  } else if (mode == "deep") {
    if (config_path.empty())
      throw std::invalid_argument("deep paraphrase needs --config for the backend");
    const cli::ExperimentConfig config = cli::load_config(config_path);
    const std::unique_ptr<provider::Backend> backend = cli::make_backend(config.backend);
    std::int64_t fallbacks = 0;
    for (Question& question : questions) {
      const data::DeepParaphraseResult result = data::deep_paraphrase(question, *backend);
      if (result.fallback) ++fallbacks;
      question = result.question;
    }
    if (fallbacks > 0)
      std::cerr << "warning: " << fallbacks << " question(s) passed through unchanged\n";
  } else {
    throw std::invalid_argument("mode must be light or deep");
  }
  data::write_questions(out_path, questions);
  std::cout << "wrote " << out_path << " (" << questions.size() << " questions)\n";
  return 0;
}

int cmd_corrupt(const std::string& method, double alpha, std::int64_t every_n,
                const std::string& mask_token, const std::string& vocab_path, std::int64_t k,
                const std::string& pool_path, std::int64_t seed, std::int64_t call_index,
                const std::string& in_path) {
  degrade::CorruptionSpec spec;
  spec.method = corruption_method_from_string(method);
  spec.alpha = alpha;
  if (every_n > 0) spec.every_n = every_n;
  spec.mask_token = mask_token;
  spec.k = k;
  spec.base_seed = seed;
  if (!vocab_path.empty()) spec.vocab = degrade::load_line_file(vocab_path);
  if (!pool_path.empty()) spec.pool = degrade::load_line_file(pool_path);

  std::string text;
  if (in_path.empty()) {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    text = buffer.str();
  } else {
    std::ifstream in(in_path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + in_path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
  }

  const degrade::CorruptionResult result = degrade::corrupt(text, spec, call_index);
  std::cout << result.text << "\n";
  std::cerr << nlohmann::json(result.meta).dump() << "\n";
  return 0;
}

int cmd_dpi_verify(int instances, int chains, std::uint64_t seed, int max_size,
                   const std::string& joint_path, const std::string& channel_path) {
  if (!joint_path.empty()) {
    const info::JointDistribution joint = info::load_joint(joint_path);
    if (channel_path.empty()) throw std::invalid_argument("--channel required with --joint");
    const info::Channel channel = info::load_channel(channel_path);
    const info::DpiReport report = info::verify_dpi(joint, channel);
    std::cout << "I(Y;C)=" << report.i_yc << "  I(Y;M)=" << report.i_ym
              << "  H(Y|C)=" << report.h_y_c << "  H(Y|M)=" << report.h_y_m
              << "  Pe(C)=" << report.pe_c << "  Pe(M)=" << report.pe_m << "\n"
              << (report.all_inequalities_hold ? "all inequalities hold" : "VIOLATION") << "\n";
    return report.all_inequalities_hold ? 0 : 1;
  }

  SplitMix64 rng(seed);
  int dpi_violations = 0;
  for (int i = 0; i < instances; ++i) {
    const info::JointDistribution joint = info::random_joint(rng, max_size, max_size);
    const info::Channel channel =
        info::random_channel(rng, static_cast<int>(joint.labels_x.size()), max_size);
    if (!info::verify_dpi(joint, channel).all_inequalities_hold) ++dpi_violations;
  }
  std::cout << "dpi suite: " << instances << " instances, " << dpi_violations
            << " violation(s)\n";

  int chain_violations = 0;
  for (int i = 0; i < chains; ++i) {
    const info::JointDistribution joint = info::random_joint(rng, max_size, max_size);
    std::vector<info::Channel> chain;
    std::vector<std::string> labels_in = joint.labels_x;
    for (int link = 0; link < 3; ++link) {
      chain.push_back(info::random_channel(rng, labels_in, max_size));
      labels_in = chain.back().labels_out;
    }
    if (!info::verify_degradation_monotone(joint, chain).monotone) ++chain_violations;
  }
  std::cout << "degradation chains: " << chains << " chains, " << chain_violations
            << " violation(s)\n";
  return dpi_violations + chain_violations == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"budget-matched evaluation harness for single- and multi-agent LLM pipelines"};
  app.require_subcommand(1);

  // run
  std::string run_config, run_out;
  CLI::App* run = app.add_subcommand("run", "execute an experiment from a config file");
  run->add_option("--config", run_config, "experiment config (JSON)")->required();
  run->add_option("--out", run_out, "override output directory");

  // summarize
  std::vector<std::string> sum_dirs;
  std::string sum_out = "reports";
  int sum_iterations = 10000;
  double sum_level = 0.95;
  std::uint64_t sum_seed = 0;
  CLI::App* sum = app.add_subcommand("summarize", "build accuracy/CI/token tables from runs");
  sum->add_option("dirs", sum_dirs, "run directories")->required();
  sum->add_option("--out", sum_out, "report output directory");
  sum->add_option("--iterations", sum_iterations, "bootstrap iterations");
  sum->add_option("--level", sum_level, "confidence level");
  sum->add_option("--seed", sum_seed, "bootstrap seed");

  // diagnose
  std::string diag_sas_dir, diag_mas_dir, diag_out = "reports";
  std::string diag_sas_arch = "sas", diag_mas_arch = "sequential";
  Tokens diag_budget = 0;
  CLI::App* diag = app.add_subcommand("diagnose", "error-bucket analysis of SAS vs MAS runs");
  diag->add_option("--sas-run", diag_sas_dir, "run dir holding the SAS records")->required();
  diag->add_option("--mas-run", diag_mas_dir, "run dir holding the MAS records");
  diag->add_option("--sas-arch", diag_sas_arch, "architecture treated as SAS");
  diag->add_option("--mas-arch", diag_mas_arch, "architecture treated as MAS");
  diag->add_option("--budget", diag_budget, "thinking budget to join on")->required();
  diag->add_option("--out", diag_out, "report output directory");

  // paraphrase
  std::string par_mode, par_in, par_out, par_rules, par_config;
  CLI::App* par = app.add_subcommand("paraphrase", "rewrite a question file (light or deep)");
  par->add_option("--mode", par_mode, "light | deep")->required();
  par->add_option("--in", par_in, "input questions (JSONL)")->required();
  par->add_option("--out", par_out, "output questions (JSONL)")->required();
  par->add_option("--rules", par_rules, "rule table for light mode");
  par->add_option("--config", par_config, "experiment config providing the backend (deep)");

  // corrupt
  std::string cor_method = "mask", cor_mask = "[MASK]", cor_vocab, cor_pool, cor_in;
  double cor_alpha = 0.0;
  std::int64_t cor_every = 0, cor_k = 0, cor_seed = 0, cor_index = 0;
  CLI::App* cor = app.add_subcommand("corrupt", "apply a corruption operator to text");
  cor->add_option("--method", cor_method, "delete | mask | substitute | distract")->required();
  cor->add_option("--alpha", cor_alpha, "corruption rate in [0,1]");
  cor->add_option("--every-n", cor_every, "deterministic every-n variant (delete/mask)");
  cor->add_option("--mask-token", cor_mask, "mask token");
  cor->add_option("--vocab", cor_vocab, "substitution vocabulary file");
  cor->add_option("--k", cor_k, "distractor count");
  cor->add_option("--pool", cor_pool, "distractor pool file");
  cor->add_option("--seed", cor_seed, "base seed");
  cor->add_option("--call-index", cor_index, "call index added to the seed");
  cor->add_option("--in", cor_in, "input file (stdin when omitted)");

  // dpi-verify
  int dpi_instances = 1000, dpi_chains = 200, dpi_max = 5;
  std::uint64_t dpi_seed = 7;
  std::string dpi_joint, dpi_channel;
  CLI::App* dpi = app.add_subcommand("dpi-verify", "numeric check of the processing inequalities");
  dpi->add_option("--instances", dpi_instances, "random (joint, channel) pairs");
  dpi->add_option("--chains", dpi_chains, "random 3-link degradation chains");
  dpi->add_option("--seed", dpi_seed, "suite seed");
  dpi->add_option("--max-size", dpi_max, "max alphabet size");
  dpi->add_option("--joint", dpi_joint, "joint distribution file");
  dpi->add_option("--channel", dpi_channel, "channel file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_config, run_out);
    if (sum->parsed())
      return cmd_summarize(sum_dirs, sum_out, sum_iterations, sum_level, sum_seed);
    if (diag->parsed())
      return cmd_diagnose(diag_sas_dir, diag_mas_dir.empty() ? diag_sas_dir : diag_mas_dir,
                          diag_sas_arch, diag_mas_arch, diag_budget, diag_out);
    if (par->parsed()) return cmd_paraphrase(par_mode, par_in, par_out, par_rules, par_config);
    if (cor->parsed())
      return cmd_corrupt(cor_method, cor_alpha, cor_every, cor_mask, cor_vocab, cor_k, cor_pool,
                         cor_seed, cor_index, cor_in);
    if (dpi->parsed())
      return cmd_dpi_verify(dpi_instances, dpi_chains, dpi_seed, dpi_max, dpi_joint,
                            dpi_channel);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
