#include "parity/cli/report.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "parity/core/hash.hpp"
#include "parity/eval/stats.hpp"

namespace parity::cli {

namespace fs = std::filesystem;

namespace {

std::string fmt(double value, int decimals) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, value);
  return buffer;
}

struct GroupKey {
  std::string dataset;
  std::string model;
  Architecture architecture;
  Tokens budget;

  bool operator<(const GroupKey& other) const {
    if (dataset != other.dataset) return dataset < other.dataset;
    if (model != other.model) return model < other.model;
    if (architecture != other.architecture)
      return static_cast<int>(architecture) < static_cast<int>(other.architecture);
    return budget < other.budget;
  }
};

struct GroupStats {
  std::int64_t n = 0;
  double accuracy = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  double avg_requested = 0.0;
  double avg_api_reported = 0.0;
  double avg_assumed = 0.0;
};

struct Cell {
  GroupStats stats;
};

std::string group_seed_material(const GroupKey& key) {
  return key.dataset + "|" + key.model + "|" + to_string(key.architecture) + "|" +
         std::to_string(key.budget);
}

// Aligned two-dimensional table: first column is the row label.
std::string render_aligned(const std::vector<std::vector<std::string>>& rows) {
  std::vector<size_t> widths;
  for (const auto& row : rows) {
    if (widths.size() < row.size()) widths.resize(row.size(), 0);
    for (size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
  }
  std::string out;
  for (const auto& row : rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      std::string cell = row[c];
      cell.resize(widths[c], ' ');
      out += cell;
      if (c + 1 < row.size()) out += "  ";
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    out += '\n';
  }
  return out;
}

}  // namespace

SummaryPaths summarize(const std::vector<std::string>& run_dirs, const std::string& out_dir,
                       const SummarizeOptions& options) {
  std::vector<RunRecord> records;
  for (const std::string& run_dir : run_dirs) {
    std::vector<RunRecord> loaded = load_run_records(run_dir);
    records.insert(records.end(), std::make_move_iterator(loaded.begin()),
                   std::make_move_iterator(loaded.end()));
  }
  if (records.empty()) throw std::invalid_argument("no run records to summarize");

  std::map<GroupKey, std::vector<const RunRecord*>> groups;
  for (const RunRecord& record : records)
    groups[{record.dataset, record.model, record.architecture, record.budget}].push_back(
        &record);

  std::map<GroupKey, GroupStats> table;
  for (auto& [key, members] : groups) {
    // Question-id order makes the bootstrap resampling independent of the
    // execution interleaving that produced the file.
    std::sort(members.begin(), members.end(), [](const RunRecord* a, const RunRecord* b) {
      return a->question_id < b->question_id;
    });
    std::vector<int> outcomes;
    GroupStats stats;
    for (const RunRecord* record : members) {
      outcomes.push_back(record->judged.correct ? 1 : 0);
      stats.avg_requested += static_cast<double>(record->trace.total_requested);
      stats.avg_api_reported += static_cast<double>(record->trace.total_api_reported);
      stats.avg_assumed += static_cast<double>(record->trace.total_assumed);
    }
    stats.n = static_cast<std::int64_t>(members.size());
    const auto n = static_cast<double>(stats.n);
    stats.avg_requested /= n;
    stats.avg_api_reported /= n;
    stats.avg_assumed /= n;
    stats.accuracy = eval::accuracy(outcomes);
    const auto [lo, hi] =
        eval::bootstrap_ci(outcomes, options.bootstrap_iterations, options.bootstrap_level,
                           options.seed ^ fnv1a64(group_seed_material(key)));
    stats.ci_lo = lo;
    stats.ci_hi = hi;
    table[key] = stats;
  }

  fs::create_directories(out_dir);
  SummaryPaths paths;
  paths.csv = (fs::path(out_dir) / "summary.csv").string();
  paths.text = (fs::path(out_dir) / "summary.txt").string();

  {
    std::ofstream csv(paths.csv, std::ios::binary);
    csv << "dataset,model,system,budget,n,accuracy,ci_lo,ci_hi,avg_requested_tokens,"
           "avg_api_reported_tokens,avg_assumed_tokens\n";
    for (const auto& [key, stats] : table) {
      csv << key.dataset << ',' << key.model << ',' << to_string(key.architecture) << ','
          << key.budget << ',' << stats.n << ',' << fmt(stats.accuracy, 3) << ','
          << fmt(stats.ci_lo, 3) << ',' << fmt(stats.ci_hi, 3) << ','
          << fmt(stats.avg_requested, 1) << ',' << fmt(stats.avg_api_reported, 1) << ','
          << fmt(stats.avg_assumed, 1) << '\n';
    }
  }

  {
    // One block per (dataset, model); systems as row groups, budgets as
    // columns.
    std::ofstream text(paths.text, std::ios::binary);
    std::set<std::pair<std::string, std::string>> blocks;
    for (const auto& [key, stats] : table) blocks.insert({key.dataset, key.model});
    bool first_block = true;
    for (const auto& [dataset, model] : blocks) {
      std::set<Tokens> budget_set;
      std::set<Architecture> systems;
      for (const auto& [key, stats] : table)
        if (key.dataset == dataset && key.model == model) {
          budget_set.insert(key.budget);
          systems.insert(key.architecture);
        }
      const std::vector<Tokens> budgets(budget_set.begin(), budget_set.end());

      if (!first_block) text << '\n';
      first_block = false;
      text << "Dataset: " << dataset << "  Model: " << model << '\n';

      std::vector<std::vector<std::string>> rows;
      std::vector<std::string> header{"System"};
      for (Tokens budget : budgets) header.push_back(std::to_string(budget));
      rows.push_back(std::move(header));
      for (Architecture system : systems) {
        std::vector<std::string> acc_row{table_label(system) + " acc."};
        std::vector<std::string> ci_row{"95% CI"};
        std::vector<std::string> req_row{"Avg requested tok."};
        std::vector<std::string> api_row{"Avg API tok."};
        std::vector<std::string> assumed_row{"Avg assumed tok."};
        for (Tokens budget : budgets) {
          const auto it = table.find({dataset, model, system, budget});
          if (it == table.end()) {
            acc_row.push_back("-");
            ci_row.push_back("-");
            req_row.push_back("-");
            api_row.push_back("-");
            assumed_row.push_back("-");
            continue;
          }
          const GroupStats& stats = it->second;
          acc_row.push_back(fmt(stats.accuracy, 3));
          ci_row.push_back("(" + fmt(stats.ci_lo, 3) + ", " + fmt(stats.ci_hi, 3) + ")");
          req_row.push_back(fmt(stats.avg_requested, 1));
          api_row.push_back(fmt(stats.avg_api_reported, 1));
          assumed_row.push_back(fmt(stats.avg_assumed, 1));
        }
        rows.push_back(std::move(acc_row));
        rows.push_back(std::move(ci_row));
        rows.push_back(std::move(req_row));
        rows.push_back(std::move(api_row));
        rows.push_back(std::move(assumed_row));
      }
      text << render_aligned(rows);
    }
  }

  std::set<std::string> models;
  for (const auto& [key, stats] : table) models.insert(key.model);
  if (models.size() > 1) {
    paths.versions_csv = (fs::path(out_dir) / "versions.csv").string();
    std::ofstream csv(paths.versions_csv, std::ios::binary);
    csv << "model,system,budget,n,accuracy,ci_lo,ci_hi\n";
    for (const auto& [key, stats] : table)
      csv << key.model << ',' << to_string(key.architecture) << ',' << key.budget << ','
          << stats.n << ',' << fmt(stats.accuracy, 3) << ',' << fmt(stats.ci_lo, 3) << ','
          << fmt(stats.ci_hi, 3) << '\n';
  }
  return paths;
}

std::vector<RunRecord> filter_records(const std::vector<RunRecord>& records,
                                      Architecture architecture, Tokens budget) {
  std::vector<RunRecord> out;
  for (const RunRecord& record : records)
    if (record.architecture == architecture && record.budget == budget) out.push_back(record);
  return out;
}

eval::BucketReport diagnose_records(const std::vector<RunRecord>& sas_records,
                                    const std::vector<RunRecord>& mas_records) {
  const auto to_diagnostic = [](const RunRecord& record) {
    eval::DiagnosticRecord diagnostic;
    diagnostic.question_id = record.question_id;
    diagnostic.gold = record.judged.gold;
    diagnostic.correct = record.judged.correct;
    diagnostic.think_text = concatenated_think_text(record.trace);
    diagnostic.think_tokens = record.trace.total_assumed;
    return diagnostic;
  };
  std::vector<eval::DiagnosticRecord> sas, mas;
  sas.reserve(sas_records.size());
  mas.reserve(mas_records.size());
  for (const RunRecord& record : sas_records) sas.push_back(to_diagnostic(record));
  for (const RunRecord& record : mas_records) mas.push_back(to_diagnostic(record));
  return eval::assign_buckets(sas, mas);
}

std::string render_bucket_table(const eval::BucketReport& report) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"Bucket", "N", "Avg tok. SAS", "Avg tok. MAS", "Spans SAS", "Spans MAS",
                  "% gold SAS", "% gold MAS", "% gold Both", "Extr. fail SAS",
                  "Extr. fail MAS"});
  for (const auto& [bucket, stats] : report.buckets) {
    rows.push_back({to_string(bucket), std::to_string(stats.count),
                    fmt(stats.avg_tokens_sas, 1), fmt(stats.avg_tokens_mas, 1),
                    fmt(stats.avg_spans_sas, 1), fmt(stats.avg_spans_mas, 1),
                    fmt(stats.gold_in_thoughts_sas_pct, 1),
                    fmt(stats.gold_in_thoughts_mas_pct, 1),
                    fmt(stats.gold_in_thoughts_both_pct, 1),
                    std::to_string(stats.extraction_failures_sas),
                    std::to_string(stats.extraction_failures_mas)});
  }
  rows.push_back({"Total", std::to_string(report.total)});
  return render_aligned(rows);
}

void write_bucket_report(const eval::BucketReport& report, const std::string& csv_path,
                         const std::string& text_path) {
  {
    std::ofstream csv(csv_path, std::ios::binary);
    csv << "bucket,n,avg_tokens_sas,avg_tokens_mas,avg_spans_sas,avg_spans_mas,"
           "gold_in_thoughts_sas_pct,gold_in_thoughts_mas_pct,gold_in_thoughts_both_pct,"
           "extraction_failures_sas,extraction_failures_mas\n";
    for (const auto& [bucket, stats] : report.buckets)
      csv << to_string(bucket) << ',' << stats.count << ',' << fmt(stats.avg_tokens_sas, 1)
          << ',' << fmt(stats.avg_tokens_mas, 1) << ',' << fmt(stats.avg_spans_sas, 1) << ','
          << fmt(stats.avg_spans_mas, 1) << ',' << fmt(stats.gold_in_thoughts_sas_pct, 1) << ','
          << fmt(stats.gold_in_thoughts_mas_pct, 1) << ','
          << fmt(stats.gold_in_thoughts_both_pct, 1) << ',' << stats.extraction_failures_sas
          << ',' << stats.extraction_failures_mas << '\n';
  }
  std::ofstream text(text_path, std::ios::binary);
  text << render_bucket_table(report);
}

}  // namespace parity::cli
