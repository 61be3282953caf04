#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "parity/cli/experiment.hpp"
#include "parity/eval/analysis.hpp"

namespace parity::cli {

struct SummarizeOptions {
  int bootstrap_iterations = 10000;
  double bootstrap_level = 0.95;
  std::uint64_t seed = 0;
};

struct SummaryPaths {
  std::string csv;
  std::string text;
  std::string versions_csv;  // written only when several models are present
};

// Aggregates run records into accuracy / CI / average-token tables, one row
// group per (dataset, model, system), one column per budget. Emits CSV and an
// aligned text table; deterministic for identical inputs.
SummaryPaths summarize(const std::vector<std::string>& run_dirs, const std::string& out_dir,
                       const SummarizeOptions& options = {});

std::vector<RunRecord> filter_records(const std::vector<RunRecord>& records,
                                      Architecture architecture, Tokens budget);

// Joined SAS-vs-MAS diagnostics over records that share question ids.
eval::BucketReport diagnose_records(const std::vector<RunRecord>& sas_records,
                                    const std::vector<RunRecord>& mas_records);

void write_bucket_report(const eval::BucketReport& report, const std::string& csv_path,
                         const std::string& text_path);

std::string render_bucket_table(const eval::BucketReport& report);

}  // namespace parity::cli
