#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "parity/core/types.hpp"
#include "parity/eval/judge.hpp"

namespace parity::eval {

// Normalized containment: both sides are lowercased, stripped of ASCII
// punctuation and whitespace-collapsed before the substring check.
bool gold_in_text(std::string_view gold, std::string_view text);

// Heuristic proxy for entities traversed in a reasoning chain: distinct
// maximal spans of consecutive capitalized tokens, excluding sentence-initial
// single capitalized stopwords, deduplicated case-insensitively.
std::int64_t count_entity_spans(std::string_view text);

// What the diagnostics need from one (question, trace, judgment) triple.
struct DiagnosticRecord {
  std::string question_id;
  std::string gold;
  bool correct = false;
  std::string think_text;  // all calls' think texts, concatenated
  Tokens think_tokens = 0;
};

DiagnosticRecord make_diagnostic(const Question& question, const Trace& trace,
                                 const JudgedRecord& judged);

enum class Bucket { mr_sw, sr_mw, br, bw };

std::string to_string(Bucket bucket);

struct BucketStats {
  std::int64_t count = 0;
  double avg_tokens_sas = 0.0;
  double avg_tokens_mas = 0.0;
  double avg_spans_sas = 0.0;
  double avg_spans_mas = 0.0;
  double gold_in_thoughts_sas_pct = 0.0;
  double gold_in_thoughts_mas_pct = 0.0;
  double gold_in_thoughts_both_pct = 0.0;
  std::int64_t extraction_failures_sas = 0;
  std::int64_t extraction_failures_mas = 0;
};

struct BucketReport {
  std::map<Bucket, BucketStats> buckets;
  std::int64_t total = 0;
};

// Joins the two runs on question id and partitions every question into
// exactly one of the four buckets. Throws std::invalid_argument listing the
// symmetric difference when the id sets disagree.
BucketReport assign_buckets(const std::vector<DiagnosticRecord>& sas,
                            const std::vector<DiagnosticRecord>& mas);

}  // namespace parity::eval
