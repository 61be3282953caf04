#include "parity/eval/analysis.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "parity/core/text.hpp"

namespace parity::eval {

namespace {

bool ascii_punct(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u < 0x80 && !std::isalnum(u) && !std::isspace(u);
}

std::string normalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (ascii_punct(c)) continue;
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out += ' ';
      pending_space = false;
    }
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

const std::set<std::string>& stopwords() {
  static const std::set<std::string> words = {
      "the", "a",    "an",   "and",  "or",    "but",   "if",    "then", "when",  "what",
      "which", "who", "whom", "whose", "where", "why",   "how",   "is",   "are",   "was",
      "were", "be",  "in",   "on",   "at",    "of",    "to",    "for",  "with",  "by",
      "from", "as",  "it",   "its",  "he",    "she",   "they",  "we",   "you",   "i",
      "this", "that", "these", "those", "there", "here", "not",  "no",   "do",    "does",
      "did",  "so",  "such", "their", "his",   "her",   "our",   "my",   "your"};
  return words;
}

bool capitalized(const std::string& token) {
  for (char c : token) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalpha(u)) return std::isupper(u) != 0;
  }
  return false;
}

bool sentence_terminal(const std::string& token) {
  for (auto it = token.rbegin(); it != token.rend(); ++it) {
    const char c = *it;
    if (c == '"' || c == '\'' || c == ')' || c == ']') continue;
    return c == '.' || c == '!' || c == '?';
  }
  return false;
}

std::string dedup_key(const std::string& token) {
  size_t begin = 0, end = token.size();
  while (begin < end && ascii_punct(token[begin])) ++begin;
  while (end > begin && ascii_punct(token[end - 1])) --end;
  std::string out = token.substr(begin, end - begin);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

bool gold_in_text(std::string_view gold, std::string_view text) {
  return normalize(text).find(normalize(gold)) != std::string::npos;
}

std::int64_t count_entity_spans(std::string_view text) {
  const std::vector<std::string> tokens = split_words(text);
  std::set<std::string> spans;
  size_t i = 0;
  while (i < tokens.size()) {
    if (!capitalized(tokens[i])) {
      ++i;
      continue;
    }
    const size_t start = i;
    std::string key;
    while (i < tokens.size() && capitalized(tokens[i])) {
      if (!key.empty()) key += ' ';
      key += dedup_key(tokens[i]);
      ++i;
    }
    const size_t length = i - start;
    const bool sentence_initial = start == 0 || sentence_terminal(tokens[start - 1]);
    if (length == 1 && sentence_initial && stopwords().count(dedup_key(tokens[start]))) continue;
    if (!key.empty()) spans.insert(key);
  }
  return static_cast<std::int64_t>(spans.size());
}

DiagnosticRecord make_diagnostic(const Question& question, const Trace& trace,
                                 const JudgedRecord& judged) {
  DiagnosticRecord record;
  record.question_id = question.id;
  record.gold = question.gold;
  record.correct = judged.correct;
  record.think_text = concatenated_think_text(trace);
  record.think_tokens = trace.total_assumed;
  return record;
}

std::string to_string(Bucket bucket) {
  switch (bucket) {
    case Bucket::mr_sw: return "MR/SW";
    case Bucket::sr_mw: return "SR/MW";
    case Bucket::br: return "BR";
    case Bucket::bw: return "BW";
  }
  throw std::logic_error("unknown bucket");
}

BucketReport assign_buckets(const std::vector<DiagnosticRecord>& sas,
                            const std::vector<DiagnosticRecord>& mas) {
  std::unordered_map<std::string, const DiagnosticRecord*> mas_by_id;
  for (const DiagnosticRecord& record : mas) mas_by_id.emplace(record.question_id, &record);

  std::set<std::string> only_sas, only_mas;
  for (const DiagnosticRecord& record : sas)
    if (!mas_by_id.count(record.question_id)) only_sas.insert(record.question_id);
  {
    std::set<std::string> sas_ids;
    for (const DiagnosticRecord& record : sas) sas_ids.insert(record.question_id);
    for (const DiagnosticRecord& record : mas)
      if (!sas_ids.count(record.question_id)) only_mas.insert(record.question_id);
    if (sas_ids.size() != sas.size())
      throw std::invalid_argument("duplicate question ids in the SAS run");
  }
  if (!only_sas.empty() || !only_mas.empty()) {
    std::string detail = "question id mismatch;";
    for (const std::string& id : only_sas) detail += " sas-only:" + id;
    for (const std::string& id : only_mas) detail += " mas-only:" + id;
    throw std::invalid_argument(detail);
  }

  struct Accumulator {
    std::int64_t count = 0;
    std::int64_t tokens_sas = 0, tokens_mas = 0;
    std::int64_t spans_sas = 0, spans_mas = 0;
    std::int64_t gold_sas = 0, gold_mas = 0, gold_both = 0;
    std::int64_t extraction_sas = 0, extraction_mas = 0;
  };
  std::map<Bucket, Accumulator> accumulators;

  for (const DiagnosticRecord& s : sas) {
    const DiagnosticRecord& m = *mas_by_id.at(s.question_id);
    Bucket bucket;
    if (m.correct && !s.correct)
      bucket = Bucket::mr_sw;
    else if (s.correct && !m.correct)
      bucket = Bucket::sr_mw;
    else if (s.correct && m.correct)
      bucket = Bucket::br;
    else
      bucket = Bucket::bw;

    Accumulator& acc = accumulators[bucket];
    ++acc.count;
    acc.tokens_sas += s.think_tokens;
    acc.tokens_mas += m.think_tokens;
    acc.spans_sas += count_entity_spans(s.think_text);
    acc.spans_mas += count_entity_spans(m.think_text);
    const bool gold_s = gold_in_text(s.gold, s.think_text);
    const bool gold_m = gold_in_text(m.gold, m.think_text);
    acc.gold_sas += gold_s ? 1 : 0;
    acc.gold_mas += gold_m ? 1 : 0;
    acc.gold_both += gold_s && gold_m ? 1 : 0;
    acc.extraction_sas += gold_s && !s.correct ? 1 : 0;
    acc.extraction_mas += gold_m && !m.correct ? 1 : 0;
  }

  BucketReport report;
  report.total = static_cast<std::int64_t>(sas.size());
  for (Bucket bucket : {Bucket::mr_sw, Bucket::sr_mw, Bucket::br, Bucket::bw}) {
    const Accumulator& acc = accumulators[bucket];
    BucketStats stats;
    stats.count = acc.count;
    if (acc.count > 0) {
      const auto n = static_cast<double>(acc.count);
      stats.avg_tokens_sas = static_cast<double>(acc.tokens_sas) / n;
      stats.avg_tokens_mas = static_cast<double>(acc.tokens_mas) / n;
      stats.avg_spans_sas = static_cast<double>(acc.spans_sas) / n;
      stats.avg_spans_mas = static_cast<double>(acc.spans_mas) / n;
      stats.gold_in_thoughts_sas_pct = 100.0 * static_cast<double>(acc.gold_sas) / n;
      stats.gold_in_thoughts_mas_pct = 100.0 * static_cast<double>(acc.gold_mas) / n;
      stats.gold_in_thoughts_both_pct = 100.0 * static_cast<double>(acc.gold_both) / n;
    }
    stats.extraction_failures_sas = acc.extraction_sas;
    stats.extraction_failures_mas = acc.extraction_mas;
    report.buckets[bucket] = stats;
  }
  return report;
}

}  // namespace parity::eval
